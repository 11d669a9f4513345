#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "gsp4/arith.hpp"
#include "gsp4/errors.hpp"
#include "gsp4/mat.hpp"
#include "gsp4/roots.hpp"

// The C2 Weyl group as signed permutations of the torus exponents (x, y),
// dihedral of order 8.  s1 swaps x,y; s2 negates y.  Products are read
// right-to-left: "s1s2" applies s2 first.

namespace gsp4::weyl {

struct WeylElt {
  // 2x2 signed permutation matrix, row-major, acting on column (x, y).
  std::array<int, 4> m = {1, 0, 0, 1};
  bool operator==(const WeylElt&) const = default;
  std::pair<long, long> apply(long x, long y) const {
    return {m[0] * x + m[1] * y, m[2] * x + m[3] * y};
  }
  Root apply(const Root& r) const {
    auto [x, y] = apply(r.m1, r.m2);
    return Root{static_cast<int>(x), static_cast<int>(y)};
  }
  WeylElt operator*(const WeylElt& o) const {  // composition: this after o
    return WeylElt{{m[0] * o.m[0] + m[1] * o.m[2], m[0] * o.m[1] + m[1] * o.m[3],
                    m[2] * o.m[0] + m[3] * o.m[2], m[2] * o.m[1] + m[3] * o.m[3]}};
  }
  WeylElt inverse() const { return WeylElt{{m[0], m[2], m[1], m[3]}}; }
};

struct WeylInfo {
  WeylElt w;
  std::string name;       // id, -id, s1, s2, s1s2, s2s1, -s1, -s2
  int length;             // reduced word length
  std::vector<int> word;  // lexicographically least reduced word, letters 1|2
};

// All 8 elements in the fixed print order
// [id, -id, s2, -s2, s1, -s1, s1s2, s2s1].
const std::vector<WeylInfo>& weyl_group();
const WeylInfo& info(const WeylElt& w);
const WeylElt& by_name(const std::string& name);  // throws InvalidWQ
inline int length(const WeylElt& w) { return info(w).length; }
inline const std::string& name(const WeylElt& w) { return info(w).name; }

bool bruhat_leq(const WeylElt& a, const WeylElt& b);

// Weyl group of the Levi of Q (subgroup generated by its simple reflections).
const std::vector<WeylElt>& levi_weyl(Parabolic q);

// Double cosets W_Q \ W / W_Sigma; representative = first member in the print
// order (this reproduces the published table row labels), members sorted the
// same way.
struct DoubleCoset {
  WeylElt rep;
  std::vector<WeylElt> members;
};
std::vector<DoubleCoset> double_cosets(Parabolic q, Parabolic sigma);

// (q'_{Sigma,w}, q_{Sigma,w}): q' = |R_Q cap w(R_Sigma)|,
// q = |R_Sigma| - |R_Q^- cap w(R_Sigma)|.  For Q = Borel both agree (= n_w).
std::pair<int, int> degree_stats(Parabolic q, Parabolic sigma,
                                 const WeylElt& w);

// Matrix lifts.  Generator lifts are order two inside the similitude group:
// s1 -> permutation (e1 e2)(e3 e4), multiplier 1;
// s2 -> e1 -> -e1, e2 <-> e4, multiplier -1.
// lift(w) multiplies generator lifts along the stored reduced word.
QM4 gen_lift(int letter);
QM4 lift(const WeylElt& w);

// Membership tests used by the decomposition certificates.
bool is_in_iwahori(const QM4& g, long p);  // g integral, mod p upper Borel
bool is_upper_borel(const QM4& g);         // Borel pattern over the field

// u * lift(w) = iwahori * lift(wprime) * borel, with wprime <= w in Bruhat
// order.  u is given by its U_B^+ coordinates.  All factors exact; the
// identity is re-verified before returning.
struct BruhatResult {
  WeylElt wprime;
  QM4 iwahori, borel;
};
BruhatResult bruhat_decompose(const std::array<Q, 4>& ucoords, const WeylElt& w,
                              long p);

// Factor u in U_B^+ as d * e where d is supported on the inversion roots
// {gamma > 0 : w^{-1}(gamma) < 0} of w and e on the complementary positives.
// Both supports are closed under root addition, so the factorization exists
// and is unique; the product d * e == u is re-verified exactly.  The class of
// u * lift(w) drops below w exactly when d has a non-integral coordinate.
std::pair<std::array<Q, 4>, std::array<Q, 4>> split_by_inversions(
    const std::array<Q, 4>& ucoords, const WeylElt& w);

inline constexpr int DEPTH_INF = 1 << 20;

// Depth/type transition under translation by the cone element t: either the
// conjugated unipotent part stays integral (same Weyl type, depth + 1, capped
// to infinity at r) or the type shortens via the Bruhat decomposition.
// Requires k_alpha(t) >= 1 on the nilradical roots of Q.
struct TransitionResult {
  bool same_type;
  WeylElt w;
  int depth;
};
TransitionResult weyl_type_transition(const WeylElt& w, int depth, Parabolic q,
                                      const TorusPowers& t,
                                      const std::array<Q, 4>& uplus, long p,
                                      int r);

}  // namespace gsp4::weyl
