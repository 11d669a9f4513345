#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "gsp4/arith.hpp"
#include "gsp4/errors.hpp"
#include "gsp4/roots.hpp"
#include "gsp4/weyl.hpp"

// Weight calculus on the (a1, a2) character plane of the symplectic torus:
// dominance/separability flags, dot actions, Kostant weight cohomology of
// nilradicals, unit-group central characters, the boundary graded-summand
// tables, cusp fiber counts, the Hida-Iwasawa rank, and the Eisenstein
// contribution filter.  Everything is exact integer/rational arithmetic.

namespace gsp4::weights {

// Weight per real embedding (a_sigma, b_sigma) with shared central integer c.
// Parity a + b == c (mod 2) is required at each embedding.
struct HighestWeight {
  std::vector<std::array<long, 2>> ab;
  long c = 0;
  int degree() const { return static_cast<int>(ab.size()); }
  void validate() const;  // throws ParityViolation
};

struct DominanceFlags {
  bool dominant = false;              // a >= b >= 0 at each embedding
  bool regular = false;               // c >= a and a > b > 0 at each embedding
  bool separable = false;             // cross-embedding: a_s != b_t and
                                      // a_s + b_s != a_t - b_t
  bool sufficientlySeparable = false; // same with margins > 3
  bool vAdmissible = false;           // the four Hodge-Tate exponents agree
                                      // across embeddings
};
DominanceFlags dominance_tests(const HighestWeight& lam);

// w(lam + rho) - rho on the (a1, a2) plane.  scope Full selects the ambient
// group (rho = (2,1), any w); a parabolic selects its Levi (rho = half-sum of
// the Levi roots, w must lie in the Levi Weyl subgroup, else InvalidWQ).
std::array<long, 2> dot_action(const weyl::WeylElt& w,
                               const std::array<long, 2>& lam, Parabolic scope);

struct KostantEntry {
  weyl::WeylElt v;
  std::array<long, 2> weight;  // dot action of v on lambda
  int degree;                  // cohomological degree
};
struct KostantDatum {
  Parabolic sigma = Parabolic::Full;  // stratum type (stratum mode only)
  weyl::WeylElt w;                    // minimal-length class representative
  int q_lo = 0, q_hi = 0;             // degrees carrying weights (inclusive)
  bool large_p_exact = true;  // integral statement is exact only for p larger
                              // than the semisimple weight; true marks the
                              // characteristic-zero / large-p reading
  std::vector<KostantEntry> entries;  // sorted by degree, then print order
};

// Nilradical mode: U = U_{qprime} inside the ambient group; the Kostant set is
// W_U = {v : R+ cap v(R-) subset R_U}, entry degrees are lengths, weights are
// v-dot lambda with rho = (2,1).  Requires a >= b >= 0 (NonDominant).
KostantDatum kostant_weights(Parabolic qprime, const std::array<long, 2>& lam);

// Stratum mode: U = M_Q cap U_{w(R_Sigma)}.  The class of w in
// W_Q \ W / W_Sigma is canonicalized to its minimal-length element (published
// table labels may be longer members of the same class); the Kostant set is
// {w_Q in W_Q : Delta_Q^+ cap w_Q(Delta_Q^-) subset w(R_Sigma) cap Delta_Q},
// entry degrees are q'_{Sigma,w} + length(w_Q), weights are the Levi(Q) dot
// action.  The degree window [q_lo, q_hi] always matches degree_stats.
// Requires lambda dominant for the Levi of Q (NonDominant).
KostantDatum kostant_weights(Parabolic sigma, const weyl::WeylElt& w,
                             Parabolic q, const std::array<long, 2>& lam);

// dim of the irreducible (a, b) module by the closed form
// (a-b+1)(b+1)(a+2)(a+b+3)/6; NonDominant unless a >= b >= 0.
long long weyl_dimension(long a, long b);

// Independent oracle: full weight multiplicity table by the Freudenthal
// recursion, and the dimension as its total mass.
std::map<std::array<long, 2>, long long> weight_multiplicities(long a, long b);
long long freudenthal_dimension(long a, long b);

// Independent oracle: Lie-algebra cohomology of the nilradical of u on the
// irreducible (a, b) module, computed from the exterior-algebra complex with
// exact rational ranks.  Result[k] is the sorted list of torus weights on
// H^k, with multiplicity.  The module is realized inside a tensor power of
// the standard representation; ScaleRefused beyond dimension 4096.
std::vector<std::vector<std::array<long, 2>>> ce_cohomology_weights(
    Parabolic u, long a, long b);

// Weight multiset of the irreducible Levi(q) module with highest weight mu:
// {mu} for the torus Levi of B, the full alpha-string down from mu for a
// maximal Levi (multiplicity one throughout).  NonDominant unless mu is
// Levi(q)-dominant.
std::vector<std::array<long, 2>> levi_weight_string(
    Parabolic q, const std::array<long, 2>& mu);

// Character-level Euler identity: the product of (1 - e^{-beta}) over the
// nilradical roots times ch V_(a,b) equals the signed sum over the Kostant
// set of the Levi characters of the v-dot highest weights.  Exact check
// using the Freudenthal table; true iff the formal sums agree.
bool kostant_euler_identity(Parabolic u, long a, long b);

// Unit-group character of the stratum (Sigma, w) piece picked by w_Q:
// omega = w^{-1}(w_Q-dot(lamchi)) + sum of R_Sigma cap w^{-1}(R_Q), recorded
// on the (a1, a2) plane.  The literal reading of the root-sum range is used.
// InvalidWQ unless w_Q lies in the Kostant set of (Sigma, w, Q) taken at the
// literal w.
std::array<long, 2> central_character(Parabolic sigma, const weyl::WeylElt& w,
                                      const weyl::WeylElt& wq, Parabolic q,
                                      const std::array<long, 2>& lamchi);

// Exponent of the character on the one-parameter center of the stratum Levi:
// a1 + a2 for the Siegel stratum, a1 for the Klingen stratum.  For degree one
// the norm-multiple test is exactly "this exponent vanishes".  InvalidWQ for
// non-maximal strata.
long central_restriction(Parabolic sigma, const std::array<long, 2>& omega);

enum class LevelType { Gamma0, Gamma1 };

struct BoundarySummand {
  Parabolic stratum;                  // Sigma
  std::string weylClass;              // table label of the class of w
  int leviDegree = 0;                 // cohomological degree on the stratum
  std::array<long, 2> highestWeight;  // coefficient highest weight
  std::string inductionIndex;         // index subgroup of the induction:
                                      // "1" (no induction), "E", "T1(S,w)*E"
  bool torsion = false;
};

// Graded summands of the degree-q ordinary boundary cohomology, base field of
// degree one.  Q = Borel: empty at q in {0, 5}; at q in {1, 4} the Borel
// strata with n_w = q plus the two maximal-stratum degree-1 pieces selected
// by w_1 = -id / w_4 = id; at q in {2, 3} exactly the two cuspidal degree-1
// pieces from the selector table.  Q maximal: only q = 3 is computed (three
// pieces, the degree-0 one marked torsion); other degrees UnsupportedDegree.
std::vector<BoundarySummand> boundary_summands(
    Parabolic q, int degree, LevelType level,
    const std::array<long, 2>& lamchi);

std::string summands_json(const std::vector<BoundarySummand>& v);

// Middle-degree (3d) boundary shape over a base field of degree d: the two
// maximal-stratum pieces, each H^d of the stratum with coefficient index 2d
// and a fixed per-place class (s1 on the Klingen stratum, s2 on the Siegel
// stratum).  Only the unit-rank-zero skeleton is representable here, and the
// comparison underlying it is an isogeny, not an isomorphism; both
// restrictions are recorded on the result.
struct GeneralBoundarySkeleton {
  Parabolic stratum;
  std::string weylClass;      // same class at every place
  int leviDegree = 0;         // = d
  int lIndex = 0;             // coefficient index = 2d
  int unitExteriorPower = 0;  // only the l = 0 layer is emitted
  bool isogenyOnly = true;
};
std::vector<GeneralBoundarySkeleton> general_boundary_skeletons(int d);

// Number of cusps above one rational cusp of type (Sigma, w): 1 at Gamma0
// level; at Gamma1 level the order of C_Q(Z/p^r) divided by the subgroup
// generated by the w-conjugate of the norm-one stratum torus and the supplied
// unit image (generators given as torus pairs mod p^r).  p odd.
long long cusp_fiber(Parabolic sigma, const weyl::WeylElt& w, Parabolic q,
                     long p, int r, LevelType level,
                     const std::vector<std::array<long long, 2>>& unitImage);

// Hida-Iwasawa rank 1 + delta + sum r_v d_v with r_v = 2 for a Borel place
// and 1 for a maximal place.  InconsistentDegrees unless the d_v sum to d.
struct PlaceDatum {
  int d_v = 1;
  Parabolic q_v = Parabolic::Borel;
};
long long hida_rank(int d, int delta, const std::vector<PlaceDatum>& places);

// Eisenstein contribution filter for a regular weight, per stratum type.
// For a maximal stratum each embedding component is restricted to a fixed
// two-element set and the contribution degree is total length + d; for the
// Borel stratum the only contribution is -id at every embedding, degree 4d.
// projection records the weight's restriction to the stratum's split center
// in the (lambda1, lambda2) basis.  NonRegular unless x > y > 0 everywhere.
struct FrankeContribution {
  std::vector<weyl::WeylElt> components;  // one per embedding
  int length = 0;
  int degree = 0;
};
struct FrankeFilter {
  Parabolic sigma = Parabolic::Borel;
  std::pair<Q, Q> projection;
  std::vector<FrankeContribution> admissible;  // degree <= bound, sorted
};
FrankeFilter franke_contribution_filter(
    Parabolic sigma, const std::vector<std::array<long, 2>>& xy,
    int degree_bound);

// Normalization shift (a, b) = (a1 - 3, a2 - 3).  Provided as an explicit
// helper only; no operation applies it implicitly.
inline std::array<long, 2> chi_prime(const std::array<long, 2>& a) {
  return {a[0] - 3, a[1] - 3};
}

}  // namespace gsp4::weights
