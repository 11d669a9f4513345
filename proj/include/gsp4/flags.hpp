#pragma once

#include <array>
#include <string>
#include <unordered_map>
#include <vector>

#include "gsp4/mat.hpp"
#include "gsp4/roots.hpp"

namespace gsp4::flags {

// Point of the depth-s flag set attached to a parahoric type Q over Z/p^r,
// stored in canonical factored form: coordinates of the opposite nilradical
// (indexed by the positive-root order, valuation >= s, zero at Levi-root
// positions) and a block-diagonal part in the derived Levi M'(Z/p^r)
// (Borel: tau(t1,t2;1); Siegel: mu(A;1), A in GL2; Klingen: mu*(a,g),
// det g = 1).  Right cosets by the upper nilradical are already cut off.
struct FlagPoint {
  std::array<long long, 4> lower{};
  ZM4 levi = ZM4::ident();
  bool operator==(const FlagPoint&) const = default;
  std::string key() const;
};

struct FlagSet {
  Parabolic q = Parabolic::Borel;
  long p = 3;
  int r = 1, s = 1;
  long long mod = 3;                          // p^r
  std::vector<FlagPoint> points;              // canonical enumeration order
  std::unordered_map<std::string, int> index;  // key -> position in points
  int marked = 0;                             // index of ({0}, identity)

  int locate(const FlagPoint& y) const;  // throws Error when y is not listed
};

// Closed-form count p^{(r-s)*|nilradical|} * |M'(Z/p^r)|.
long long flag_count(Parabolic q, long p, int r, int s);

// Exhaustive enumeration, re-checked against the closed form.  Throws
// ScaleRefused outside p in {3,5}, r <= 2, count <= 2*10^6; LevelMismatch
// unless 1 <= s <= r.
FlagSet enumerate_flags(Parabolic q, long p, int r, int s);

// Distinguished contracting element for each type: Siegel mu(1;p) =
// tau(1,1;p), Klingen mu*(1,p*1) = tau(1,p;p^2), Borel their product
// tau(1,p;p^3).  k-valuations (0,1,1,1), (1,0,1,2), (1,1,2,3).
TorusPowers cone_generator(Parabolic q);

// d must be integral, contract every nilradical direction (k >= 0) and
// centralize the Levi pattern (k = 0 at Levi roots); throws
// NonIntegralConjugate otherwise.
void check_cone(Parabolic q, const TorusPowers& d);

// d * y * d^{-1}: scales lower coordinate i by p^{k_i(d)}, Levi part fixed.
FlagPoint act_torus(const TorusPowers& d, const FlagPoint& y,
                    const FlagSet& ctx);

// Left translation u * y for integral u (mod p^r) normalizing the pattern
// (upper-unipotent or parahoric); refactorized into canonical form.
FlagPoint translate(const ZM4& u, const FlagPoint& y, const FlagSet& ctx);

// Full semigroup action (d * u) * y.
FlagPoint act(const TorusPowers& d, const ZM4& u, const FlagPoint& y,
              const FlagSet& ctx);

// Exhaustive contraction check: r-s applications of cone_generator(q) send
// every depth-s point into the marked fiber (all lower coordinates 0 mod p^r).
struct ContractionReport {
  Parabolic q;
  long p;
  int r, s;
  long long points = 0;       // enumerated size
  long long closed_form = 0;  // flag_count
  std::array<long, 4> k{};    // k_i of the contracting element
  long long in_fiber = 0;     // points landing in the marked fiber
  bool pass = false;
  std::string json() const;
};
ContractionReport contraction_report(Parabolic q, long p, int r, int s);

// Brute-force count of 2-dimensional totally isotropic subspaces of F_p^4
// under the fixed symplectic form; equals (p+1)(p^2+1).  Oracle for the
// spherical Siegel degree.
long long lagrangian_count(long p);

}  // namespace gsp4::flags
