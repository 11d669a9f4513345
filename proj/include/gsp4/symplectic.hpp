#pragma once

#include <array>
#include <optional>

#include "gsp4/arith.hpp"
#include "gsp4/errors.hpp"
#include "gsp4/mat.hpp"
#include "gsp4/roots.hpp"

// GSp4 realized on the form <e1,e3> = <e2,e4> = 1, i.e. J = [[0,I2],[-I2,0]].
// Torus: tau(t1,t2;x) = diag(t1, t2, x/t1, x/t2), similitude multiplier x.

namespace gsp4::core {

QM4 form_matrix();  // J

// Similitude multiplier of g; throws NonSimilitude if tg*J*g is not a scalar
// multiple of J, NonInvertibleMultiplier if the scalar is 0.
Q similitude_multiplier(const QM4& g);
// Residue variant mod m = p^N: multiplier must be a unit mod p.
long long similitude_multiplier_mod(const ZM4& g, long long m, long p);

QM4 torus(const Q& t1, const Q& t2, const Q& x);

// One-parameter root subgroup attached to a signed root; r must be one of the
// four positive roots, possibly negated.
QM4 u_root(const Root& r, const Q& x);
ZM4 u_root_mod(const Root& r, long long x, long long m);

// Siegel Levi mu(A;x) = blockdiag(A, x * tA^{-1}); A given row-major.
QM4 mu_siegel(const std::array<Q, 4>& A, const Q& x);
// Klingen Levi mu*(a, g): a at (1,1), g in rows/cols {2,4}, b = det(g)/a at
// (3,3).
QM4 mu_klingen(const Q& a, const std::array<Q, 4>& g);

// Parahoric membership for g over Z/p^N.  Checks the mod-p^r block pattern of
// the parabolic (variant "full"), or additionally the derived-Levi congruence
// (variant "derived": Borel diag = 1, Siegel det A = 1, Klingen a = 1 and
// det g-block = 1).  Throws LevelExceedsPrecision if r > N.
bool parahoric_membership(const ZM4& g, Parabolic Q, long p, int N, int r,
                          bool derived);

// Coordinates on the full upper unipotent U_B^+, product order
// u_{a1}(x1) u_{a2}(x2) u_{a1+a2}(x3) u_{2a1+a2}(x4).
// Matrix entries (1-indexed): (1,2)=x1 (2,4)=x2 (2,3)=x3 (1,4)=x1x2+x3
// (1,3)=x1x3+x4 (4,3)=-x1.
std::array<Q, 4> upper_coords(const QM4& u);
QM4 upper_from_coords(const std::array<Q, 4>& c);
std::array<long long, 4> upper_coords_mod(const ZM4& u, long long m);
ZM4 upper_from_coords_mod(const std::array<long long, 4>& c, long long m);

// Coordinates on U_B^-, product order
// u_{-a1}(y1) u_{-(a1+a2)}(y3) u_{-(2a1+a2)}(y4) u_{-a2}(y2); returned in root
// order (y1, y2, y3, y4) matching positive_roots().
// Entries: (2,1)=y1 (4,1)=y3 (3,1)=y4-y1y3 (4,2)=y2 (3,2)=y3-y1y2 (3,4)=-y1.
std::array<Q, 4> lower_coords(const QM4& u);
QM4 lower_from_coords(const std::array<Q, 4>& c);
std::array<long long, 4> lower_coords_mod(const ZM4& u, long long m);
ZM4 lower_from_coords_mod(const std::array<long long, 4>& c, long long m);

// Iwahori-type factorization g = uminus * levi * uplus relative to Q, with
// uminus in the lower nilradical of Q, levi block-diagonal of Q type, uplus in
// the upper nilradical.  Throws NotInParahoric when g does not factor (pattern
// obstructions), SingularBlock when a required pivot is not invertible.
struct IwahoriFactorsQ {
  QM4 uminus, levi, uplus;
};
IwahoriFactorsQ iwahori_factorize(const QM4& g, Parabolic Q);

struct IwahoriFactorsZ {
  ZM4 uminus, levi, uplus;
};
IwahoriFactorsZ iwahori_factorize_mod(const ZM4& g, Parabolic Q, long long m,
                                      long p);

}  // namespace gsp4::core
