#include "gsp4/symplectic.hpp"

#include <cassert>
#include <numeric>

namespace gsp4::core {

QM4 form_matrix() {
  QM4 J = QM4::zero();
  J.at(0, 2) = 1;
  J.at(1, 3) = 1;
  J.at(2, 0) = -1;
  J.at(3, 1) = -1;
  return J;
}

Q similitude_multiplier(const QM4& g) {
  const QM4 J = form_matrix();
  const QM4 S = g.transpose() * J * g;
  const Q nu = S.at(0, 2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (S.at(i, j) != nu * J.at(i, j)) throw NonSimilitude();
  if (nu == 0) throw NonInvertibleMultiplier();
  return nu;
}

long long similitude_multiplier_mod(const ZM4& g, long long m, long p) {
  ZM4 J = ZM4::ident();
  for (int i = 0; i < 4; ++i) J.at(i, i) = 0;
  J.at(0, 2) = 1;
  J.at(1, 3) = 1;
  J.at(2, 0) = mod_reduce(-1, m);
  J.at(3, 1) = mod_reduce(-1, m);
  ZM4 gt;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) gt.at(i, j) = g.at(j, i);
  const ZM4 S = zm4_mul(zm4_mul(gt, J, m), g, m);
  const long long nu = S.at(0, 2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (S.at(i, j) != mul_mod(nu, J.at(i, j), m)) throw NonSimilitude();
  if (std::gcd(nu, (long long)p) != 1) throw NonInvertibleMultiplier();
  return nu;
}

namespace {

// Two-argument mpq construction leaves values non-canonical; normalize every
// rational that crosses the API boundary so equality and valuation tests see
// canonical forms.
Q canon(const Q& x) {
  Q y(x);
  y.canonicalize();
  return y;
}

std::array<Q, 4> canon4(const std::array<Q, 4>& c) {
  return {canon(c[0]), canon(c[1]), canon(c[2]), canon(c[3])};
}

}  // namespace

QM4 torus(const Q& t1q, const Q& t2q, const Q& xq) {
  const Q t1 = canon(t1q), t2 = canon(t2q), x = canon(xq);
  if (t1 == 0 || t2 == 0 || x == 0) throw NonInvertibleMultiplier();
  return QM4::diag(t1, t2, x / t1, x / t2);
}

QM4 u_root(const Root& r, const Q& xq) {
  const Q x = canon(xq);
  const bool neg = !r.positive();
  const int idx = pos_root_index(neg ? -r : r);
  QM4 u = QM4::ident();
  switch (idx) {
    case R_A1:
      if (!neg) {
        u.at(0, 1) = x;
        u.at(3, 2) = -x;
      } else {
        u.at(1, 0) = x;
        u.at(2, 3) = -x;
      }
      break;
    case R_A2:
      if (!neg)
        u.at(1, 3) = x;
      else
        u.at(3, 1) = x;
      break;
    case R_A12:
      if (!neg) {
        u.at(0, 3) = x;
        u.at(1, 2) = x;
      } else {
        u.at(3, 0) = x;
        u.at(2, 1) = x;
      }
      break;
    case R_A112:
      if (!neg)
        u.at(0, 2) = x;
      else
        u.at(2, 0) = x;
      break;
    default:
      assert(false);
  }
  return u;
}

ZM4 u_root_mod(const Root& r, long long x, long long m) {
  const bool neg = !r.positive();
  const int idx = pos_root_index(neg ? -r : r);
  const long long xm = mod_reduce(x, m);
  const long long nxm = mod_reduce(-x, m);
  ZM4 u = ZM4::ident();
  switch (idx) {
    case R_A1:
      if (!neg) {
        u.at(0, 1) = xm;
        u.at(3, 2) = nxm;
      } else {
        u.at(1, 0) = xm;
        u.at(2, 3) = nxm;
      }
      break;
    case R_A2:
      if (!neg)
        u.at(1, 3) = xm;
      else
        u.at(3, 1) = xm;
      break;
    case R_A12:
      if (!neg) {
        u.at(0, 3) = xm;
        u.at(1, 2) = xm;
      } else {
        u.at(3, 0) = xm;
        u.at(2, 1) = xm;
      }
      break;
    case R_A112:
      if (!neg)
        u.at(0, 2) = xm;
      else
        u.at(2, 0) = xm;
      break;
    default:
      assert(false);
  }
  return u;
}

QM4 mu_siegel(const std::array<Q, 4>& Aq, const Q& xq) {
  const std::array<Q, 4> A = canon4(Aq);
  const Q x = canon(xq);
  const Q det = A[0] * A[3] - A[1] * A[2];
  if (det == 0) throw SingularBlock();
  if (x == 0) throw NonInvertibleMultiplier();
  QM4 g = QM4::zero();
  g.at(0, 0) = A[0];
  g.at(0, 1) = A[1];
  g.at(1, 0) = A[2];
  g.at(1, 1) = A[3];
  // x * transpose-inverse of A
  g.at(2, 2) = x * A[3] / det;
  g.at(2, 3) = -x * A[2] / det;
  g.at(3, 2) = -x * A[1] / det;
  g.at(3, 3) = x * A[0] / det;
  return g;
}

QM4 mu_klingen(const Q& aq, const std::array<Q, 4>& blkq) {
  const Q a = canon(aq);
  const std::array<Q, 4> blk = canon4(blkq);
  const Q det = blk[0] * blk[3] - blk[1] * blk[2];
  if (a == 0 || det == 0) throw SingularBlock();
  QM4 g = QM4::zero();
  g.at(0, 0) = a;
  g.at(1, 1) = blk[0];
  g.at(1, 3) = blk[1];
  g.at(3, 1) = blk[2];
  g.at(3, 3) = blk[3];
  g.at(2, 2) = det / a;
  return g;
}

namespace {

// Below-diagonal positions (0-indexed) forced to vanish mod p^r, per type.
// Each list is complete for similitude matrices (no reliance on the form to
// shrink it).
const std::array<std::pair<int, int>, 6> kBorelZeros = {
    {{1, 0}, {2, 0}, {3, 0}, {3, 1}, {2, 1}, {2, 3}}};
const std::array<std::pair<int, int>, 4> kSiegelZeros = {
    {{2, 0}, {2, 1}, {3, 0}, {3, 1}}};
const std::array<std::pair<int, int>, 5> kKlingenZeros = {
    {{1, 0}, {2, 0}, {3, 0}, {2, 1}, {2, 3}}};

}  // namespace

bool parahoric_membership(const ZM4& g, Parabolic Q, long p, int N, int r,
                          bool derived) {
  if (r > N) throw LevelExceedsPrecision();
  if (r <= 0) return true;
  long long pr = 1;
  for (int i = 0; i < r; ++i) pr *= p;
  const ZM4 h = zm4_reduce(g, pr);
  auto all_zero = [&](auto& positions) {
    for (auto [i, j] : positions)
      if (h.at(i, j) != 0) return false;
    return true;
  };
  bool ok = true;
  switch (Q) {
    case Parabolic::Borel:
      ok = all_zero(kBorelZeros);
      if (ok && derived)
        for (int i = 0; i < 4; ++i) ok = ok && h.at(i, i) == 1;
      break;
    case Parabolic::Siegel: {
      ok = all_zero(kSiegelZeros);
      if (ok && derived) {
        const long long det = mod_reduce(
            mul_mod(h.at(0, 0), h.at(1, 1), pr) - mul_mod(h.at(0, 1), h.at(1, 0), pr),
            pr);
        ok = det == 1;
      }
      break;
    }
    case Parabolic::Klingen: {
      ok = all_zero(kKlingenZeros);
      if (ok && derived) {
        const long long det = mod_reduce(
            mul_mod(h.at(1, 1), h.at(3, 3), pr) - mul_mod(h.at(1, 3), h.at(3, 1), pr),
            pr);
        ok = h.at(0, 0) == 1 && det == 1;
      }
      break;
    }
    case Parabolic::Full:
      break;
  }
  return ok;
}

std::array<Q, 4> upper_coords(const QM4& u) {
  const Q x1 = u.at(0, 1), x2 = u.at(1, 3), x3 = u.at(1, 2);
  const Q x4 = u.at(0, 2) - x1 * x3;
  const std::array<Q, 4> c = {x1, x2, x3, x4};
  if (!(u == upper_from_coords(c))) throw NotInParahoric("not in U_B^+");
  return c;
}

QM4 upper_from_coords(const std::array<Q, 4>& cq) {
  const std::array<Q, 4> c = canon4(cq);
  QM4 u = QM4::ident();
  u.at(0, 1) = c[0];
  u.at(1, 3) = c[1];
  u.at(1, 2) = c[2];
  u.at(0, 3) = c[0] * c[1] + c[2];
  u.at(0, 2) = c[0] * c[2] + c[3];
  u.at(3, 2) = -c[0];
  return u;
}

std::array<long long, 4> upper_coords_mod(const ZM4& u, long long m) {
  const long long x1 = u.at(0, 1), x2 = u.at(1, 3), x3 = u.at(1, 2);
  const long long x4 = mod_reduce(u.at(0, 2) - mul_mod(x1, x3, m), m);
  const std::array<long long, 4> c = {x1, x2, x3, x4};
  if (!(u == upper_from_coords_mod(c, m))) throw NotInParahoric("not in U_B^+");
  return c;
}

ZM4 upper_from_coords_mod(const std::array<long long, 4>& c, long long m) {
  ZM4 u = ZM4::ident();
  u.at(0, 1) = mod_reduce(c[0], m);
  u.at(1, 3) = mod_reduce(c[1], m);
  u.at(1, 2) = mod_reduce(c[2], m);
  u.at(0, 3) = mod_reduce(mul_mod(c[0], c[1], m) + c[2], m);
  u.at(0, 2) = mod_reduce(mul_mod(c[0], c[2], m) + c[3], m);
  u.at(3, 2) = mod_reduce(-c[0], m);
  return u;
}

std::array<Q, 4> lower_coords(const QM4& u) {
  const Q y1 = u.at(1, 0), y3 = u.at(3, 0), y2 = u.at(3, 1);
  const Q y4 = u.at(2, 0) + y1 * y3;
  const std::array<Q, 4> c = {y1, y2, y3, y4};
  if (!(u == lower_from_coords(c))) throw NotInParahoric("not in U_B^-");
  return c;
}

QM4 lower_from_coords(const std::array<Q, 4>& cq) {
  const std::array<Q, 4> c = canon4(cq);
  const Q &y1 = c[0], &y2 = c[1], &y3 = c[2], &y4 = c[3];
  QM4 u = QM4::ident();
  u.at(1, 0) = y1;
  u.at(2, 1) = y3 - y1 * y2;
  u.at(3, 0) = y3;
  u.at(2, 0) = y4 - y1 * y3;
  u.at(3, 1) = y2;
  u.at(2, 3) = -y1;
  return u;
}

std::array<long long, 4> lower_coords_mod(const ZM4& u, long long m) {
  const long long y1 = u.at(1, 0), y3 = u.at(3, 0), y2 = u.at(3, 1);
  const long long y4 = mod_reduce(u.at(2, 0) + mul_mod(y1, y3, m), m);
  const std::array<long long, 4> c = {y1, y2, y3, y4};
  if (!(u == lower_from_coords_mod(c, m))) throw NotInParahoric("not in U_B^-");
  return c;
}

ZM4 lower_from_coords_mod(const std::array<long long, 4>& c, long long m) {
  const long long y1 = c[0], y2 = c[1], y3 = c[2], y4 = c[3];
  ZM4 u = ZM4::ident();
  u.at(1, 0) = mod_reduce(y1, m);
  u.at(2, 1) = mod_reduce(y3 - mul_mod(y1, y2, m), m);
  u.at(3, 0) = mod_reduce(y3, m);
  u.at(2, 0) = mod_reduce(y4 - mul_mod(y1, y3, m), m);
  u.at(3, 1) = mod_reduce(y2, m);
  u.at(2, 3) = mod_reduce(-y1, m);
  return u;
}

namespace {

const Root kA1{1, -1}, kA2{0, 2}, kA12{1, 1}, kA112{2, 0};

// Sequential column clearing for Borel/Klingen over exact rationals.
// Returns lower coordinates in root order; mutates g in place.
std::array<Q, 4> clear_lower_q(QM4& g, Parabolic Q_) {
  std::array<Q, 4> c = {0, 0, 0, 0};
  if (g.at(0, 0) == 0) throw SingularBlock();
  c[R_A1] = g.at(1, 0) / g.at(0, 0);
  g = u_root(-kA1, -c[R_A1]) * g;
  c[R_A12] = g.at(3, 0) / g.at(0, 0);
  g = u_root(-kA12, -c[R_A12]) * g;
  c[R_A112] = g.at(2, 0) / g.at(0, 0);
  g = u_root(-kA112, -c[R_A112]) * g;
  if (Q_ == Parabolic::Borel) {
    if (g.at(1, 1) == 0) throw SingularBlock();
    c[R_A2] = g.at(3, 1) / g.at(1, 1);
    g = u_root(-kA2, -c[R_A2]) * g;
  }
  return c;
}

std::array<long long, 4> clear_lower_z(ZM4& g, Parabolic Q_, long long m,
                                       long p) {
  std::array<long long, 4> c = {0, 0, 0, 0};
  auto unit_inv = [&](long long v) {
    if (std::gcd(v, (long long)p) != 1) throw SingularBlock();
    return inv_mod(v, m);
  };
  long long piv = unit_inv(g.at(0, 0));
  c[R_A1] = mul_mod(g.at(1, 0), piv, m);
  g = zm4_mul(u_root_mod(-kA1, -c[R_A1], m), g, m);
  c[R_A12] = mul_mod(g.at(3, 0), piv, m);
  g = zm4_mul(u_root_mod(-kA12, -c[R_A12], m), g, m);
  c[R_A112] = mul_mod(g.at(2, 0), piv, m);
  g = zm4_mul(u_root_mod(-kA112, -c[R_A112], m), g, m);
  if (Q_ == Parabolic::Borel) {
    c[R_A2] = mul_mod(g.at(3, 1), unit_inv(g.at(1, 1)), m);
    g = zm4_mul(u_root_mod(-kA2, -c[R_A2], m), g, m);
  }
  return c;
}

}  // namespace

IwahoriFactorsQ iwahori_factorize(const QM4& gq, Parabolic Qp_) {
  QM4 g = gq;
  for (auto& e : g.e) e.canonicalize();
  IwahoriFactorsQ f;
  QM4 q = g;
  switch (Qp_) {
    case Parabolic::Full:
      f.uminus = QM4::ident();
      f.levi = g;
      f.uplus = QM4::ident();
      return f;
    case Parabolic::Borel: {
      auto c = clear_lower_q(q, Qp_);
      f.uminus = lower_from_coords(c);
      if (q.at(2, 1) != 0 || q.at(2, 3) != 0) throw NotInParahoric();
      for (int i = 0; i < 4; ++i)
        if (q.at(i, i) == 0) throw SingularBlock();
      // torus constraint t1*t3 = t2*t4 (common similitude)
      if (q.at(0, 0) * q.at(2, 2) != q.at(1, 1) * q.at(3, 3))
        throw NotInParahoric("levi not a similitude torus");
      f.levi = QM4::diag(q.at(0, 0), q.at(1, 1), q.at(2, 2), q.at(3, 3));
      f.uplus = f.levi.inverse() * q;
      upper_coords(f.uplus);
      break;
    }
    case Parabolic::Klingen: {
      auto c = clear_lower_q(q, Qp_);
      f.uminus = lower_from_coords(c);
      if (q.at(2, 1) != 0 || q.at(2, 3) != 0) throw NotInParahoric();
      const Q a = q.at(0, 0);
      const std::array<Q, 4> blk = {q.at(1, 1), q.at(1, 3), q.at(3, 1),
                                    q.at(3, 3)};
      const Q det = blk[0] * blk[3] - blk[1] * blk[2];
      if (a == 0 || det == 0) throw SingularBlock();
      if (a * q.at(2, 2) != det)
        throw NotInParahoric("levi not of Klingen type");
      f.levi = mu_klingen(a, blk);
      f.uplus = f.levi.inverse() * q;
      auto x = upper_coords(f.uplus);
      if (x[R_A2] != 0) throw NotInParahoric();
      break;
    }
    case Parabolic::Siegel: {
      const Q detA = q.at(0, 0) * q.at(1, 1) - q.at(0, 1) * q.at(1, 0);
      if (detA == 0) throw SingularBlock();
      // X = C A^{-1}; symmetric for symplectic g.
      const Q ai00 = q.at(1, 1) / detA, ai01 = -q.at(0, 1) / detA;
      const Q ai10 = -q.at(1, 0) / detA, ai11 = q.at(0, 0) / detA;
      const Q x00 = q.at(2, 0) * ai00 + q.at(2, 1) * ai10;
      const Q x01 = q.at(2, 0) * ai01 + q.at(2, 1) * ai11;
      const Q x10 = q.at(3, 0) * ai00 + q.at(3, 1) * ai10;
      const Q x11 = q.at(3, 0) * ai01 + q.at(3, 1) * ai11;
      if (x01 != x10) throw NotInParahoric("lower block not symmetric");
      f.uminus = lower_from_coords({0, x11, x01, x00});
      q = f.uminus.inverse() * q;
      for (auto [i, j] : kSiegelZeros)
        if (q.at(i, j) != 0) throw NotInParahoric();
      QM4 m = QM4::zero();
      for (int i : {0, 1})
        for (int j : {0, 1}) {
          m.at(i, j) = q.at(i, j);
          m.at(i + 2, j + 2) = q.at(i + 2, j + 2);
        }
      // tA * D must be scalar: D = x * tA^{-1}
      const Q p00 = q.at(0, 0) * q.at(2, 2) + q.at(1, 0) * q.at(3, 2);
      const Q p01 = q.at(0, 0) * q.at(2, 3) + q.at(1, 0) * q.at(3, 3);
      const Q p10 = q.at(0, 1) * q.at(2, 2) + q.at(1, 1) * q.at(3, 2);
      const Q p11 = q.at(0, 1) * q.at(2, 3) + q.at(1, 1) * q.at(3, 3);
      if (p01 != 0 || p10 != 0 || p00 != p11)
        throw NotInParahoric("levi not of Siegel type");
      if (p00 == 0) throw SingularBlock();
      f.levi = m;
      f.uplus = m.inverse() * q;
      // Y = A^{-1} B must be symmetric and the rest identity.
      QM4 expect = QM4::ident();
      expect.at(0, 2) = f.uplus.at(0, 2);
      expect.at(0, 3) = f.uplus.at(0, 3);
      expect.at(1, 2) = f.uplus.at(1, 2);
      expect.at(1, 3) = f.uplus.at(1, 3);
      if (!(f.uplus == expect) || f.uplus.at(0, 3) != f.uplus.at(1, 2))
        throw NotInParahoric();
      break;
    }
  }
  if (!(f.uminus * f.levi * f.uplus == g)) throw NotInParahoric("refactor");
  return f;
}

IwahoriFactorsZ iwahori_factorize_mod(const ZM4& g, Parabolic Qp_, long long m,
                                      long p) {
  IwahoriFactorsZ f;
  ZM4 q = zm4_reduce(g, m);
  const ZM4 gin = q;
  auto unit_inv = [&](long long v) {
    if (std::gcd(v, (long long)p) != 1) throw SingularBlock();
    return inv_mod(v, m);
  };
  switch (Qp_) {
    case Parabolic::Full:
      f.uminus = ZM4::ident();
      f.levi = q;
      f.uplus = ZM4::ident();
      return f;
    case Parabolic::Borel: {
      auto c = clear_lower_z(q, Qp_, m, p);
      f.uminus = lower_from_coords_mod(c, m);
      if (q.at(2, 1) != 0 || q.at(2, 3) != 0) throw NotInParahoric();
      if (mul_mod(q.at(0, 0), q.at(2, 2), m) !=
          mul_mod(q.at(1, 1), q.at(3, 3), m))
        throw NotInParahoric("levi not a similitude torus");
      f.levi = ZM4::ident();
      ZM4 linv = ZM4::ident();
      for (int i = 0; i < 4; ++i) {
        f.levi.at(i, i) = q.at(i, i);
        linv.at(i, i) = unit_inv(q.at(i, i));
      }
      f.uplus = zm4_mul(linv, q, m);
      upper_coords_mod(f.uplus, m);
      break;
    }
    case Parabolic::Klingen: {
      auto c = clear_lower_z(q, Qp_, m, p);
      f.uminus = lower_from_coords_mod(c, m);
      if (q.at(2, 1) != 0 || q.at(2, 3) != 0) throw NotInParahoric();
      const long long a = q.at(0, 0);
      const long long det = mod_reduce(mul_mod(q.at(1, 1), q.at(3, 3), m) -
                                           mul_mod(q.at(1, 3), q.at(3, 1), m),
                                       m);
      if (mul_mod(a, q.at(2, 2), m) != det)
        throw NotInParahoric("levi not of Klingen type");
      f.levi = ZM4::ident();
      f.levi.at(0, 0) = a;
      f.levi.at(1, 1) = q.at(1, 1);
      f.levi.at(1, 3) = q.at(1, 3);
      f.levi.at(3, 1) = q.at(3, 1);
      f.levi.at(3, 3) = q.at(3, 3);
      f.levi.at(2, 2) = q.at(2, 2);
      // inverse of the Levi: 1/a, inverse 2x2 block, 1/b
      ZM4 linv = ZM4::ident();
      const long long dinv = unit_inv(det);
      linv.at(0, 0) = unit_inv(a);
      linv.at(1, 1) = mul_mod(q.at(3, 3), dinv, m);
      linv.at(1, 3) = mod_reduce(-mul_mod(q.at(1, 3), dinv, m), m);
      linv.at(3, 1) = mod_reduce(-mul_mod(q.at(3, 1), dinv, m), m);
      linv.at(3, 3) = mul_mod(q.at(1, 1), dinv, m);
      linv.at(2, 2) = unit_inv(q.at(2, 2));
      f.uplus = zm4_mul(linv, q, m);
      auto x = upper_coords_mod(f.uplus, m);
      if (x[R_A2] != 0) throw NotInParahoric();
      break;
    }
    case Parabolic::Siegel: {
      const long long detA = mod_reduce(
          mul_mod(q.at(0, 0), q.at(1, 1), m) - mul_mod(q.at(0, 1), q.at(1, 0), m),
          m);
      const long long di = unit_inv(detA);
      const long long ai00 = mul_mod(q.at(1, 1), di, m);
      const long long ai01 = mod_reduce(-mul_mod(q.at(0, 1), di, m), m);
      const long long ai10 = mod_reduce(-mul_mod(q.at(1, 0), di, m), m);
      const long long ai11 = mul_mod(q.at(0, 0), di, m);
      auto dot = [&](long long a, long long b, long long c, long long d) {
        return mod_reduce(mul_mod(a, b, m) + mul_mod(c, d, m), m);
      };
      const long long x00 = dot(q.at(2, 0), ai00, q.at(2, 1), ai10);
      const long long x01 = dot(q.at(2, 0), ai01, q.at(2, 1), ai11);
      const long long x10 = dot(q.at(3, 0), ai00, q.at(3, 1), ai10);
      const long long x11 = dot(q.at(3, 0), ai01, q.at(3, 1), ai11);
      if (x01 != x10) throw NotInParahoric("lower block not symmetric");
      f.uminus = lower_from_coords_mod({0, x11, x01, x00}, m);
      ZM4 uinv = ZM4::ident();
      uinv.at(2, 0) = mod_reduce(-x00, m);
      uinv.at(2, 1) = mod_reduce(-x01, m);
      uinv.at(3, 0) = mod_reduce(-x01, m);
      uinv.at(3, 1) = mod_reduce(-x11, m);
      q = zm4_mul(uinv, q, m);
      for (auto [i, j] : kSiegelZeros)
        if (q.at(i, j) != 0) throw NotInParahoric();
      const long long p00 = dot(q.at(0, 0), q.at(2, 2), q.at(1, 0), q.at(3, 2));
      const long long p01 = dot(q.at(0, 0), q.at(2, 3), q.at(1, 0), q.at(3, 3));
      const long long p10 = dot(q.at(0, 1), q.at(2, 2), q.at(1, 1), q.at(3, 2));
      const long long p11 = dot(q.at(0, 1), q.at(2, 3), q.at(1, 1), q.at(3, 3));
      if (p01 != 0 || p10 != 0 || p00 != p11)
        throw NotInParahoric("levi not of Siegel type");
      f.levi = ZM4::ident();
      ZM4 linv = ZM4::ident();
      const long long detD = mod_reduce(mul_mod(q.at(2, 2), q.at(3, 3), m) -
                                            mul_mod(q.at(2, 3), q.at(3, 2), m),
                                        m);
      const long long ddi = unit_inv(detD);
      for (int i : {0, 1})
        for (int j : {0, 1}) {
          f.levi.at(i, j) = q.at(i, j);
          f.levi.at(i + 2, j + 2) = q.at(i + 2, j + 2);
          if (i == j) {
            linv.at(i, j) = 0;
            linv.at(i + 2, j + 2) = 0;
          }
        }
      linv.at(0, 0) = ai00;
      linv.at(0, 1) = ai01;
      linv.at(1, 0) = ai10;
      linv.at(1, 1) = ai11;
      linv.at(2, 2) = mul_mod(q.at(3, 3), ddi, m);
      linv.at(2, 3) = mod_reduce(-mul_mod(q.at(2, 3), ddi, m), m);
      linv.at(3, 2) = mod_reduce(-mul_mod(q.at(3, 2), ddi, m), m);
      linv.at(3, 3) = mul_mod(q.at(2, 2), ddi, m);
      f.uplus = zm4_mul(linv, q, m);
      ZM4 expect = ZM4::ident();
      expect.at(0, 2) = f.uplus.at(0, 2);
      expect.at(0, 3) = f.uplus.at(0, 3);
      expect.at(1, 2) = f.uplus.at(1, 2);
      expect.at(1, 3) = f.uplus.at(1, 3);
      if (!(f.uplus == expect) || f.uplus.at(0, 3) != f.uplus.at(1, 2))
        throw NotInParahoric();
      break;
    }
  }
  if (!(zm4_mul(zm4_mul(f.uminus, f.levi, m), f.uplus, m) == gin))
    throw NotInParahoric("refactor");
  return f;
}

}  // namespace gsp4::core
