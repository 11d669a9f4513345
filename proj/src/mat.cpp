#include "gsp4/mat.hpp"

#include <sstream>

namespace gsp4 {

QM4 QM4::ident() {
  QM4 m;
  for (int i = 0; i < 4; ++i) m.at(i, i) = 1;
  return m;
}

QM4 QM4::zero() { return QM4{}; }

QM4 QM4::diag(const Q& d0, const Q& d1, const Q& d2, const Q& d3) {
  QM4 m;
  m.at(0, 0) = d0;
  m.at(1, 1) = d1;
  m.at(2, 2) = d2;
  m.at(3, 3) = d3;
  return m;
}

QM4 QM4::operator*(const QM4& o) const {
  QM4 r;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const Q& a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < 4; ++j) r.at(i, j) += a * o.at(k, j);
    }
  return r;
}

QM4 QM4::operator+(const QM4& o) const {
  QM4 r;
  for (size_t i = 0; i < 16; ++i) r.e[i] = e[i] + o.e[i];
  return r;
}

QM4 QM4::operator-(const QM4& o) const {
  QM4 r;
  for (size_t i = 0; i < 16; ++i) r.e[i] = e[i] - o.e[i];
  return r;
}

QM4 QM4::transpose() const {
  QM4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.at(i, j) = at(j, i);
  return r;
}

QM4 QM4::scaled(const Q& c) const {
  QM4 r;
  for (size_t i = 0; i < 16; ++i) r.e[i] = e[i] * c;
  return r;
}

QM4 QM4::inverse() const {
  QM4 a = *this;
  QM4 inv = QM4::ident();
  for (int col = 0; col < 4; ++col) {
    int piv = -1;
    for (int i = col; i < 4; ++i)
      if (a.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw std::domain_error("singular matrix");
    if (piv != col)
      for (int j = 0; j < 4; ++j) {
        std::swap(a.at(piv, j), a.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    Q d = a.at(col, col);
    for (int j = 0; j < 4; ++j) {
      a.at(col, j) /= d;
      inv.at(col, j) /= d;
    }
    for (int i = 0; i < 4; ++i) {
      if (i == col) continue;
      Q f = a.at(i, col);
      if (f == 0) continue;
      for (int j = 0; j < 4; ++j) {
        a.at(i, j) -= f * a.at(col, j);
        inv.at(i, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

Q QM4::det() const {
  QM4 a = *this;
  Q d = 1;
  for (int col = 0; col < 4; ++col) {
    int piv = -1;
    for (int i = col; i < 4; ++i)
      if (a.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      for (int j = 0; j < 4; ++j) std::swap(a.at(piv, j), a.at(col, j));
      d = -d;
    }
    d *= a.at(col, col);
    Q inv_piv = Q(1) / a.at(col, col);
    for (int i = col + 1; i < 4; ++i) {
      Q f = a.at(i, col) * inv_piv;
      if (f == 0) continue;
      for (int j = col; j < 4; ++j) a.at(i, j) -= f * a.at(col, j);
    }
  }
  return d;
}

bool QM4::is_upper_triangular() const {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < i; ++j)
      if (at(i, j) != 0) return false;
  return true;
}

bool QM4::is_lower_triangular() const {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (at(i, j) != 0) return false;
  return true;
}

std::string QM4::str() const {
  std::ostringstream os;
  for (int i = 0; i < 4; ++i) {
    os << (i == 0 ? "[" : " ");
    for (int j = 0; j < 4; ++j) os << at(i, j).get_str() << (j < 3 ? " " : "");
    os << (i == 3 ? "]" : "\n");
  }
  return os.str();
}

ZM4 ZM4::ident() {
  ZM4 m;
  for (int i = 0; i < 4; ++i) m.at(i, i) = 1;
  return m;
}

std::string ZM4::key() const {
  std::string s(32, '\0');
  for (size_t i = 0; i < 16; ++i) {
    s[2 * i] = static_cast<char>(e[i] & 0xff);
    s[2 * i + 1] = static_cast<char>((e[i] >> 8) & 0xff);
  }
  return s;
}

ZM4 zm4_mul(const ZM4& a, const ZM4& b, long long m) {
  ZM4 r;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      long long v = a.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < 4; ++j)
        r.at(i, j) = (r.at(i, j) + static_cast<long long>((static_cast<__int128>(v) * b.at(k, j)) % m)) % m;
    }
  return r;
}

ZM4 zm4_reduce(const ZM4& a, long long m) {
  ZM4 r;
  for (size_t i = 0; i < 16; ++i) r.e[i] = mod_reduce(a.e[i], m);
  return r;
}

ZM4 zm4_from(const QM4& a, long long m, long p) {
  ZM4 r;
  for (size_t i = 0; i < 16; ++i) r.e[i] = mod_reduce_q(a.e[i], m, p);
  return r;
}

QM4 qm4_from(const ZM4& a) {
  QM4 r;
  for (size_t i = 0; i < 16; ++i) r.e[i] = Q(static_cast<long>(a.e[i]));
  return r;
}

ZM2 ZM2::ident() {
  ZM2 m;
  m.at(0, 0) = m.at(1, 1) = 1;
  return m;
}

ZM2 zm2_mul(const ZM2& a, const ZM2& b, long long m) {
  ZM2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      long long s = 0;
      for (int k = 0; k < 2; ++k) s = (s + a.at(i, k) * b.at(k, j)) % m;
      r.at(i, j) = s;
    }
  return r;
}

long long zm2_det(const ZM2& a, long long m) {
  return mod_reduce(a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0), m);
}

ZM2 zm2_inv(const ZM2& a, long long m) {
  long long d = inv_mod(zm2_det(a, m), m);
  ZM2 r;
  r.at(0, 0) = mod_reduce(a.at(1, 1) * d, m);
  r.at(0, 1) = mod_reduce(-a.at(0, 1) * d, m);
  r.at(1, 0) = mod_reduce(-a.at(1, 0) * d, m);
  r.at(1, 1) = mod_reduce(a.at(0, 0) * d, m);
  return r;
}

}  // namespace gsp4
