#pragma once

#include <array>
#include <string>

#include "gsp4/arith.hpp"

namespace gsp4 {

// 4x4 matrix over exact rationals, row major, immutable-style API.
struct QM4 {
  std::array<Q, 16> e{};

  static QM4 ident();
  static QM4 zero();
  static QM4 diag(const Q& d0, const Q& d1, const Q& d2, const Q& d3);

  const Q& at(int i, int j) const { return e[static_cast<size_t>(4 * i + j)]; }
  Q& at(int i, int j) { return e[static_cast<size_t>(4 * i + j)]; }

  QM4 operator*(const QM4& o) const;
  QM4 operator+(const QM4& o) const;
  QM4 operator-(const QM4& o) const;
  bool operator==(const QM4& o) const = default;

  QM4 transpose() const;
  QM4 scaled(const Q& c) const;
  // Gauss-Jordan; throws std::domain_error on singular input.
  QM4 inverse() const;
  Q det() const;
  bool is_upper_triangular() const;
  bool is_lower_triangular() const;
  std::string str() const;
};

// 4x4 matrix over Z/m for machine-size m; the modulus is passed to the ops.
struct ZM4 {
  std::array<long long, 16> e{};

  static ZM4 ident();

  long long at(int i, int j) const { return e[static_cast<size_t>(4 * i + j)]; }
  long long& at(int i, int j) { return e[static_cast<size_t>(4 * i + j)]; }

  bool operator==(const ZM4& o) const = default;
  std::string key() const;  // packed bytes for hashing, entries must fit in [0, 2^16)
};

ZM4 zm4_mul(const ZM4& a, const ZM4& b, long long m);
ZM4 zm4_reduce(const ZM4& a, long long m);
// Entry-wise reduction of a p-integral rational matrix mod m = p^r.
ZM4 zm4_from(const QM4& a, long long m, long p);
QM4 qm4_from(const ZM4& a);

// 2x2 helpers over Z/m (Levi blocks).
struct ZM2 {
  std::array<long long, 4> e{};
  static ZM2 ident();
  long long at(int i, int j) const { return e[static_cast<size_t>(2 * i + j)]; }
  long long& at(int i, int j) { return e[static_cast<size_t>(2 * i + j)]; }
  bool operator==(const ZM2& o) const = default;
};

ZM2 zm2_mul(const ZM2& a, const ZM2& b, long long m);
long long zm2_det(const ZM2& a, long long m);
ZM2 zm2_inv(const ZM2& a, long long m);  // throws std::domain_error if det not a unit

}  // namespace gsp4
