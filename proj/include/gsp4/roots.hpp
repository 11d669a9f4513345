#pragma once

#include <array>
#include <string>
#include <vector>

namespace gsp4 {

enum class Parabolic { Borel, Siegel, Klingen, Full };

std::string parabolic_name(Parabolic q);   // "B", "P", "P*", "G"
Parabolic parabolic_from_name(const std::string& s);  // throws std::invalid_argument

// A root of C2 in the (a1, a2) character plane.
struct Root {
  int m1, m2;
  bool operator==(const Root&) const = default;
  Root operator-() const { return {-m1, -m2}; }
  bool positive() const { return m1 > 0 || (m1 == 0 && m2 > 0); }
};

// Positive roots in the fixed enumeration order a1, a2, a1+a2, 2a1+a2.
inline constexpr int N_POS_ROOTS = 4;
enum RootIdx { R_A1 = 0, R_A2 = 1, R_A12 = 2, R_A112 = 3 };

const std::array<Root, 4>& positive_roots();
std::string root_name(const Root& r);  // "a1", "-a1", "a1+a2", ...

// Index in positive_roots() of r or -r; -1 if not a root.
int pos_root_index(const Root& r);

// Nilradical roots R_Q (positive roots of Q^+).
const std::vector<Root>& nilradical_roots(Parabolic q);
// Levi roots Delta_Q^+ (positive roots inside the Levi).
const std::vector<Root>& levi_roots(Parabolic q);

// Torus character (a1, a2; b) with a1 + a2 = b mod 2, value on tau(t1,t2;x)
// equal to t1^a1 t2^a2 x^((b-a1-a2)/2).
struct WeightChar {
  long a1 = 0, a2 = 0, b = 0;
  bool operator==(const WeightChar&) const = default;
  bool parity_ok() const { return ((a1 + a2) - b) % 2 == 0; }
};

// p-power torus element tau(p^a1, p^a2; p^b); diagonal valuations are
// (a1, a2, b-a1, b-a2).
struct TorusPowers {
  long a1 = 0, a2 = 0, b = 0;
  bool operator==(const TorusPowers&) const = default;
  std::array<long, 4> diag_vals() const { return {a1, a2, b - a1, b - a2}; }
  // k_alpha = -val(alpha(t)) for the positive root with index i; >= 0 on the
  // cone attached to each parabolic.
  long k(int i) const {
    switch (i) {
      case R_A1: return a2 - a1;
      case R_A2: return b - 2 * a2;
      case R_A12: return b - a1 - a2;
      case R_A112: return b - 2 * a1;
    }
    return 0;
  }
  TorusPowers operator*(const TorusPowers& o) const {
    return {a1 + o.a1, a2 + o.a2, b + o.b};
  }
};

}  // namespace gsp4
