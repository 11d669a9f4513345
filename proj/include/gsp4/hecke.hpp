#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "gsp4/arith.hpp"
#include "gsp4/flags.hpp"
#include "gsp4/roots.hpp"

namespace gsp4::hecke {

// Right-coset decomposition C (d) C = disjoint union of C d u_j over the
// depth-r parahoric C of type Q.  The u_j are upper unipotent with
// coordinate i running over [0, p^{k_i(d)}) in lexicographic order, so the
// degree is p^{sum k_i}.  d must pass flags::check_cone.
struct CosetDecomposition {
  Parabolic q;
  long p;
  int r;
  TorusPowers d;
  long long degree = 0;
  std::vector<std::array<long long, 4>> reps;  // upper coordinates of u_j
};
CosetDecomposition coset_decomposition(Parabolic q, const TorusPowers& d,
                                       long p, int r);

long long coset_degree(Parabolic q, const TorusPowers& d, long p);

// Product of two double cosets by explicit right-coset label counting:
// every product xi_i * xi'_j is reduced to its canonical coset label inside
// C d1 d2 C and multiplicities are tallied.  The torus-part product is a
// single class with unit coefficient exactly when classes == deg1 * deg2 and
// every label is hit once.
struct ProductReport {
  Parabolic q;
  TorusPowers d1, d2, d12;
  long long deg1 = 0, deg2 = 0, deg12 = 0;
  long long classes = 0;    // distinct right-coset labels among products
  long long max_coeff = 0;  // largest multiplicity
  bool single_class_coeff_one = false;
  std::string json() const;
};
ProductReport hecke_multiply(Parabolic q, const TorusPowers& d1,
                             const TorusPowers& d2, long p);

// Sparse integer matrix of the double-coset operator on the free module of
// functions on a flag set: (Tf)(y) = twist * sum_j f(xi_j y), row = source
// point.  For the zero weight the twist is 1 and entries are exact integer
// counts (modulus 0); otherwise entries are reduced mod p^r and the p-power
// coefficient twist chi(d)^{-1} must be integral (anti-dominant chi on the
// cone), else an Error is thrown.
struct HeckeMatrix {
  int n = 0;
  long long modulus = 0;  // 0 = exact integers
  std::vector<std::vector<std::pair<int, long long>>> rows;  // sorted by col
};
HeckeMatrix hecke_matrix(const flags::FlagSet& fs, const TorusPowers& d,
                         const WeightChar& chi);

HeckeMatrix hm_mul(const HeckeMatrix& a, const HeckeMatrix& b);
bool hm_equal(const HeckeMatrix& a, const HeckeMatrix& b);
bool hecke_commute(const HeckeMatrix& a, const HeckeMatrix& b);

// e = lim T^{n!} over Z/mod by factorial powers with a stationarity stop and
// a hard cap of 64 steps.  Dense, row-major; n <= 512.
struct IdempotentResult {
  int n = 0;
  long long mod = 0;
  std::vector<long long> e;
  int iterations = 0;
  bool stationary = false;
  bool idempotent = false;  // e*e == e
  bool commutes = false;    // e*T == T*e
};
IdempotentResult ordinary_idempotent(const std::vector<long long>& t, int n,
                                     long long mod);

// Evaluation-at-the-marked-point exact sequence, finite model: the induced
// module with full Levi equivariance reduces to functions on the depth-1
// coordinate block mod p^s; K = functions vanishing at the marked point.
// One application of the cone operator per depth level sends every point to
// the marked point, so T^{max(1,s-1)} K = 0 with exact integer entries and
// the ordinary idempotent annihilates K.  The marked-point row of T equals
// degree * (indicator of the marked point): fiber functions are scaled by
// the degree, not annihilated.
struct KernelReport {
  Parabolic q;
  long p;
  int s;
  WeightChar chi;
  long long dim = 0;       // finite model size p^{(s-1)*|nilradical|}
  long long degree = 0;    // operator degree
  int t_kills_kernel = 0;  // least n with T^n K = 0; 0 when none found
  int e_iterations = 0;
  bool e_kernel_zero = false;
  bool marked_row_degree = false;
  bool pass = false;
  std::string json() const;
};
KernelReport evaluation_kernel_check(Parabolic q, long p, int s,
                                     const WeightChar& chi);

// Hyperspecial-level decomposition count: cells indexed by minimal-length
// representatives of W_{M_Q} \ W, cell size p^{sum over gamma > 0 with
// w(gamma) > 0 of k_{w(gamma)}(d)}.  For the Siegel element tau(1,1;p) the
// total is (p+1)(p^2+1), the number of lagrangian planes.
struct SphericalCount {
  Parabolic q;
  TorusPowers d;
  long p;
  std::vector<std::pair<std::string, long long>> cells;  // (w name, size)
  long long total = 0;
  std::string json() const;
};
SphericalCount spherical_decomposition_count(Parabolic q, const TorusPowers& d,
                                             long p);

// X^4 - T X^3 + q(R + (1+q^2)S) X^2 - q^3 T S X + q^6 S^2, coefficients
// returned ascending [c0, c1, c2, c3, c4].
std::array<Z, 5> char_poly(const Z& T, const Z& R, const Z& S, const Z& q);
// c1 == c3 * q^3 S and c0 == (q^3 S)^2.
bool char_poly_autodual(const std::array<Z, 5>& c, const Z& q, const Z& S);

}  // namespace gsp4::hecke
