#include <random>
#include <set>

#include "doctest.h"
#include "gsp4/flags.hpp"
#include "gsp4/hecke.hpp"

using namespace gsp4;
using namespace gsp4::hecke;

namespace {
const TorusPowers d1{0, 0, 1}, d2{0, 1, 2}, d3{0, 1, 3};
}

TEST_SUITE("hecke") {

TEST_CASE("coset degrees and decompositions") {
  CHECK(coset_degree(Parabolic::Borel, d1, 3) == 27);
  CHECK(coset_degree(Parabolic::Borel, d2, 3) == 81);
  CHECK(coset_degree(Parabolic::Borel, d3, 3) == 2187);
  const auto dec = coset_decomposition(Parabolic::Borel, d2, 3, 1);
  CHECK(dec.degree == 81);
  CHECK((long long)dec.reps.size() == dec.degree);
  std::set<std::array<long long, 4>> uniq(dec.reps.begin(), dec.reps.end());
  CHECK(uniq.size() == dec.reps.size());
  // coordinate i ranges over [0, p^{k_i}); remultiplying the bound gives the
  // degree
  long long prod = 1;
  for (int i = 0; i < N_POS_ROOTS; ++i)
    prod *= ipow(3, (unsigned)d2.k((RootIdx)i));
  CHECK(prod == dec.degree);
}

TEST_CASE("single-class products with coefficient one") {
  for (auto [a, b] : {std::pair{d1, d2}, {d2, d1}, {d1, d3}, {d2, d3}}) {
    const auto pr = hecke_multiply(Parabolic::Borel, a, b, 3);
    CHECK(pr.single_class_coeff_one);
    CHECK(pr.classes == 1);
    CHECK(pr.max_coeff == 1);
    CHECK(pr.deg12 == pr.deg1 * pr.deg2);
    CHECK(pr.json().find("\"schema\": \"gsp4/1\"") != std::string::npos);
  }
}

TEST_CASE("matrices commute on the level-one module") {
  const auto fs = flags::enumerate_flags(Parabolic::Borel, 3, 1, 1);
  const WeightChar triv{0, 0, 0};
  const auto T1 = hecke_matrix(fs, d1, triv);
  const auto T2 = hecke_matrix(fs, d2, triv);
  const auto T3 = hecke_matrix(fs, d3, triv);
  CHECK(hecke_commute(T1, T2));
  CHECK(hecke_commute(T1, T3));
  CHECK(hecke_commute(T2, T3));
  // d1 * d2 = d3 exactly, so the operators multiply to T3
  CHECK(hm_equal(hm_mul(T1, T2), T3));
  // row degrees: every row of T3 sums to its coset degree
  for (const auto& row : T3.rows) {
    long long s = 0;
    for (const auto& [j, c] : row) s += c;
    CHECK(s == 2187);
  }
}

TEST_CASE("ordinary idempotent stabilizes") {
  const auto fs = flags::enumerate_flags(Parabolic::Borel, 3, 1, 1);
  const auto T1 = hecke_matrix(fs, d1, {0, 0, 0});
  const auto res = ordinary_idempotent(T1, (int)fs.points.size(), 729);
  CHECK(res.stationary);
  CHECK(res.idempotent);
  CHECK(res.commutes);
}

TEST_CASE("evaluation kernel is killed by the idempotent") {
  for (auto q : {Parabolic::Borel, Parabolic::Siegel, Parabolic::Klingen}) {
    const auto kr = evaluation_kernel_check(q, 3, 2, {0, 0, 0});
    CHECK(kr.pass);
    CHECK(kr.t_kills_kernel);
    CHECK(kr.e_kernel_zero);
    CHECK(kr.marked_row_degree);
  }
  const auto kb = evaluation_kernel_check(Parabolic::Borel, 3, 2, {0, 0, 0});
  CHECK(kb.dim == 81);    // p^{(s-1)|nil|}
  CHECK(kb.degree == 2187);
  CHECK(kb.json().find("\"schema\": \"gsp4/1\"") != std::string::npos);
}

TEST_CASE("spherical cell censuses") {
  const auto sp = spherical_decomposition_count(Parabolic::Siegel, d1, 3);
  CHECK(sp.total == 40);
  REQUIRE(sp.cells.size() == 4);
  CHECK(sp.cells[0].first == "id");
  CHECK(sp.cells[0].second == 27);
  long long sum = 0;
  for (const auto& [w, n] : sp.cells) sum += n;
  CHECK(sum == sp.total);
  CHECK(spherical_decomposition_count(Parabolic::Klingen, d2, 3).total == 112);
  CHECK(spherical_decomposition_count(Parabolic::Borel, d3, 3).total == 3760);
}

TEST_CASE("characteristic polynomial and autoduality") {
  const auto c = char_poly(Z(1), Z(0), Z(1), Z(2));
  CHECK(c[4] == 1);
  CHECK(c[3] == -1);
  CHECK(c[2] == 10);   // q(R + (1 + q^2) S)
  CHECK(c[1] == -8);   // -q^3 T S
  CHECK(c[0] == 64);   // (q^3 S)^2
  CHECK(char_poly_autodual(c, Z(2), Z(1)));
  std::mt19937_64 rng(20260818);
  for (int i = 0; i < 200; ++i) {
    const Z T((long)(rng() % 4001) - 2000), R((long)(rng() % 4001) - 2000);
    const Z S((long)(rng() % 4001) - 2000), q((long)(rng() % 97) + 1);
    CHECK(char_poly_autodual(char_poly(T, R, S, q), q, S));
  }
}

}  // TEST_SUITE
