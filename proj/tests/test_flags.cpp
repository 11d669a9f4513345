#include "doctest.h"
#include "gsp4/flags.hpp"

using namespace gsp4;
using namespace gsp4::flags;

TEST_SUITE("flags") {

TEST_CASE("closed-form counts") {
  // |U_Q^-(p Z/p^2)| * |M'_Q(Z/p^2)| at p = 3, (r, s) = (2, 1)
  CHECK(flag_count(Parabolic::Borel, 3, 2, 1) == 2916);
  CHECK(flag_count(Parabolic::Siegel, 3, 2, 1) == 104976);
  CHECK(flag_count(Parabolic::Klingen, 3, 2, 1) == 104976);
  // s = r leaves the unipotent directions untruncated
  CHECK(flag_count(Parabolic::Borel, 3, 1, 1) == 4);
}

TEST_CASE("enumeration agrees with the closed form") {
  const auto fs = enumerate_flags(Parabolic::Borel, 3, 2, 1);
  CHECK((long long)fs.points.size() == flag_count(Parabolic::Borel, 3, 2, 1));
  CHECK(fs.mod == 9);
  // index is a bijection onto positions
  for (size_t i = 0; i < fs.points.size(); i += 97) {
    CHECK(fs.locate(fs.points[i]) == (long long)i);
  }
  // marked point is located
  CHECK(fs.locate(fs.points[(size_t)fs.marked]) == fs.marked);
}

TEST_CASE("scale and level guards") {
  CHECK_THROWS_AS((void)enumerate_flags(Parabolic::Borel, 7, 2, 1),
                  ScaleRefused);
  CHECK_THROWS_AS((void)enumerate_flags(Parabolic::Borel, 3, 3, 1),
                  ScaleRefused);
  CHECK_THROWS_AS((void)enumerate_flags(Parabolic::Borel, 3, 2, 0),
                  LevelMismatch);
  CHECK_THROWS_AS((void)enumerate_flags(Parabolic::Borel, 3, 1, 2),
                  LevelMismatch);
}

TEST_CASE("cone generators") {
  const TorusPowers dP = cone_generator(Parabolic::Siegel);
  CHECK(dP.a1 == 0);
  CHECK(dP.a2 == 0);
  CHECK(dP.b == 1);
  CHECK(dP.k(R_A1) == 0);  // centralizes the Siegel Levi
  CHECK(dP.k(R_A2) == 1);
  const TorusPowers dK = cone_generator(Parabolic::Klingen);
  CHECK(dK.a1 == 0);
  CHECK(dK.a2 == 1);
  CHECK(dK.b == 2);
  CHECK(dK.k(R_A1) == 1);
  CHECK(dK.k(R_A2) == 0);  // centralizes the Klingen Levi
  const TorusPowers dB = cone_generator(Parabolic::Borel);
  CHECK(dB.k(R_A1) == 1);
  CHECK(dB.k(R_A2) == 1);
  CHECK(dB.k(R_A12) == 2);
  CHECK(dB.k(R_A112) == 3);
  // strict contraction on every nilradical direction
  for (auto q : {Parabolic::Borel, Parabolic::Siegel, Parabolic::Klingen}) {
    check_cone(q, cone_generator(q));
  }
  // Siegel cone element must centralize its Levi
  CHECK_THROWS_AS(check_cone(Parabolic::Siegel, TorusPowers{0, 1, 2}),
                  NonIntegralConjugate);
}

TEST_CASE("contraction onto the marked fiber") {
  for (auto q : {Parabolic::Borel, Parabolic::Siegel, Parabolic::Klingen}) {
    const auto rep = contraction_report(q, 3, 2, 1);
    CHECK(rep.pass);
    CHECK(rep.points == rep.closed_form);
    CHECK(rep.in_fiber == rep.points);
  }
  const auto repB = contraction_report(Parabolic::Borel, 3, 2, 1);
  CHECK(repB.points == 2916);
  CHECK(repB.json().find("\"schema\": \"gsp4/1\"") != std::string::npos);
  CHECK(repB.json().find("\"pass\": true") != std::string::npos);
}

TEST_CASE("lagrangian census") {
  CHECK(lagrangian_count(3) == 40);
  CHECK(lagrangian_count(5) == 156);  // (p+1)(p^2+1)
}

}  // TEST_SUITE
