#include <map>
#include <set>
#include <vector>

#include "doctest.h"
#include "gsp4/weights.hpp"

using namespace gsp4;
using namespace gsp4::weights;

TEST_SUITE("weights") {

TEST_CASE("dominance flags") {
  HighestWeight lam{{{5, 3}}, 8};
  const auto f = dominance_tests(lam);
  CHECK(f.dominant);
  CHECK(f.regular);
  CHECK(f.separable);
  CHECK(f.vAdmissible);
  HighestWeight two{{{5, 3}, {5, 3}}, 8};
  const auto g = dominance_tests(two);
  CHECK(g.separable);
  CHECK(g.vAdmissible);
  CHECK(!g.sufficientlySeparable);
  HighestWeight bad{{{5, 3}, {7, 5}}, 8};
  const auto h = dominance_tests(bad);
  CHECK(!h.separable);
  CHECK(!h.vAdmissible);
  HighestWeight parity{{{5, 2}}, 8};
  CHECK_THROWS_AS(parity.validate(), ParityViolation);
}

TEST_CASE("dot actions") {
  CHECK(dot_action(weyl::by_name("s1"), {5, 3}, Parabolic::Full) ==
        (std::array<long, 2>{2, 6}));  // (b-1, a+1)
  CHECK(dot_action(weyl::by_name("-id"), {0, 0}, Parabolic::Full) ==
        (std::array<long, 2>{-4, -2}));
  CHECK(dot_action(weyl::by_name("s1"), {5, 3}, Parabolic::Siegel) ==
        (std::array<long, 2>{2, 6}));
  CHECK(dot_action(weyl::by_name("s2"), {5, 3}, Parabolic::Klingen) ==
        (std::array<long, 2>{5, -5}));  // (a, -b-2)
  CHECK_THROWS_AS((void)dot_action(weyl::by_name("s2"), {5, 3},
                                   Parabolic::Siegel),
                  InvalidWQ);
}

TEST_CASE("nilradical-mode weight strata") {
  const auto d = kostant_weights(Parabolic::Borel, {0, 0});
  CHECK(d.entries.size() == 8);
  CHECK(d.q_lo == 0);
  CHECK(d.q_hi == 4);
  std::map<int, int> hist;
  for (const auto& e : d.entries) hist[e.degree]++;
  CHECK(hist[0] == 1);
  CHECK(hist[1] == 2);
  CHECK(hist[2] == 2);
  CHECK(hist[3] == 2);
  CHECK(hist[4] == 1);
  const auto s = kostant_weights(Parabolic::Siegel, {0, 0});
  REQUIRE(s.entries.size() == 4);
  for (int k = 0; k < 4; ++k) CHECK(s.entries[(size_t)k].degree == k);
  const auto kl = kostant_weights(Parabolic::Klingen, {0, 0});
  REQUIRE(kl.entries.size() == 4);
  for (int k = 0; k < 4; ++k) CHECK(kl.entries[(size_t)k].degree == k);
}

TEST_CASE("stratum-mode windows, frozen rows") {
  const auto w1 = kostant_weights(Parabolic::Borel, weyl::by_name("id"),
                                  Parabolic::Siegel, {5, 3});
  CHECK(w1.q_lo == 3);
  CHECK(w1.q_hi == 4);
  REQUIRE(w1.entries.size() == 2);
  CHECK(w1.entries[0].weight == (std::array<long, 2>{5, 3}));
  CHECK(w1.entries[1].weight == (std::array<long, 2>{2, 6}));

  const auto w2 = kostant_weights(Parabolic::Borel, weyl::by_name("-s2"),
                                  Parabolic::Siegel, {5, 3});
  CHECK(w2.q_lo == 1);
  CHECK(w2.q_hi == 2);
  CHECK(w2.entries.size() == 2);
  CHECK(weyl::name(w2.w) == "s2s1");  // class representative canonicalized

  const auto w3 = kostant_weights(Parabolic::Borel, weyl::by_name("-id"),
                                  Parabolic::Siegel, {5, 3});
  CHECK(w3.q_lo == 0);
  CHECK(w3.q_hi == 1);
  CHECK(w3.entries.size() == 2);

  const auto w4 = kostant_weights(Parabolic::Siegel, weyl::by_name("s2"),
                                  Parabolic::Siegel, {5, 3});
  CHECK(w4.q_lo == 1);
  CHECK(w4.q_hi == 2);
  REQUIRE(w4.entries.size() == 2);
  CHECK(w4.entries[1].weight == (std::array<long, 2>{2, 6}));

  const auto w5 = kostant_weights(Parabolic::Klingen, weyl::by_name("id"),
                                  Parabolic::Siegel, {5, 3});
  CHECK(w5.q_lo == 2);
  CHECK(w5.q_hi == 3);
  REQUIRE(w5.entries.size() == 2);
  CHECK(w5.entries[0].weight == (std::array<long, 2>{5, 3}));

  const auto w6 = kostant_weights(Parabolic::Klingen, weyl::by_name("s1"),
                                  Parabolic::Klingen, {5, 3});
  CHECK(w6.q_lo == 1);
  CHECK(w6.q_hi == 2);
  REQUIRE(w6.entries.size() == 2);
  CHECK(w6.entries[1].weight == (std::array<long, 2>{5, -5}));

  // the degree window always matches the double-coset degree statistics
  for (auto q : {Parabolic::Borel, Parabolic::Siegel, Parabolic::Klingen}) {
    for (auto sg : {Parabolic::Borel, Parabolic::Siegel, Parabolic::Klingen}) {
      for (const auto& info : weyl::weyl_group()) {
        const auto dd = kostant_weights(sg, info.w, q, {5, 3});
        const auto st = weyl::degree_stats(q, sg, dd.w);
        CHECK(dd.q_lo == st.first);
        CHECK(dd.q_hi == st.second);
        REQUIRE(!dd.entries.empty());
        CHECK(dd.entries.front().degree == dd.q_lo);
        CHECK(dd.entries.back().degree == dd.q_hi);
      }
    }
  }
}

TEST_CASE("dimension formula against Freudenthal") {
  CHECK(weyl_dimension(0, 0) == 1);
  CHECK(weyl_dimension(1, 0) == 4);
  CHECK(weyl_dimension(1, 1) == 5);
  CHECK(weyl_dimension(2, 0) == 10);
  CHECK(weyl_dimension(2, 1) == 16);
  CHECK(weyl_dimension(2, 2) == 14);
  for (long a = 0; a <= 6; ++a)
    for (long b = 0; b <= a; ++b)
      CHECK(weyl_dimension(a, b) == freudenthal_dimension(a, b));
}

TEST_CASE("Lie-algebra cohomology matches the weight strata") {
  for (auto u : {Parabolic::Borel, Parabolic::Siegel, Parabolic::Klingen}) {
    for (auto [a, b] :
         std::vector<std::array<long, 2>>{{0, 0}, {1, 0}, {1, 1}, {2, 1}}) {
      const auto ce = ce_cohomology_weights(u, a, b);
      const auto ko = kostant_weights(u, {a, b});
      std::map<int, std::multiset<std::array<long, 2>>> want;
      for (const auto& e : ko.entries)
        for (const auto& wt : levi_weight_string(u, e.weight))
          want[e.degree].insert(wt);
      for (size_t k = 0; k < ce.size(); ++k) {
        std::multiset<std::array<long, 2>> got(ce[k].begin(), ce[k].end());
        CHECK(got == want[(int)k]);
      }
    }
  }
}

TEST_CASE("Euler characteristic identity") {
  for (auto u : {Parabolic::Borel, Parabolic::Siegel, Parabolic::Klingen})
    for (long a = 0; a <= 6; ++a)
      for (long b = 0; b <= a; ++b) CHECK(kostant_euler_identity(u, a, b));
}

TEST_CASE("central characters") {
  CHECK(central_character(Parabolic::Borel, weyl::by_name("id"),
                          weyl::by_name("id"), Parabolic::Borel, {0, 0}) ==
        (std::array<long, 2>{4, 2}));
  CHECK(central_character(Parabolic::Borel, weyl::by_name("-id"),
                          weyl::by_name("id"), Parabolic::Borel, {0, 0}) ==
        (std::array<long, 2>{0, 0}));
  CHECK(central_restriction(Parabolic::Siegel, {3, 4}) == 7);
  CHECK(central_restriction(Parabolic::Klingen, {3, 4}) == 3);
  CHECK_THROWS_AS((void)central_restriction(Parabolic::Borel, {1, 1}),
                  InvalidWQ);
}

TEST_CASE("boundary summands") {
  CHECK(boundary_summands(Parabolic::Borel, 0, LevelType::Gamma1, {5, 3})
            .empty());
  CHECK(boundary_summands(Parabolic::Borel, 5, LevelType::Gamma1, {5, 3})
            .empty());
  const auto b2 =
      boundary_summands(Parabolic::Borel, 2, LevelType::Gamma1, {5, 3});
  REQUIRE(b2.size() == 2);
  CHECK(b2[0].stratum == Parabolic::Siegel);
  CHECK(b2[0].weylClass == "-s2");
  CHECK(b2[1].stratum == Parabolic::Klingen);
  CHECK(b2[1].weylClass == "-s1");
  CHECK(b2[0].leviDegree == 1);
  CHECK(b2[0].highestWeight == (std::array<long, 2>{5, 3}));
  CHECK(b2[0].inductionIndex == "T1(P,-s2)*E");
  const auto b3 =
      boundary_summands(Parabolic::Borel, 3, LevelType::Gamma1, {5, 3});
  REQUIRE(b3.size() == 2);
  CHECK(b3[0].weylClass == "s2");
  CHECK(b3[1].weylClass == "s1");
  const auto b1 =
      boundary_summands(Parabolic::Borel, 1, LevelType::Gamma1, {5, 3});
  REQUIRE(b1.size() == 4);  // two torus strata + the two maximal -id classes
  CHECK(b1[0].stratum == Parabolic::Borel);
  CHECK(b1[0].weylClass == "-s2");
  CHECK(b1[1].stratum == Parabolic::Borel);
  CHECK(b1[1].weylClass == "-s1");
  CHECK(b1[0].inductionIndex == "E");
  CHECK(b1[0].leviDegree == 0);
  CHECK(b1[2].weylClass == "-id");
  CHECK(b1[3].weylClass == "-id");
  const auto b4 =
      boundary_summands(Parabolic::Borel, 4, LevelType::Gamma1, {5, 3});
  REQUIRE(b4.size() == 3);
  CHECK(b4[0].stratum == Parabolic::Borel);
  CHECK(b4[0].weylClass == "id");

  const auto p3 =
      boundary_summands(Parabolic::Siegel, 3, LevelType::Gamma1, {5, 3});
  REQUIRE(p3.size() == 3);
  CHECK(p3[0].stratum == Parabolic::Siegel);
  CHECK(p3[0].weylClass == "s2");
  CHECK(p3[0].leviDegree == 1);
  CHECK(!p3[0].torsion);
  CHECK(p3[0].highestWeight == (std::array<long, 2>{2, 6}));
  CHECK(p3[1].stratum == Parabolic::Siegel);
  CHECK(p3[1].weylClass == "id");
  CHECK(p3[1].leviDegree == 0);
  CHECK(p3[1].torsion);
  CHECK(p3[1].highestWeight == (std::array<long, 2>{5, 3}));
  CHECK(p3[2].stratum == Parabolic::Klingen);
  CHECK(p3[2].weylClass == "id");
  CHECK(p3[2].leviDegree == 1);
  CHECK(!p3[2].torsion);
  CHECK(p3[2].highestWeight == (std::array<long, 2>{5, 3}));
  CHECK_THROWS_AS((void)boundary_summands(Parabolic::Siegel, 2,
                                          LevelType::Gamma1, {5, 3}),
                  UnsupportedDegree);

  const auto q3 =
      boundary_summands(Parabolic::Klingen, 3, LevelType::Gamma1, {5, 3});
  REQUIRE(q3.size() == 3);
  CHECK(q3[0].stratum == Parabolic::Klingen);
  CHECK(q3[0].weylClass == "s1");
  CHECK(q3[0].highestWeight == (std::array<long, 2>{5, -5}));
  CHECK(q3[1].torsion);
  CHECK(q3[2].stratum == Parabolic::Siegel);

  const auto js = summands_json(p3);
  CHECK(js.find("\"stratum\": \"P\"") != std::string::npos);
  CHECK(js.find("\"weylClass\": \"s2\"") != std::string::npos);
  CHECK(js.find("\"torsion\": true") != std::string::npos);
}

TEST_CASE("general boundary skeletons") {
  CHECK_THROWS_AS((void)general_boundary_skeletons(0), std::invalid_argument);
  const auto sk = general_boundary_skeletons(2);
  REQUIRE(sk.size() == 2);
  CHECK(sk[0].stratum == Parabolic::Klingen);
  CHECK(sk[0].weylClass == "s1");
  CHECK(sk[0].leviDegree == 2);
  CHECK(sk[0].unitExteriorPower == 0);
  CHECK(sk[0].isogenyOnly);
  CHECK(sk[1].stratum == Parabolic::Siegel);
  CHECK(sk[1].weylClass == "s2");
}

TEST_CASE("cusp fibers") {
  CHECK(cusp_fiber(Parabolic::Borel, weyl::by_name("id"), Parabolic::Borel, 3,
                   1, LevelType::Gamma0, {}) == 1);
  CHECK(cusp_fiber(Parabolic::Borel, weyl::by_name("id"), Parabolic::Borel, 3,
                   1, LevelType::Gamma1, {}) == 4);
  CHECK(cusp_fiber(Parabolic::Siegel, weyl::by_name("id"), Parabolic::Borel, 3,
                   1, LevelType::Gamma1, {}) == 2);
  CHECK(cusp_fiber(Parabolic::Borel, weyl::by_name("id"), Parabolic::Borel, 3,
                   1, LevelType::Gamma1, {{2, 1}, {1, 2}}) == 1);
  CHECK(cusp_fiber(Parabolic::Borel, weyl::by_name("id"), Parabolic::Siegel, 3,
                   1, LevelType::Gamma1, {}) == 2);
  CHECK(cusp_fiber(Parabolic::Borel, weyl::by_name("id"), Parabolic::Klingen,
                   3, 2, LevelType::Gamma1, {}) == 6);
}

TEST_CASE("iwasawa-variable count") {
  CHECK(hida_rank(1, 0, {{1, Parabolic::Borel}}) == 3);
  for (int d = 1; d <= 5; ++d) {
    std::vector<PlaceDatum> pl((size_t)d, {1, Parabolic::Borel});
    CHECK(hida_rank(d, 1, pl) == 2 * d + 2);
    CHECK(hida_rank(d, 0, pl) == 2 * d + 1);
  }
  CHECK(hida_rank(2, 0, {{2, Parabolic::Siegel}}) == 3);
  CHECK_THROWS_AS((void)hida_rank(2, 0, {{1, Parabolic::Borel}}),
                  InconsistentDegrees);
}

TEST_CASE("eisenstein contribution filter") {
  const auto f = franke_contribution_filter(Parabolic::Siegel, {{5, 3}}, 10);
  CHECK(f.projection.first == Q(4));
  CHECK(f.projection.second == Q(4));
  REQUIRE(f.admissible.size() == 2);
  CHECK(f.admissible[0].degree == 3);
  CHECK(f.admissible[1].degree == 4);
  CHECK(weyl::name(f.admissible[0].components[0]) == "s2s1");
  CHECK(weyl::name(f.admissible[1].components[0]) == "-s2");
  const auto g = franke_contribution_filter(Parabolic::Klingen, {{5, 3}}, 10);
  CHECK(g.projection.first == Q(5));
  CHECK(g.projection.second == Q(0));
  REQUIRE(g.admissible.size() == 2);
  CHECK(weyl::name(g.admissible[0].components[0]) == "s1s2");
  const auto h = franke_contribution_filter(Parabolic::Borel, {{5, 3}}, 10);
  CHECK(h.projection.first == Q(5));
  CHECK(h.projection.second == Q(3));
  REQUIRE(h.admissible.size() == 1);
  CHECK(h.admissible[0].degree == 4);
  CHECK(franke_contribution_filter(Parabolic::Borel, {{5, 3}}, 3)
            .admissible.empty());
  const auto f2 =
      franke_contribution_filter(Parabolic::Siegel, {{5, 3}, {7, 4}}, 6);
  REQUIRE(f2.admissible.size() == 1);
  CHECK(f2.admissible[0].degree == 6);
  CHECK_THROWS_AS(
      (void)franke_contribution_filter(Parabolic::Siegel, {{5, 5}}, 10),
      NonRegular);
}

}  // TEST_SUITE
