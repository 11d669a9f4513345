#include "doctest.h"
#include "gsp4/arith.hpp"
#include "gsp4/errors.hpp"
#include "gsp4/mat.hpp"
#include "gsp4/roots.hpp"
#include "gsp4/symplectic.hpp"

using namespace gsp4;

TEST_SUITE("core") {

TEST_CASE("p-adic valuation and unit part") {
  CHECK(valp(Z(0), 3) == VAL_INF);
  CHECK(valp(Z(9), 3) == 2);
  CHECK(valp(Z(-18), 3) == 2);
  CHECK(valp(Q(1, 3), 3) == -1);
  Q x(10, 27);
  x.canonicalize();
  CHECK(valp(x, 3) == -3);
  CHECK(unit_part(Z(18), 3) == 2);
  CHECK(p_integral(Q(5, 7), 3));
  CHECK(!p_integral(Q(5, 3), 3));
  CHECK(ipow(3, 7) == 2187);
  CHECK(ipow(5, 0) == 1);
}

TEST_CASE("modular helpers") {
  CHECK(mod_reduce(Z(-1), 9) == 8);
  CHECK(mod_reduce(-1, 9) == 8);
  CHECK(mul_mod(5, 7, 9) == 8);
  CHECK(pow_mod(2, 10, 1000) == 24);
  CHECK(inv_mod(2, 9) == 5);
  CHECK(mul_mod(inv_mod(7, 81), 7, 81) == 1);
  Q half(1, 2);
  CHECK(mod_reduce_q(half, 9, 3) == 5);  // 1/2 = 5 mod 9
}

TEST_CASE("rational matrix algebra") {
  const QM4 I = QM4::ident();
  const QM4 d = QM4::diag(1, 2, 3, 4);
  CHECK(d * d.inverse() == I);
  CHECK(d.det() == 24);
  CHECK((d + d - d) == d);
  CHECK(d.scaled(Q(2)).at(3, 3) == 8);
  CHECK(d.transpose() == d);
  CHECK(I.is_upper_triangular());
  CHECK(I.is_lower_triangular());
  CHECK_THROWS_AS((void)QM4::zero().inverse(), std::domain_error);
}

TEST_CASE("modular matrices round trip") {
  ZM4 a = ZM4::ident();
  a.at(0, 1) = 5;
  const ZM4 sq = zm4_mul(a, a, 9);
  CHECK(sq.at(0, 1) == 1);  // 10 mod 9
  const QM4 q = qm4_from(a);
  CHECK(zm4_from(q, 9, 3) == a);
  CHECK(a.key() != ZM4::ident().key());
  ZM2 g;
  g.at(0, 0) = 2;
  g.at(1, 1) = 5;
  CHECK(zm2_det(g, 9) == 1);
  CHECK(zm2_mul(zm2_inv(g, 9), g, 9) == ZM2::ident());
}

TEST_CASE("similitude group basics") {
  const QM4 J = core::form_matrix();
  CHECK(J.at(0, 2) == 1);
  CHECK(J.at(1, 3) == 1);
  CHECK(J.at(2, 0) == -1);
  CHECK(J.at(3, 1) == -1);
  const QM4 t = core::torus(Q(2), Q(3), Q(6));
  CHECK(core::similitude_multiplier(t) == 6);
  CHECK(t.at(2, 2) == 3);  // x/t1
  CHECK(t.at(3, 3) == 2);  // x/t2
  CHECK_THROWS_AS((void)core::similitude_multiplier(QM4::diag(1, 1, 1, 2)),
                  NonSimilitude);
  // root subgroups are similitude-1 and abelian per root
  for (const Root& r : positive_roots()) {
    const QM4 u = core::u_root(r, Q(5));
    CHECK(core::similitude_multiplier(u) == 1);
    CHECK(core::u_root(r, Q(2)) * core::u_root(r, Q(3)) == u);
  }
}

TEST_CASE("Levi embeddings") {
  const QM4 m = core::mu_siegel({1, 1, 0, 1}, Q(4));
  CHECK(core::similitude_multiplier(m) == 4);
  const QM4 k = core::mu_klingen(Q(2), {1, 2, 3, 4});
  CHECK(core::similitude_multiplier(k) == Q(-2));  // det g = -2
}

TEST_CASE("unipotent coordinates round trip") {
  const std::array<Q, 4> c{Q(1, 2), Q(-3), Q(7), Q(2, 5)};
  CHECK(core::upper_coords(core::upper_from_coords(c)) == c);
  CHECK(core::lower_coords(core::lower_from_coords(c)) == c);
  const QM4 u = core::upper_from_coords(c);
  CHECK(core::similitude_multiplier(u) == 1);
  CHECK(u.at(0, 1) == c[0]);
  CHECK(u.at(3, 2) == -c[0]);  // symplectic pairing couples the two blocks
  // mod variant
  const std::array<long long, 4> cm{1, 2, 3, 4};
  CHECK(core::upper_coords_mod(core::upper_from_coords_mod(cm, 81), 81) == cm);
  CHECK(core::lower_coords_mod(core::lower_from_coords_mod(cm, 81), 81) == cm);
}

TEST_CASE("iwahori factorization") {
  // generic element: lower * levi * upper for the Borel
  const QM4 g = core::lower_from_coords({Q(3), Q(6), Q(9), Q(3)}) *
                core::torus(Q(2), Q(5), Q(7)) *
                core::upper_from_coords({Q(1), Q(2), Q(3), Q(4)});
  const auto f = core::iwahori_factorize(g, Parabolic::Borel);
  CHECK(f.uminus * f.levi * f.uplus == g);
  CHECK(f.levi.is_upper_triangular());
  CHECK(f.levi.is_lower_triangular());
  CHECK(core::lower_coords(f.uminus)[0] == 3);
  // pivot obstruction
  QM4 s = QM4::zero();
  s.at(0, 1) = 1;
  s.at(1, 0) = 1;
  s.at(2, 3) = 1;
  s.at(3, 2) = 1;
  CHECK_THROWS_AS((void)core::iwahori_factorize(s, Parabolic::Borel),
                  SingularBlock);
}

TEST_CASE("parahoric membership patterns") {
  ZM4 g = ZM4::ident();
  CHECK(core::parahoric_membership(g, Parabolic::Borel, 3, 2, 1, true));
  g.at(1, 0) = 3;  // p * (below-diagonal) stays Iwahori
  CHECK(core::parahoric_membership(g, Parabolic::Borel, 3, 2, 1, false));
  g.at(1, 0) = 1;
  CHECK(!core::parahoric_membership(g, Parabolic::Borel, 3, 2, 1, false));
  // Siegel pattern ignores the Levi GL2 block
  CHECK(core::parahoric_membership(g, Parabolic::Siegel, 3, 2, 1, false));
  CHECK_THROWS_AS((void)core::parahoric_membership(g, Parabolic::Borel, 3, 1,
                                                   2, false),
                  LevelExceedsPrecision);
}

TEST_CASE("roots and pairings") {
  CHECK(parabolic_name(Parabolic::Siegel) == "P");
  CHECK(parabolic_name(Parabolic::Klingen) == "P*");
  CHECK(parabolic_from_name("P*") == Parabolic::Klingen);
  CHECK_THROWS_AS((void)parabolic_from_name("X"), std::invalid_argument);
  CHECK(positive_roots().size() == 4);
  CHECK(nilradical_roots(Parabolic::Borel).size() == 4);
  CHECK(nilradical_roots(Parabolic::Siegel).size() == 3);
  CHECK(nilradical_roots(Parabolic::Klingen).size() == 3);
  // cocharacter pairings on tau(t1,t2;x) with (a1,a2,b) exponents
  const TorusPowers d{0, 1, 3};
  CHECK(d.k(R_A1) == 1);
  CHECK(d.k(R_A2) == 1);
  CHECK(d.k(R_A12) == 2);
  CHECK(d.k(R_A112) == 3);
  const TorusPowers e = d * d;
  CHECK(e.a1 == 0);
  CHECK(e.a2 == 2);
  CHECK(e.b == 6);
  WeightChar chi{1, 1, 2};
  CHECK(chi.parity_ok());
  WeightChar bad{1, 0, 0};
  CHECK(!bad.parity_ok());
}

}  // TEST_SUITE
