#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace gm;
using gmtest::load_fixture;

TEST_CASE("rational basics") {
  CHECK(Rational(6, -4).to_string() == "-3/2");
  CHECK(Rational(8, 4).to_string() == "2");
  CHECK(Rational(-3, -6).to_string() == "1/2");
  CHECK(Rational(0, 5).is_zero());
  CHECK(parse_rational("-10/4") == Rational(-5, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(Rational(1, 0), Error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), Error);
  CHECK_THROWS_AS(parse_rational("1/x"), Error);
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK((Rational(1, 6) + Rational(1, 3)) == Rational(1, 2));
  CHECK(Rational(-2, 3).abs() == Rational(2, 3));
}

TEST_CASE("slopes") {
  CHECK(Slope::normalized(-2, 3) == Slope{2, -3});
  CHECK(Slope::normalized(0, -1) == Slope{0, 1});
  CHECK(Slope::normalized(0, -1).is_fiber());
  CHECK_THROWS_AS(Slope::normalized(0, 0), Error);
  CHECK(Slope::normalized(-2, 4) == Slope{1, -2});
}

TEST_CASE("adjacent fiber slopes") {
  GluingMatrix a{1, 1, 1, 0};
  CHECK(adjacent_fiber_slope(a, Side::source) == Slope{1, -1});
  CHECK(adjacent_fiber_slope(a, Side::target) == Slope{1, 0});
  GluingMatrix u{1, 2, 0, -1};
  CHECK(adjacent_fiber_slope(u, Side::source) == Slope{2, -1});
  CHECK(adjacent_fiber_slope(u, Side::target) == Slope{2, -1});
  CHECK(adjacent_fiber_slope(GluingMatrix::swap(), Side::source) == Slope{1, 0});
}

TEST_CASE("slopes agree with the linear-solve oracle") {
  for (const auto& a : gmtest::gluing_matrices(4))
    for (Side side : {Side::source, Side::target}) {
      auto [p, q] = gmtest::oracle_far_fiber(a, side);
      CHECK(adjacent_fiber_slope(a, side) == Slope{p, q});
    }
}

TEST_CASE("canonical filling slopes of the worked manifold") {
  auto m = load_fixture("worked.gm");
  CHECK(canonical_filling_slopes(m, "P1") == std::map<int, Slope>{{0, {1, -1}}});
  CHECK(canonical_filling_slopes(m, "P2") == std::map<int, Slope>{{0, {1, 0}}});
  auto loop = load_fixture("selfloop.gm");
  CHECK(canonical_filling_slopes(loop, "P") == std::map<int, Slope>{{0, {1, -1}}, {1, {1, 0}}});
}

TEST_CASE("euler number of a filled piece") {
  SeifertPiece p{"P", 0, 1, {{2, 1}, {3, 2}}};
  CHECK(euler_number_filled(p, {{6, -11}}) == Rational(2, 3));
  CHECK_THROWS_AS(euler_number_filled(p, {}), Error);
  CHECK_THROWS_AS(euler_number_filled(p, {{0, 1}}), Error);
}

TEST_CASE("orbifold euler characteristic") {
  CHECK(orbifold_euler_characteristic(2, {}) == Rational(-2));
  CHECK(orbifold_euler_characteristic(0, {{2, 1}, {3, 1}, {7, 1}}) == Rational(-1, 42));
  CHECK(orbifold_euler_characteristic(0, {{1, 5}, {2, 1}}) == Rational(3, 2));
}

TEST_CASE("sv of closed Seifert manifolds") {
  auto g2 = make_closed_seifert(2, {{2, 3}});
  CHECK(g2.euler_number == Rational(-3, 2));
  CHECK(g2.chi_orb == Rational(-5, 2));
  CHECK(sv_closed(make_closed_seifert(2, {{2, 1}, {1, 1}})) == Rational(25, 6));
  ClosedSeifert forced{2, {}, Rational(-3, 2), Rational(-2), Rational(0)};
  CHECK(sv_closed(forced) == Rational(8, 3));
  ClosedSeifert torus_base{1, {}, Rational(-3, 2), Rational(0), Rational(0)};
  CHECK(sv_closed(torus_base) == Rational(0));
  CHECK(make_closed_seifert(2, {{1, -1}}).sv == Rational(4));
  CHECK(make_closed_seifert(2, {{1, 0}}).sv == Rational(0));
  CHECK(make_closed_seifert(0, {{2, 1}, {2, 1}}).sv == Rational(0));
  auto sphere = make_closed_seifert(0, {{1, 0}, {1, 0}, {1, 0}});
  CHECK(sphere.euler_number == Rational(0));
  CHECK(sphere.chi_orb == Rational(2));
  CHECK(sphere.sv == Rational(0));
  ClosedSeifert torus_e5{1, {}, Rational(5), Rational(0), Rational(0)};
  CHECK(sv_closed(torus_e5) == Rational(0));
}

TEST_CASE("worked manifold hats") {
  auto m = load_fixture("worked.gm");
  auto p1 = hat_piece(m, "P1");
  CHECK(p1.euler_number == Rational(1));
  CHECK(p1.chi_orb == Rational(-2));
  CHECK(p1.sv == Rational(4));
  auto p2 = hat_piece(m, "P2");
  CHECK(p2.euler_number == Rational(0));
  CHECK(p2.sv == Rational(0));
  CHECK(abs_euler(m) == Rational(1));
  CHECK(abs_sv(m) == Rational(4));
  auto swap = load_fixture("swap.gm");
  CHECK(abs_euler(swap) == Rational(0));
  CHECK(abs_sv(swap) == Rational(0));
}

TEST_CASE("hat invariants agree with the definition oracle") {
  std::vector<GraphManifold> cases;
  for (const auto& name : gmtest::valid_fixtures()) cases.push_back(load_fixture(name));
  std::mt19937_64 rng(99);
  gmtest::ManifoldShape shape;
  for (int i = 0; i < 150; ++i) cases.push_back(gmtest::random_manifold(rng, shape));
  for (const auto& m : cases) {
    gmtest::Frac total_e;
    gmtest::Frac total_sv;
    for (const auto& p : m.pieces()) {
      auto want = gmtest::oracle_hat_piece(m, p.id);
      auto got = hat_piece(m, p.id);
      CHECK(got.euler_number == want.euler.rational());
      CHECK(got.chi_orb == want.chi.rational());
      CHECK(got.sv == want.sv.rational());
      total_e = total_e + want.euler.abs();
      total_sv = total_sv + want.sv;
    }
    CHECK(abs_euler(m) == total_e.rational());
    CHECK(abs_sv(m) == total_sv.rational());
  }
}

TEST_CASE("property: euler number is invariant under zero-sum section changes") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 200; ++trial) {
    int k = static_cast<int>(gmtest::uniform(rng, 1, 5));
    SeifertPiece p{"P", gmtest::uniform(rng, 0, 3), k, gmtest::random_fibers(rng, 3)};
    std::vector<Slope> slopes;
    for (int i = 0; i < k; ++i) {
      Int a = gmtest::uniform(rng, 1, 9);
      Int b = 0;
      do b = gmtest::uniform(rng, -20, 20);
      while (std::gcd(a, b) != 1);
      slopes.push_back({a, b});
    }
    std::vector<Int> twist(k);
    Int sum = 0;
    for (int i = 0; i + 1 < k; ++i) sum += twist[i] = gmtest::uniform(rng, -6, 6);
    twist[k - 1] = -sum;
    std::vector<Slope> moved;
    for (int i = 0; i < k; ++i) moved.push_back({slopes[i].p, slopes[i].q + twist[i] * slopes[i].p});
    CHECK(euler_number_filled(p, moved) == euler_number_filled(p, slopes));
  }
}
