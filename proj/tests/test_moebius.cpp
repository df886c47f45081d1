#include <doctest.h>

#include "kleinian/moebius.hpp"
#include "oracles.hpp"

using namespace kleinian;

namespace {

Mobius mob(Complex a, Complex b, Complex c, Complex d) {
  Mat2 m;
  m << a, b, c, d;
  return Mobius::from_matrix(m);
}

}  // namespace

TEST_SUITE("moebius") {
  TEST_CASE("classification by trace") {
    CHECK(classify_mobius(Mobius()) == MobiusKind::Identity);
    CHECK(classify_mobius(mob(1, 1, 0, 1)) == MobiusKind::Parabolic);
    CHECK(classify_mobius(mob(2, 0, 0, 0.5)) == MobiusKind::Loxodromic);
    CHECK(classify_mobius(mob(std::polar(1.0, 0.3), 0, 0, std::polar(1.0, -0.3))) == MobiusKind::Elliptic);
    CHECK(classify_mobius(mob(Complex(0, 2), 0, 0, Complex(0, -0.5))) == MobiusKind::Loxodromic);
  }

  TEST_CASE("classification is conjugation invariant") {
    oracle::Rng rng(11);
    for (int t = 0; t < 300; ++t) {
      Mat2 c;
      c << rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian();
      const Mobius h = Mobius::from_matrix(c);
      const Mobius lox = mob(2.5, 0, 0, 0.4), par = mob(1, 1, 0, 1);
      CHECK(classify_mobius(h * lox * h.inverse()) == MobiusKind::Loxodromic);
      CHECK(classify_mobius(h * par * h.inverse()) == MobiusKind::Parabolic);
    }
  }

  TEST_CASE("fixed points") {
    const auto lox = fixed_points(mob(3, 0, 0, 1.0 / 3.0));
    REQUIRE(lox.size() == 2);
    CHECK(chordal_distance(lox[0], P1Point(1, 0)) < 1e-12);  // attracting
    CHECK(chordal_distance(lox[1], P1Point(0, 1)) < 1e-12);
    const auto par = fixed_points(mob(1, 1, 0, 1));
    REQUIRE(par.size() == 1);
    CHECK(chordal_distance(par[0], P1Point(1, 0)) < 1e-12);
    CHECK_THROWS_AS(fixed_points(Mobius()), Error);
  }

  TEST_CASE("fixed points are fixed") {
    oracle::Rng rng(12);
    for (int t = 0; t < 300; ++t) {
      Mat2 m;
      m << rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian();
      const Mobius g = Mobius::from_matrix(m);
      for (const auto& p : fixed_points(g)) CHECK(chordal_distance(g.apply(p), p) < 1e-8);
    }
  }

  TEST_CASE("canonical form ignores the sign of the lift") {
    const Mobius a = mob(2, 1, 1, 1);
    const Mobius b = mob(-2, -1, -1, -1);
    CHECK((a.canonical() - b.canonical()).cwiseAbs().maxCoeff() < 1e-15);
  }

  TEST_CASE("cyclic groups are elementary") {
    const std::vector<Mobius> one{mob(2, 0, 0, 0.5)};
    const auto r = is_elementary(one, 6);
    CHECK(r.elementary);
    CHECK(r.points == 2);
    const std::vector<Mobius> par{mob(1, 1, 0, 1), mob(1, Complex(0, 1), 0, 1)};
    CHECK(is_elementary(par, 5).elementary);
  }

  TEST_CASE("the Schottky pair is non-elementary") {
    const auto sigma = example_schottky_pair();
    const auto r = is_elementary(sigma, 4);
    CHECK_FALSE(r.elementary);
    CHECK(r.points > 2);
    CHECK(limit_points(sigma, 3).size() > 10);
  }
}
