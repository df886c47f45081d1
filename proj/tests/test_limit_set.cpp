#include <doctest.h>

#include <numbers>

#include "kleinian/group_families.hpp"
#include "kleinian/limit_set.hpp"
#include "oracles.hpp"

using namespace kleinian;

namespace {

ProjMap diag(Complex a, Complex b, Complex c) {
  Mat3 m = Mat3::Zero();
  m.diagonal() << a, b, c;
  return ProjMap::from_matrix(m);
}

bool contains(const std::vector<ProjLine>& set, const ProjLine& l, double tol = 1e-6) {
  for (const auto& x : set)
    if (chordal_distance(x, l) <= tol) return true;
  return false;
}

// Largest general-position subset by exhaustive search over all subsets.
int mu_brute(const std::vector<CVec3>& lines) {
  const int n = static_cast<int>(lines.size());
  int best = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<CVec3> subset;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) subset.push_back(lines[static_cast<std::size_t>(i)]);
    if (static_cast<int>(subset.size()) > best && oracle::general_position_brute(subset)) best = static_cast<int>(subset.size());
  }
  return best;
}

}  // namespace

TEST_SUITE("limit_set") {
  TEST_CASE("cyclic strongly loxodromic group") {
    const std::vector<ProjMap> g{diag(1.0 / 3.0, 1.0, 3.0)};
    const LimitSetApprox a = accumulate(g, 4);
    CHECK(a.lines.size() == 2);
    CHECK(a.isolated_points.empty());
    CHECK(a.lambda == LambdaEstimate::exact(2));
    CHECK(a.mu == 2);
    CHECK(a.diagnostics.empty());
  }

  TEST_CASE("finite group has empty limit set") {
    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    const std::vector<ProjMap> g{diag(1.0, w, w * w)};
    const LimitSetApprox a = accumulate(g, 5);
    CHECK(a.lines.empty());
    CHECK(a.isolated_points.empty());
    CHECK(a.ball_size == 3);
  }

  TEST_CASE("screw line-point group") {
    const LimitSetApprox a = accumulate(screw_line_point_group(2.0, 0.2), 4);
    REQUIRE(a.lines.size() == 1);
    REQUIRE(a.isolated_points.size() == 1);
    CHECK(chordal_distance(a.lines[0].line, ProjLine(1, 0, 0)) < 1e-9);
    CHECK(chordal_distance(a.isolated_points[0], ProjPoint(1, 0, 0)) < 1e-9);
    CHECK(incidence(a.lines[0].line, a.isolated_points[0]) > 1e-6);
  }

  TEST_CASE("hyperbolic toral group at radius 5") {
    const LimitSetApprox a = accumulate(hyperbolic_toral({{{2, 1}, {1, 1}}}), 5);
    CHECK(a.lines.size() >= 9);
    REQUIRE(a.vertices.size() == 2);
    CHECK(contains(a.plain_lines(), line_through(a.vertices[0].point, a.vertices[1].point)));
    CHECK(a.mu == 4);
    CHECK(a.lambda.at_least);
  }

  TEST_CASE("count_mu examples") {
    const std::vector<ProjLine> axes{ProjLine(1, 0, 0), ProjLine(0, 1, 0), ProjLine(0, 0, 1)};
    CHECK(count_mu(axes) == 3);
    std::vector<ProjLine> pencil;
    for (int k = 0; k < 10; ++k) pencil.emplace_back(0.0, 1.0, Complex(k, 0.5 * k));
    CHECK(count_mu(pencil) == 2);
    CHECK(find_vertices(pencil).size() == 1);
    CHECK(find_vertices(pencil)[0].lines == 10);
    CHECK(count_mu({}) == 0);
  }

  TEST_CASE("count_mu agrees with exhaustive search") {
    oracle::Rng rng(51);
    for (int t = 0; t < 150; ++t) {
      const int n = rng.integer(1, 10);
      std::vector<CVec3> raw;
      const int pencils = rng.integer(0, 2);
      std::vector<CVec3> centers;
      for (int p = 0; p < pencils; ++p) centers.push_back(rng.vec());
      for (int i = 0; i < n; ++i) {
        const int which = rng.integer(-1, pencils - 1);
        raw.push_back(which < 0 ? rng.vec() : oracle::cross(centers[static_cast<std::size_t>(which)], rng.vec()));
      }
      std::vector<ProjLine> lines;
      for (const auto& v : raw) lines.emplace_back(v);
      CHECK(count_mu(lines) == std::min(mu_brute(raw), kMuInfinity));
    }
  }

  TEST_CASE("count_mu reduction on large pencil arrangements") {
    // Two pencils through p and q plus the line pq: the toral configuration.
    const ProjPoint p(1, 0, 0), q(0, 1, 0);
    std::vector<ProjLine> lines{line_through(p, q)};
    for (int k = 1; k <= 40; ++k) {
      lines.push_back(line_through(p, ProjPoint(0, std::polar(1.0, 0.1 * k), 1)));
      lines.push_back(line_through(q, ProjPoint(std::polar(2.0, 0.1 * k), 0, 1)));
    }
    CHECK(count_mu(lines) == 4);
    // A cone plus a line through none of the vertices.
    std::vector<ProjLine> cone{ProjLine(1, 0, 0)};
    for (int k = 1; k <= 30; ++k) cone.push_back(line_through(p, ProjPoint(0, std::polar(1.0, 0.2 * k), 1)));
    CHECK(count_mu(cone) == 3);
    // Lines in general position saturate the infinity class.
    oracle::Rng rng(52);
    std::vector<ProjLine> generic;
    for (int k = 0; k < 20; ++k) generic.emplace_back(rng.vec());
    CHECK(count_mu(generic) == kMuInfinity);
  }

  TEST_CASE("theorem gates") {
    LimitSetApprox a;
    a.lines = {{ProjLine(0, 1, 0), LineSource::PerElement},
               {ProjLine(0, 0, 1), LineSource::PerElement},
               {ProjLine(0, 1, -1), LineSource::PerElement}};
    a.lambda = LambdaEstimate::exact(3);
    a.mu = 2;
    CHECK_FALSE(theorem_gates(a).empty());  // three concurrent lines
    a.lines[2].line = ProjLine(1, 0, 0);
    a.mu = 3;
    CHECK(theorem_gates(a).empty());
    a.isolated_points = {ProjPoint(1, 1, 1)};
    CHECK_FALSE(theorem_gates(a).empty());  // a point requires a single line
    a.mu = 7;
    CHECK_FALSE(theorem_gates(a).empty());
  }

  TEST_CASE("classify_group verdicts") {
    const ElementaryVerdict d = classify_group(diagonal_group(2.0, 3.0), 6);
    CHECK(d.kind == ElementaryVerdict::Kind::FirstKind);
    CHECK(d.value == 3);
    const ElementaryVerdict i = classify_group(inoue_group({{1.0, 0.0}, {0.0, 1.0}}, 0.0, 0.0, 1.0), 6);
    CHECK(i.kind == ElementaryVerdict::Kind::SecondKind);
    CHECK(i.value == 2);
    CHECK(i.lines_high > i.lines_low);
    const ElementaryVerdict s = classify_group(suspension(example_schottky_pair(), {}, 2.0), 6);
    CHECK(s.kind == ElementaryVerdict::Kind::SecondKind);
    CHECK(s.value == 3);
  }

  TEST_CASE("accumulate is conjugation equivariant") {
    oracle::Rng rng(53);
    for (const GroupSpec& spec : {diagonal_group(2.0, 3.0), screw_line_point_group(2.0, 0.2)}) {
      const LimitSetApprox base = accumulate(spec, 4);
      for (int t = 0; t < 10; ++t) {
        const ProjMap h = ProjMap::from_matrix(rng.well_conditioned(10.0));
        const LimitSetApprox moved = accumulate(conjugate(spec, h), 4);
        REQUIRE(moved.lines.size() == base.lines.size());
        REQUIRE(moved.isolated_points.size() == base.isolated_points.size());
        for (const auto& l : base.lines) CHECK(contains(moved.plain_lines(), h.apply(l.line)));
        for (std::size_t k = 0; k < base.isolated_points.size(); ++k)
          CHECK(chordal_distance(moved.isolated_points[k], h.apply(base.isolated_points[k])) < 1e-6);
      }
    }
  }

  TEST_CASE("control projection") {
    const GroupSpec s = suspension(example_schottky_pair(), {}, 2.0);
    const ProjPoint p(1, 0, 0);
    const ProjLine horizon = line_through(ProjPoint(0, 1, 0), ProjPoint(0, 0, 1));
    const auto pi = control_projection(s, p, horizon);
    REQUIRE(pi.size() == 3);
    CHECK(classify_mobius(pi[0]) == MobiusKind::Identity);
    const auto sigma = example_schottky_pair();
    for (std::size_t k = 0; k < sigma.size(); ++k)
      CHECK(std::abs(pi[k + 1].trace_squared() - sigma[k].trace_squared()) < 1e-7);
    for (std::size_t a = 0; a < s.generators.size(); ++a)
      for (std::size_t b = 0; b < s.generators.size(); ++b) {
        const Mobius lhs = control_map(s.generators[a] * s.generators[b], p, horizon);
        const Mobius rhs = pi[a] * pi[b];
        CHECK((lhs.canonical() - rhs.canonical()).cwiseAbs().maxCoeff() < 1e-7);
      }

    const GroupSpec d = dual_torus({{1.0, 0.0}, {0.0, 1.0}});
    for (const auto& m : control_projection(d, p, horizon)) {
      const MobiusKind k = classify_mobius(m);
      CHECK((k == MobiusKind::Parabolic || k == MobiusKind::Identity));
    }
    try {
      control_projection(s, ProjPoint(0, 1, 0), ProjLine(1, 0, 0));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotGloballyFixed);
    }
    try {
      control_projection(s, p, ProjLine(0, 1, 0));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::PointOnHorizon);
    }
  }

  TEST_CASE("common fixed points") {
    const auto s = common_fixed_points(suspension(example_schottky_pair(), {}, 2.0));
    REQUIRE(s.size() == 1);
    CHECK(chordal_distance(s[0], ProjPoint(1, 0, 0)) < 1e-9);
    const GroupSpec d = diagonal_group(2.0, 3.0);
    const auto three = common_fixed_points(d);
    CHECK(three.size() == 3);
    const GroupSpec t = hyperbolic_toral({{{2, 1}, {1, 1}}});
    for (const auto& x : common_fixed_points(t))
      for (const auto& g : t.generators) CHECK(chordal_distance(g.apply(x), x) < 1e-8);
  }

  TEST_CASE("myrberg approximation contains accumulate output") {
    const std::vector<GroupSpec> specs{diagonal_group(2.0, 3.0), screw_line_point_group(2.0, 0.2),
                                       torus_group({{1.0, 0.0}, {0.0, 1.0}}),
                                       inoue_group({{1.0, 0.0}, {0.0, 1.0}}, 0.0, 0.0, 1.0)};
    for (const auto& s : specs) {
      const LimitSetApprox a = accumulate(s, 4);
      const MyrbergApprox m = myrberg_approx(s, 4);
      CHECK(containment_gap(a, m) <= 1e-6);
    }
    const MyrbergApprox screw = myrberg_approx(screw_line_point_group(2.0, 0.2), 4);
    CHECK(screw.lines.size() == 1);
    CHECK(screw.points.size() == 1);
    CHECK(myrberg_approx(torus_group({{1.0, 0.0}, {0.0, 1.0}}), 4).lines.size() == 1);
  }

  TEST_CASE("orbit oracle") {
    const GroupSpec d = diagonal_group(2.0, 3.0);
    const auto c1 = orbit_oracle(d, 5, 50, 7);
    const auto c2 = orbit_oracle(d, 5, 50, 7);
    REQUIRE(c1.size() == c2.size());
    for (std::size_t i = 0; i < c1.size(); ++i) CHECK(c1[i] == c2[i]);
    const OracleCheck check = orbit_oracle_check(c1, accumulate(d, 5));
    CHECK(check.clusters > 0);
    CHECK(check.passed);

    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    GroupSpec finite;
    finite.name = "custom";
    finite.generators = {diag(1.0, w, w * w)};
    const auto cloud = orbit_oracle(finite, 6, 20, 1);
    CHECK(cloud.size() <= 60);
    CHECK(accumulate(finite, 5).lines.empty());

    const double d0 = distance_to_geometry(ProjPoint(1, 0, 0), std::vector<ProjLine>{ProjLine(1, 0, 0)}, {});
    CHECK(d0 == doctest::Approx(1.0));
  }
}
