#include "kleinian/element_classify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kleinian {

namespace {

// Two roots form a cluster when closer than kClusterRel times the larger of
// their moduli plus kPairFloor times the norm of the lift. Three roots merge
// when all lie within the wider triple floor, which covers the cube-root
// splitting of a perturbed 3-block.
constexpr double kClusterRel = 1e-4;
constexpr double kPairFloor = 1e-7;
constexpr double kTripleFloor = 2e-5;
// Comparisons this close to their threshold set near_boundary.
constexpr double kBoundaryBand = 1e-6;

struct Cubic {
  Complex a2, a1, a0;  // x^3 + a2 x^2 + a1 x + a0

  Complex operator()(Complex x) const { return ((x + a2) * x + a1) * x + a0; }
  Complex derivative(Complex x) const { return (3.0 * x + 2.0 * a2) * x + a1; }
};

std::array<Complex, 3> cardano(const Cubic& c) {
  const Complex shift = -c.a2 / 3.0;
  const Complex p = c.a1 - c.a2 * c.a2 / 3.0;
  const Complex q = 2.0 * c.a2 * c.a2 * c.a2 / 27.0 - c.a2 * c.a1 / 3.0 + c.a0;
  const Complex disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  Complex u3 = -q / 2.0 + disc;
  const Complex alt = -q / 2.0 - disc;
  if (std::abs(alt) > std::abs(u3)) u3 = alt;
  std::array<Complex, 3> roots;
  if (std::abs(u3) == 0.0) {
    roots.fill(shift);
    return roots;
  }
  const Complex u = std::pow(u3, 1.0 / 3.0);
  const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  Complex w = 1.0;
  for (auto& r : roots) {
    const Complex uk = w * u;
    r = uk - p / (3.0 * uk) + shift;
    w *= omega;
  }
  return roots;
}

void polish(const Cubic& c, Complex& x) {
  for (int it = 0; it < 4; ++it) {
    const Complex d = c.derivative(x);
    if (std::abs(d) == 0.0) return;
    const Complex next = x - c(x) / d;
    if (!(std::abs(c(next)) < std::abs(c(x)))) return;
    x = next;
  }
}

bool unit(Complex z) { return std::abs(std::abs(z) - 1.0) < tol::kUnitModulus; }

ProjPoint eigenpoint(const Mat3& lift, Complex lambda) {
  return ProjPoint(CVec3(null_space(lift - lambda * Mat3::Identity(), 1).col(0)));
}

ProjLine span_line(const Eigen::MatrixXcd& basis) {
  const CVec3 a = basis.col(0);
  const CVec3 b = basis.col(1);
  return ProjLine(CVec3(a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0)));
}

void add_point(std::vector<ProjPoint>& out, const ProjPoint& p) {
  for (const auto& q : out)
    if (chordal_distance(p, q) <= tol::kDedup) return;
  out.push_back(p);
}

void add_line(std::vector<ProjLine>& out, const ProjLine& l) {
  for (const auto& m : out)
    if (chordal_distance(l, m) <= tol::kDedup) return;
  out.push_back(l);
}

}  // namespace

Eigen3 eigen3(const ProjMap& m) {
  const Mat3& a = m.lift();
  const Complex t = a.trace();
  const Complex c2 = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) + a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0) +
                     a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
  const Complex det = a.determinant();
  const Cubic cubic{-t, c2, -det};

  std::array<Complex, 3> roots = cardano(cubic);
  const double norm = a.norm();
  double scale = 0.0;
  for (const auto& r : roots) scale = std::max(scale, std::abs(r));
  // Group roots by proximity (single linkage on three items).
  std::array<int, 3> group{0, 1, 2};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(roots[i] - roots[j]) <
          kClusterRel * std::max(std::abs(roots[i]), std::abs(roots[j])) + kPairFloor * norm) {
        const int g = group[j];
        for (auto& x : group)
          if (x == g) x = group[i];
      }
  double spread = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) spread = std::max(spread, std::abs(roots[i] - roots[j]));
  if (spread < kClusterRel * scale + kTripleFloor * norm) group = {0, 0, 0};

  Eigen3 out;
  std::vector<int> seen;
  for (int i = 0; i < 3; ++i) {
    if (std::find(seen.begin(), seen.end(), group[i]) != seen.end()) continue;
    seen.push_back(group[i]);
    out.clusters.push_back({roots[i], static_cast<int>(std::count(group.begin(), group.end(), group[i])), 0});
  }
  if (out.clusters.size() == 1) {
    out.clusters[0].value = t / 3.0;
  } else if (out.clusters.size() == 2) {
    auto& dbl = out.clusters[0].algebraic == 2 ? out.clusters[0] : out.clusters[1];
    auto& sgl = out.clusters[0].algebraic == 2 ? out.clusters[1] : out.clusters[0];
    polish(cubic, sgl.value);
    dbl.value = (t - sgl.value) / 2.0;
  } else {
    for (auto& c : out.clusters) polish(cubic, c.value);
  }
  for (auto& c : out.clusters) {
    c.geometric = 3 - numerical_rank(a - c.value * Mat3::Identity());
    c.geometric = std::clamp(c.geometric, 1, c.algebraic);
  }

  std::size_t k = 0;
  for (const auto& c : out.clusters)
    for (int r = 0; r < c.algebraic; ++r) out.values[k++] = c.value;
  std::sort(out.values.begin(), out.values.end(), [](Complex x, Complex y) {
    if (std::abs(x) != std::abs(y)) return std::abs(x) < std::abs(y);
    return std::arg(x) < std::arg(y);
  });
  return out;
}

Eigen::MatrixXcd generalized_eigenspace(const Mat3& lift, Complex lambda, int power) {
  Mat3 n = Mat3::Identity();
  const Mat3 shifted = lift - lambda * Mat3::Identity();
  for (int i = 0; i < power; ++i) n = n * shifted;
  const int dim = 3 - numerical_rank(n);
  if (dim == 0) return Eigen::MatrixXcd(3, 0);
  return null_space(n, dim);
}

const char* to_string(ElementKind k) {
  switch (k) {
    case ElementKind::EllipticFiniteOrder: return "EllipticFiniteOrder";
    case ElementKind::EllipticInfiniteOrder: return "EllipticInfiniteOrder";
    case ElementKind::ParabolicUnipotentRank1: return "ParabolicUnipotentRank1";
    case ElementKind::ParabolicUnipotentRank2: return "ParabolicUnipotentRank2";
    case ElementKind::ElliptoParabolic: return "ElliptoParabolic";
    case ElementKind::ComplexHomothety: return "ComplexHomothety";
    case ElementKind::Screw: return "Screw";
    case ElementKind::Loxoparabolic: return "Loxoparabolic";
    case ElementKind::StronglyLoxodromic: return "StronglyLoxodromic";
  }
  return "?";
}

std::optional<ElementKind> element_kind_from_string(std::string_view s) {
  for (int i = 0; i <= static_cast<int>(ElementKind::StronglyLoxodromic); ++i) {
    const auto k = static_cast<ElementKind>(i);
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

bool is_loxodromic(ElementKind k) {
  return k == ElementKind::ComplexHomothety || k == ElementKind::Screw || k == ElementKind::Loxoparabolic ||
         k == ElementKind::StronglyLoxodromic;
}

bool is_parabolic(ElementKind k) {
  return k == ElementKind::ParabolicUnipotentRank1 || k == ElementKind::ParabolicUnipotentRank2 ||
         k == ElementKind::ElliptoParabolic;
}

std::optional<int> order_of(const ProjMap& m, int cutoff) {
  if (m.is_identity()) return 1;
  const Eigen3 e = eigen3(m);
  for (const auto& c : e.clusters)
    if (!unit(c.value) || c.geometric != c.algebraic) return std::nullopt;
  if (e.clusters.size() == 1) return 1;
  // Diagonalizable with unit eigenvalues: m^k = id iff all ratios are k-th roots of unity.
  std::vector<double> turns;
  for (std::size_t i = 1; i < e.clusters.size(); ++i)
    turns.push_back(std::arg(e.clusters[i].value / e.clusters[0].value) / (2.0 * std::numbers::pi));
  for (int k = 1; k <= cutoff; ++k) {
    bool all = true;
    for (double t : turns) {
      const double x = k * t;
      if (std::abs(x - std::round(x)) > 1e-7) {
        all = false;
        break;
      }
    }
    if (all) return k;
  }
  return std::nullopt;
}

ElementClass classify(const ProjMap& m, int order_cutoff) {
  ElementClass out;
  out.classified = true;
  const Mat3& lift = m.lift();
  const Eigen3 e = eigen3(m);
  out.eigenvalues = e.values;

  bool all_unit = true;
  bool diagonalizable = true;
  for (const auto& c : e.clusters) {
    const double dev = std::abs(std::abs(c.value) - 1.0);
    if (dev >= tol::kUnitModulus) all_unit = false;
    if (dev >= tol::kUnitModulus && dev < kBoundaryBand) out.near_boundary = true;
    if (c.geometric != c.algebraic) diagonalizable = false;
  }

  const auto& cl = e.clusters;
  const EigenCluster* dbl = nullptr;
  const EigenCluster* sgl = nullptr;
  if (cl.size() == 2) {
    dbl = cl[0].algebraic == 2 ? &cl[0] : &cl[1];
    sgl = cl[0].algebraic == 2 ? &cl[1] : &cl[0];
  }

  ElementLimitSet& ls = out.limit_set;
  if (all_unit && diagonalizable) {
    out.order = order_of(m, order_cutoff);
    out.kind = out.order ? ElementKind::EllipticFiniteOrder : ElementKind::EllipticInfiniteOrder;
    for (const auto& c : cl) {
      if (c.geometric == 1) {
        add_point(out.fixed_points, eigenpoint(lift, c.value));
      } else if (c.geometric == 2) {
        add_line(out.invariant_lines, span_line(null_space(lift - c.value * Mat3::Identity(), 2)));
      }
    }
    if (out.kind == ElementKind::EllipticFiniteOrder) {
      ls.is_empty = true;
    } else {
      ls.is_everything = true;
    }
  } else if (all_unit) {
    if (cl.size() == 1) {
      const Complex l = cl[0].value;
      if (cl[0].geometric == 2) {
        out.kind = ElementKind::ParabolicUnipotentRank1;
        const ProjLine fixed = span_line(null_space(lift - l * Mat3::Identity(), 2));
        add_line(out.invariant_lines, fixed);
        add_line(ls.lines, fixed);
      } else {
        out.kind = ElementKind::ParabolicUnipotentRank2;
        const ProjPoint p = eigenpoint(lift, l);
        const ProjLine inv = span_line(generalized_eigenspace(lift, l, 2));
        add_point(out.fixed_points, p);
        add_line(out.invariant_lines, inv);
        add_line(ls.lines, inv);
      }
    } else {
      out.kind = ElementKind::ElliptoParabolic;
      const ProjPoint p = eigenpoint(lift, dbl->value);
      const ProjPoint q = eigenpoint(lift, sgl->value);
      add_point(out.fixed_points, p);
      add_point(out.fixed_points, q);
      const ProjLine through = line_through(p, q);
      add_line(out.invariant_lines, through);
      add_line(out.invariant_lines, span_line(generalized_eigenspace(lift, dbl->value, 2)));
      add_line(ls.lines, through);
    }
  } else if (cl.size() == 2) {
    const ProjPoint q = eigenpoint(lift, sgl->value);
    add_point(out.fixed_points, q);
    if (dbl->geometric == 2) {
      out.kind = ElementKind::ComplexHomothety;
      const ProjLine plane = span_line(null_space(lift - dbl->value * Mat3::Identity(), 2));
      add_line(out.invariant_lines, plane);
      add_line(ls.lines, plane);
      ls.points.push_back(q);
    } else {
      out.kind = ElementKind::Loxoparabolic;
      const ProjPoint p = eigenpoint(lift, dbl->value);
      add_point(out.fixed_points, p);
      const ProjLine block = span_line(generalized_eigenspace(lift, dbl->value, 2));
      const ProjLine through = line_through(p, q);
      add_line(out.invariant_lines, block);
      add_line(out.invariant_lines, through);
      add_line(ls.lines, block);
      add_line(ls.lines, through);
    }
  } else {
    // Three distinct eigenvalues, sorted by modulus.
    std::vector<Complex> v{cl[0].value, cl[1].value, cl[2].value};
    std::sort(v.begin(), v.end(), [](Complex x, Complex y) { return std::abs(x) < std::abs(y); });
    std::array<ProjPoint, 3> pts{eigenpoint(lift, v[0]), eigenpoint(lift, v[1]), eigenpoint(lift, v[2])};
    for (const auto& p : pts) add_point(out.fixed_points, p);
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) add_line(out.invariant_lines, line_through(pts[i], pts[j]));

    auto rel_gap = [](Complex x, Complex y) {
      return std::abs(std::abs(x) - std::abs(y)) / std::max(std::abs(x), std::abs(y));
    };
    const double g01 = rel_gap(v[0], v[1]);
    const double g12 = rel_gap(v[1], v[2]);
    for (double g : {g01, g12})
      if (g >= tol::kUnitModulus && g < kBoundaryBand) out.near_boundary = true;
    if (g01 < tol::kUnitModulus || g12 < tol::kUnitModulus) {
      out.kind = ElementKind::Screw;
      // The pair of equal moduli spans the line; the remaining eigenvector is the point.
      const bool low_pair = g01 < tol::kUnitModulus;
      add_line(ls.lines, low_pair ? line_through(pts[0], pts[1]) : line_through(pts[1], pts[2]));
      ls.points.push_back(low_pair ? pts[2] : pts[0]);
    } else {
      out.kind = ElementKind::StronglyLoxodromic;
      add_line(ls.lines, line_through(pts[2], pts[1]));
      add_line(ls.lines, line_through(pts[1], pts[0]));
    }
  }
  return out;
}

ElementLimitSet element_limit_set(const ElementClass& c) {
  if (!c.classified) throw Error(ErrorCode::UnclassifiedElement, "element has not been classified");
  return c.limit_set;
}

}  // namespace kleinian
