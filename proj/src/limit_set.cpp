#include "kleinian/limit_set.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <tuple>
#include <unordered_map>

#include "kleinian/element_classify.hpp"
#include "kleinian/word_ball.hpp"

namespace kleinian {

namespace {

constexpr double kFixedTol = 1e-8;
constexpr std::size_t kAllPairsLimit = 400;
constexpr std::size_t kVertexSamples = 64;

bool fixes(const ProjMap& g, const ProjPoint& p) { return chordal_distance(g.apply(p), p) < kFixedTol; }

bool on_any(const ProjPoint& p, std::span<const ProjLine> lines, double tol = tol::kIncidence) {
  for (const auto& l : lines)
    if (incidence(l, p) < tol) return true;
  return false;
}

std::vector<ProjLine> plain(const std::vector<TaggedLine>& tagged) {
  std::vector<ProjLine> out;
  out.reserve(tagged.size());
  for (const auto& t : tagged) out.push_back(t.line);
  return out;
}

// Meets of line `i` with every later line (or all lines), grouped by point.
void meets_on_line(std::span<const ProjLine> lines, std::size_t i, PointSet& candidates,
                   std::vector<int>& hits) {
  PointSet local;
  std::vector<int> local_hits;
  for (std::size_t j = 0; j < lines.size(); ++j) {
    if (j == i) continue;
    if (chordal_distance(lines[i], lines[j]) <= tol::kDedup) continue;
    const ProjPoint x = meet(lines[i], lines[j]);
    const long k = local.find(x);
    if (k >= 0) {
      ++local_hits[static_cast<std::size_t>(k)];
    } else {
      local.insert(x);
      local_hits.push_back(1);
    }
  }
  for (std::size_t k = 0; k < local.size(); ++k) {
    if (local_hits[k] < 2) continue;
    const ProjPoint& x = local.items()[k];
    if (candidates.insert(x)) hits.push_back(local_hits[k] + 1);
  }
}

// Backtracking search for a general-position subset, stopping at `cap`.
class MuSearch {
 public:
  MuSearch(std::span<const ProjLine> lines, int cap) : lines_(lines), cap_(cap) {}

  int run() {
    std::vector<std::size_t> chosen;
    extend(chosen, 0);
    return best_;
  }

 private:
  bool compatible(const std::vector<std::size_t>& chosen, std::size_t k) const {
    for (std::size_t a = 0; a < chosen.size(); ++a)
      for (std::size_t b = a + 1; b < chosen.size(); ++b)
        if (concurrent(lines_[chosen[a]], lines_[chosen[b]], lines_[k])) return false;
    return true;
  }

  void extend(std::vector<std::size_t>& chosen, std::size_t from) {
    best_ = std::max(best_, static_cast<int>(chosen.size()));
    if (best_ >= cap_) return;
    if (static_cast<int>(chosen.size() + (lines_.size() - from)) <= best_) return;
    for (std::size_t k = from; k < lines_.size() && best_ < cap_; ++k) {
      if (!compatible(chosen, k)) continue;
      chosen.push_back(k);
      extend(chosen, k + 1);
      chosen.pop_back();
    }
  }

  std::span<const ProjLine> lines_;
  int cap_;
  int best_ = 0;
};

}  // namespace

std::string to_string(const LambdaEstimate& l) {
  return (l.at_least ? "AtLeast(" : "Exact(") + std::to_string(l.n) + ")";
}

std::vector<ProjLine> LimitSetApprox::plain_lines() const { return plain(lines); }

std::vector<Vertex> find_vertices(std::span<const ProjLine> lines) {
  PointSet candidates;
  std::vector<int> hits;
  const std::size_t n = lines.size();
  if (n <= kAllPairsLimit) {
    for (std::size_t i = 0; i < n; ++i) meets_on_line(lines, i, candidates, hits);
  } else {
    for (std::size_t s = 0; s < kVertexSamples; ++s) meets_on_line(lines, s * n / kVertexSamples, candidates, hits);
  }
  std::vector<Vertex> out;
  for (const ProjPoint& x : candidates.items()) {
    int count = 0;
    for (const auto& l : lines)
      if (incidence(l, x) < tol::kIncidence) ++count;
    if (count >= 3) out.push_back({x, count});
  }
  std::sort(out.begin(), out.end(), [](const Vertex& a, const Vertex& b) {
    if (a.lines != b.lines) return a.lines > b.lines;
    const CVec3& r = a.point.rep();
    const CVec3& s = b.point.rep();
    return std::make_tuple(r(0).real(), r(0).imag(), r(1).real(), r(1).imag(), r(2).real(), r(2).imag()) <
           std::make_tuple(s(0).real(), s(0).imag(), s(1).real(), s(1).imag(), s(2).real(), s(2).imag());
  });
  return out;
}

int count_mu(std::span<const ProjLine> lines, int infinity_cutoff) {
  if (lines.size() <= 12) return MuSearch(lines, infinity_cutoff).run();

  // Concurrency happens only at vertices, so lines through exactly one
  // vertex are interchangeable. In dense arrangements, near coincidences at
  // the dedup resolution create many three-line vertices; only vertices
  // carrying at least 1% of the lines are used for the reduction, and the
  // final search still tests concurrency geometrically.
  const std::vector<Vertex> all_vertices = find_vertices(lines);
  const int major = std::max(3, static_cast<int>(lines.size() / 100));
  std::vector<Vertex> vertices;
  for (const Vertex& v : all_vertices)
    if (v.lines >= major) vertices.push_back(v);
  std::vector<std::vector<std::size_t>> through(vertices.size());
  std::vector<ProjLine> reduced;
  std::vector<std::size_t> free_lines;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::vector<std::size_t> on;
    for (std::size_t v = 0; v < vertices.size(); ++v)
      if (incidence(lines[i], vertices[v].point) < tol::kIncidence) on.push_back(v);
    if (on.empty()) {
      free_lines.push_back(i);
    } else if (on.size() >= 2) {
      reduced.push_back(lines[i]);
    } else {
      through[on.front()].push_back(i);
    }
  }
  auto spread = [&](const std::vector<std::size_t>& members, std::size_t count) {
    std::vector<std::size_t> picks;
    for (std::size_t k = 0; k < count && k < members.size(); ++k) {
      const std::size_t at = count >= members.size() ? k : k * (members.size() - 1) / (count - 1);
      picks.push_back(members[at]);
    }
    picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
    for (std::size_t k : picks) reduced.push_back(lines[k]);
  };
  for (const auto& members : through) spread(members, 3);
  spread(free_lines, 12);
  return MuSearch(reduced, infinity_cutoff).run();
}

std::vector<std::string> theorem_gates(const LimitSetApprox& a) {
  std::vector<std::string> out;
  if (a.mu < 0 || a.mu > kMuInfinity) out.push_back("mu outside {1,2,3,4,infinity}");
  if (!a.lambda.at_least && a.lambda.n == 3) {
    const auto l = a.plain_lines();
    if (!general_position(l)) out.push_back("three lines not in general position");
  }
  if (a.isolated_points.size() > 1) out.push_back("more than one isolated point");
  if (a.isolated_points.size() == 1 && (a.lambda.at_least || a.lambda.n != 1)) {
    out.push_back("isolated point without exactly one line");
  }
  return out;
}

LimitSetApprox accumulate(std::span<const ProjMap> generators, int radius) {
  LimitSetApprox out;
  out.radius_used = radius;
  const Ball<ProjMap> ball = enumerate_ball(generators, radius);
  out.ball_size = ball.entries.size();
  out.ball_truncated = ball.truncated;

  LineSet lines;
  PointSet points;
  for (const auto& entry : ball.entries) {
    if (entry.length == 0) continue;
    const ElementClass c = classify(entry.element);
    if (c.kind == ElementKind::EllipticInfiniteOrder) out.everything = true;
    for (const ProjLine& l : c.limit_set.lines)
      if (lines.insert(l)) out.lines.push_back({l, LineSource::PerElement});
    for (const ProjPoint& p : c.limit_set.points) points.insert(p);
  }
  for (const TaggedLine& t : effective_lines(ball, radius))
    if (lines.insert(t.line)) out.lines.push_back(t);

  const std::vector<ProjLine> plain_lines = plain(out.lines);
  for (const ProjPoint& p : points.items()) {
    if (on_any(p, plain_lines)) continue;
    bool fixed = true;
    for (const ProjMap& g : generators) fixed = fixed && fixes(g, p);
    if (fixed) out.isolated_points.push_back(p);
  }
  canonical_sort(out.isolated_points);
  std::sort(out.lines.begin(), out.lines.end(), [](const TaggedLine& a, const TaggedLine& b) {
    const CVec3& r = a.line.rep();
    const CVec3& s = b.line.rep();
    return std::make_tuple(r(0).real(), r(0).imag(), r(1).real(), r(1).imag(), r(2).real(), r(2).imag()) <
           std::make_tuple(s(0).real(), s(0).imag(), s(1).real(), s(1).imag(), s(2).real(), s(2).imag());
  });

  const int n = static_cast<int>(out.lines.size());
  if (out.everything) {
    out.lambda = LambdaEstimate::infinite();
    out.mu = kMuInfinity;
  } else {
    out.lambda = n < kLambdaCutoff ? LambdaEstimate::exact(n) : LambdaEstimate::infinite();
    const auto sorted = plain(out.lines);
    out.mu = count_mu(sorted);
    out.vertices = find_vertices(sorted);
  }
  out.diagnostics = theorem_gates(out);
  return out;
}

LimitSetApprox accumulate(const GroupSpec& spec, int radius) { return accumulate(spec.generators, radius); }

const char* to_string(ElementaryVerdict::Kind k) {
  switch (k) {
    case ElementaryVerdict::Kind::FirstKind: return "FirstKind";
    case ElementaryVerdict::Kind::SecondKind: return "SecondKind";
    case ElementaryVerdict::Kind::NonElementary: return "NonElementary";
  }
  return "?";
}

ElementaryVerdict classify_group(const GroupSpec& spec, int max_radius) {
  const LimitSetApprox low = accumulate(spec, max_radius - 1);
  const LimitSetApprox high = accumulate(spec, max_radius);
  ElementaryVerdict v;
  v.radius_low = max_radius - 1;
  v.radius_high = max_radius;
  v.lines_low = low.lines.size();
  v.lines_high = high.lines.size();
  v.lambda_low = low.lambda;
  v.lambda_high = high.lambda;
  v.mu_low = low.mu;
  v.mu_high = high.mu;
  for (const auto* a : {&low, &high})
    for (const auto& d : a->diagnostics) v.diagnostics.push_back("radius " + std::to_string(a->radius_used) + ": " + d);

  const bool stable = !high.everything && !high.lambda.at_least && v.lines_high == v.lines_low;
  if (stable) {
    v.kind = ElementaryVerdict::Kind::FirstKind;
    v.value = high.lambda.n;
    if (v.value > 3) v.diagnostics.push_back("stable line count " + std::to_string(v.value) + " outside {1,2,3}");
  } else if (!high.everything && high.mu < kMuInfinity) {
    v.kind = ElementaryVerdict::Kind::SecondKind;
    v.value = high.mu;
    if (low.mu != high.mu) v.diagnostics.push_back("mu changed between radii");
  } else {
    v.kind = ElementaryVerdict::Kind::NonElementary;
    v.value = kMuInfinity;
  }
  return v;
}

Mobius control_map(const ProjMap& g, const ProjPoint& p, const ProjLine& horizon) {
  // Orthonormal basis of the horizon plane.
  Eigen::Matrix<Complex, 1, 3> row = horizon.rep().transpose();
  const Eigen::JacobiSVD<Eigen::Matrix<Complex, 1, 3>> svd(row, Eigen::ComputeFullV);
  const Eigen::Matrix<Complex, 3, 2> h = svd.matrixV().rightCols<2>();
  const Complex lp = horizon.rep().cwiseProduct(p.rep()).sum();
  // Projection from p onto the horizon plane along p.
  auto project = [&](const CVec3& y) -> CVec3 {
    return y - (horizon.rep().cwiseProduct(y).sum() / lp) * p.rep();
  };
  Mat2 m;
  for (int j = 0; j < 2; ++j) {
    const CVec3 image = project(g.lift() * h.col(j));
    m.col(j) = h.adjoint() * image;
  }
  return Mobius::from_matrix(m);
}

std::vector<Mobius> control_projection(const GroupSpec& spec, const ProjPoint& p, const ProjLine& horizon) {
  for (const ProjMap& g : spec.generators)
    if (!fixes(g, p)) throw Error(ErrorCode::NotGloballyFixed, "p is not fixed by every generator");
  if (incidence(horizon, p) < tol::kIncidence) throw Error(ErrorCode::PointOnHorizon, "p lies on the horizon");
  std::vector<Mobius> out;
  for (const ProjMap& g : spec.generators) out.push_back(control_map(g, p, horizon));
  return out;
}

std::vector<ProjPoint> common_fixed_points(const GroupSpec& spec) {
  // Each branch is a subspace (orthonormal columns) fixed pointwise so far.
  std::vector<Eigen::MatrixXcd> branches{Eigen::MatrixXcd::Identity(3, 3)};
  for (const ProjMap& g : spec.generators) {
    const Eigen3 e = eigen3(g);
    std::vector<Eigen::MatrixXcd> next;
    for (const auto& s : branches) {
      for (const auto& c : e.clusters) {
        const Eigen::MatrixXcd eig = null_space(g.lift() - c.value * Mat3::Identity(), c.geometric);
        Eigen::MatrixXcd joint(3, s.cols() + eig.cols());
        joint << s, -eig;
        const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(joint, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        int rank = 0;
        for (int i = 0; i < sv.size(); ++i)
          if (sv(i) > 1e-9 * std::max(1.0, sv(0))) ++rank;
        const int dim = static_cast<int>(joint.cols()) - rank;
        if (dim <= 0) continue;
        const Eigen::MatrixXcd coeff = svd.matrixV().rightCols(dim).topRows(s.cols());
        Eigen::MatrixXcd sub = s * coeff;
        const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(sub);
        sub = qr.householderQ() * Eigen::MatrixXcd::Identity(3, dim);
        next.push_back(sub);
      }
    }
    branches = std::move(next);
  }
  PointSet found;
  for (const auto& s : branches)
    for (int j = 0; j < s.cols(); ++j) {
      const ProjPoint p{CVec3(s.col(j))};
      bool ok = true;
      for (const ProjMap& g : spec.generators) ok = ok && fixes(g, p);
      if (ok) found.insert(p);
    }
  std::vector<ProjPoint> out = found.items();
  canonical_sort(out);
  return out;
}

MyrbergApprox myrberg_approx(const GroupSpec& spec, int radius) {
  const Ball<ProjMap> ball = enumerate_ball(spec.generators, radius);
  MyrbergApprox out;
  out.lines = plain(effective_lines(ball, radius));
  for (const ProjPoint& p : effective_points(ball, radius))
    if (!on_any(p, out.lines)) out.points.push_back(p);
  return out;
}

double distance_to_geometry(const ProjPoint& x, std::span<const ProjLine> lines, std::span<const ProjPoint> points) {
  double best = 1.0;
  for (const auto& l : lines) best = std::min(best, incidence(l, x));
  for (const auto& p : points) best = std::min(best, chordal_distance(x, p));
  return best;
}

double containment_gap(const LimitSetApprox& kulkarni, const MyrbergApprox& myrberg) {
  LineSet index;
  for (const auto& l : myrberg.lines) index.insert(l);
  double worst = 0.0;
  for (const auto& t : kulkarni.lines) {
    if (index.contains(t.line)) continue;
    double best = 1.0;
    for (const auto& l : myrberg.lines) best = std::min(best, chordal_distance(t.line, l));
    worst = std::max(worst, best);
  }
  for (const auto& p : kulkarni.isolated_points)
    worst = std::max(worst, distance_to_geometry(p, myrberg.lines, myrberg.points));
  return worst;
}

std::vector<ProjPoint> orbit_oracle(const GroupSpec& spec, int radius, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<CVec3> seeds;
  for (int s = 0; s < samples; ++s) {
    CVec3 v;
    for (int i = 0; i < 3; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    seeds.push_back(v);
  }
  const Ball<ProjMap> ball = enumerate_ball(spec.generators, radius);
  // Outermost sphere reached; shorter than radius when dedup saturates the ball.
  int outer = 0;
  for (const auto& entry : ball.entries) outer = std::max(outer, entry.length);
  std::vector<ProjPoint> cloud;
  for (const auto& entry : ball.entries) {
    if (entry.length != outer) continue;
    for (const CVec3& v : seeds) cloud.emplace_back(CVec3(entry.element.lift() * v));
  }
  return cloud;
}

OracleCheck orbit_oracle_check(std::span<const ProjPoint> cloud, const LimitSetApprox& a, double tolerance) {
  constexpr double cell = 1e-2;
  OracleCheck out;
  out.cloud = cloud.size();
  // Cells of side 1e-2 in the affine chart of the pivot coordinate.
  using Key = std::tuple<int, long, long, long, long>;
  std::map<Key, std::vector<std::size_t>> grid;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const CVec3& r = cloud[i].rep();
    int pivot = 0;
    while (pivot < 2 && r(pivot) != Complex(1.0, 0.0)) ++pivot;
    long c[4];
    int k = 0;
    for (int j = 0; j < 3; ++j) {
      if (j == pivot) continue;
      c[k++] = static_cast<long>(std::floor(r(j).real() / cell));
      c[k++] = static_cast<long>(std::floor(r(j).imag() / cell));
    }
    grid[Key{pivot, c[0], c[1], c[2], c[3]}].push_back(i);
  }
  const auto lines = a.plain_lines();
  for (const auto& [key, members] : grid) {
    if (members.size() < 3) continue;
    ++out.clusters;
    out.clustered += members.size();
    const double d = distance_to_geometry(cloud[members.front()], lines, a.isolated_points);
    out.worst = std::max(out.worst, d);
    if (d > tolerance) ++out.outliers;
  }
  out.passed = out.outliers == 0;
  return out;
}

}  // namespace kleinian
