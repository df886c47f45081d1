#include "kleinian/pseudo_projective.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "kleinian/element_classify.hpp"

namespace kleinian {

namespace {

constexpr double kTopModulusRel = 1e-9;
constexpr double kProjectorCheck = 1e-6;
constexpr double kCauchy = 1e-8;
constexpr double kClusterRadius = 1e-6;

struct SpectralPart {
  Complex value;
  int degree;  // nilpotency degree of (M - value) on the generalized eigenspace
  Mat3 projector;
  Mat3 nilpotent;
};

struct Spectral {
  std::vector<SpectralPart> parts;
  bool valid = false;
};

double sup(const Mat3& m) { return m.cwiseAbs().maxCoeff(); }

Spectral decompose(const ProjMap& m) {
  Spectral out;
  const Mat3& lift = m.lift();
  const Eigen3 e = eigen3(m);
  if (e.clusters.size() == 1) {
    const auto& c = e.clusters.front();
    const Mat3 id = Mat3::Identity();
    out.parts.push_back({c.value, c.algebraic - c.geometric, id, lift - c.value * id});
    out.valid = true;
    return out;
  }
  Mat3 basis;
  int col = 0;
  std::vector<std::pair<int, int>> ranges;
  for (const auto& c : e.clusters) {
    const Eigen::MatrixXcd v = generalized_eigenspace(lift, c.value, c.algebraic);
    if (v.cols() != c.algebraic) return out;
    ranges.emplace_back(col, c.algebraic);
    for (int i = 0; i < c.algebraic; ++i) basis.col(col++) = v.col(i);
  }
  if (numerical_rank(basis, 1e-8) < 3) return out;
  const Mat3 inv = basis.inverse();
  Mat3 total = Mat3::Zero();
  for (std::size_t j = 0; j < e.clusters.size(); ++j) {
    Mat3 select = Mat3::Zero();
    for (int i = 0; i < ranges[j].second; ++i) select(ranges[j].first + i, ranges[j].first + i) = 1.0;
    const Mat3 p = basis * select * inv;
    const double scale = std::max(1.0, sup(p));
    if (sup(p * p - p) > kProjectorCheck * scale * scale) return out;
    if (sup(lift * p - p * lift) > kProjectorCheck * scale * std::max(1.0, sup(lift))) return out;
    total += p;
    const auto& c = e.clusters[j];
    out.parts.push_back({c.value, c.algebraic - c.geometric, p, (lift - c.value * Mat3::Identity()) * p});
  }
  if (sup(total - Mat3::Identity()) > kProjectorCheck) return out;
  out.valid = true;
  return out;
}

Mat3 leading_term(const SpectralPart& part, int degree) {
  Mat3 x = part.projector;
  for (int i = 0; i < degree; ++i) x = part.nilpotent * x;
  return x;
}

// Dominant parts: largest modulus, then largest nilpotency degree.
std::vector<const SpectralPart*> dominant(const Spectral& s, int& degree) {
  double top = 0.0;
  for (const auto& p : s.parts) top = std::max(top, std::abs(p.value));
  degree = 0;
  for (const auto& p : s.parts)
    if (std::abs(p.value) >= top * (1.0 - kTopModulusRel)) degree = std::max(degree, p.degree);
  std::vector<const SpectralPart*> out;
  for (const auto& p : s.parts)
    if (std::abs(p.value) >= top * (1.0 - kTopModulusRel) && p.degree == degree) out.push_back(&p);
  return out;
}

}  // namespace

const char* to_string(PowerLimitStatus s) {
  switch (s) {
    case PowerLimitStatus::Converged: return "Converged";
    case PowerLimitStatus::InGroup: return "InGroup";
    case PowerLimitStatus::MultipleAccumulationPoints: return "MultipleAccumulationPoints";
  }
  return "?";
}

const char* to_string(LineSource s) {
  switch (s) {
    case LineSource::PerElement: return "PerElement";
    case LineSource::EffectiveLine: return "EffectiveLine";
    case LineSource::OrbitInferred: return "OrbitInferred";
  }
  return "?";
}

double projective_matrix_distance(const Mat3& a, const Mat3& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 1.0;
  const double c = std::abs((a.array().conjugate() * b.array()).sum()) / (na * nb);
  return std::sqrt(std::max(0.0, 1.0 - c * c));
}

std::optional<PseudoProjMap> numeric_power_limit(const ProjMap& m) {
  Mat3 x = m.canonical();
  Mat3 prev = x;
  for (int k = 1; k <= 14; ++k) {
    x = canonical(Mat3(x * x));
    if (k >= 4 && projective_matrix_distance(x, prev) < kCauchy) return PseudoProjMap(x);
    prev = x;
  }
  return std::nullopt;
}

PowerLimit power_limit(const ProjMap& m) {
  if (m.is_identity()) return {PowerLimitStatus::InGroup, std::nullopt, false};
  const Spectral s = decompose(m);
  if (!s.valid) {
    auto numeric = numeric_power_limit(m);
    if (numeric) {
      if (!numeric->is_singular()) return {PowerLimitStatus::InGroup, std::nullopt, true};
      return {PowerLimitStatus::Converged, numeric, true};
    }
    return {PowerLimitStatus::MultipleAccumulationPoints, std::nullopt, true};
  }
  int degree = 0;
  const auto top = dominant(s, degree);
  if (top.size() != 1) return {PowerLimitStatus::MultipleAccumulationPoints, std::nullopt, false};
  const PseudoProjMap limit(leading_term(*top.front(), degree));
  if (!limit.is_singular()) return {PowerLimitStatus::InGroup, std::nullopt, false};
  return {PowerLimitStatus::Converged, limit, false};
}

std::optional<PseudoProjMap> power_accumulation(const ProjMap& m) {
  if (m.is_identity()) return std::nullopt;
  const Spectral s = decompose(m);
  if (!s.valid) {
    auto numeric = numeric_power_limit(m);
    if (numeric && numeric->is_singular()) return numeric;
    return std::nullopt;
  }
  int degree = 0;
  Mat3 sum = Mat3::Zero();
  for (const SpectralPart* p : dominant(s, degree)) sum += leading_term(*p, degree);
  const PseudoProjMap out(sum);
  if (!out.is_singular()) return std::nullopt;
  return out;
}

std::vector<PseudoProjMap> sequence_limit(std::span<const ProjMap> words) {
  struct Cluster {
    Mat3 rep;
    int members;
  };
  std::vector<Cluster> clusters;
  for (const ProjMap& w : words) {
    const Mat3& c = w.canonical();
    bool placed = false;
    for (auto& cl : clusters) {
      if (projective_matrix_distance(cl.rep, c) < kClusterRadius) {
        cl.rep = c;
        ++cl.members;
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({c, 1});
  }
  std::vector<PseudoProjMap> out;
  for (const auto& cl : clusters)
    if (cl.members >= 2) out.emplace_back(cl.rep);
  return out;
}

namespace {

template <class Visitor>
void for_each_accumulation(const Ball<ProjMap>& ball, Visitor&& visit) {
  for (const auto& entry : ball.entries) {
    if (entry.length == 0) continue;
    for (const ProjMap& w : {entry.element, entry.element.inverse()}) {
      if (auto s = power_accumulation(w)) visit(*s);
    }
  }
}

std::vector<ProjMap> translators(const Ball<ProjMap>& ball, int radius) {
  const int small = std::min(3, radius);
  std::vector<ProjMap> out;
  for (const auto& entry : ball.entries)
    if (entry.length >= 1 && entry.length <= small) out.push_back(entry.element.inverse());
  return out;
}

template <class T>
void sort_tagged(std::vector<T>& v) {
  auto key = [](const CVec3& r) {
    return std::make_tuple(r(0).real(), r(0).imag(), r(1).real(), r(1).imag(), r(2).real(), r(2).imag());
  };
  std::sort(v.begin(), v.end(), [&](const T& a, const T& b) { return key(a.line.rep()) < key(b.line.rep()); });
}

}  // namespace

std::vector<TaggedLine> effective_lines(const Ball<ProjMap>& ball, int radius) {
  LineSet direct;
  for_each_accumulation(ball, [&](const PseudoProjMap& s) {
    const KernelDescriptor k = s.kernel();
    if (const auto* l = std::get_if<ProjLine>(&k)) direct.insert(*l);
  });
  LineSet all;
  std::vector<TaggedLine> out;
  for (const ProjLine& l : direct.items())
    if (all.insert(l)) out.push_back({l, LineSource::EffectiveLine});
  const auto moves = translators(ball, radius);
  for (const ProjLine& l : direct.items()) {
    for (const ProjMap& v : moves) {
      const ProjLine moved = v.apply(l);
      if (all.insert(moved)) out.push_back({moved, LineSource::OrbitInferred});
    }
  }
  sort_tagged(out);
  return out;
}

std::vector<TaggedLine> effective_lines(std::span<const ProjMap> generators, int radius) {
  return effective_lines(enumerate_ball(generators, radius), radius);
}

std::vector<ProjPoint> effective_points(const Ball<ProjMap>& ball, int radius) {
  PointSet direct;
  for_each_accumulation(ball, [&](const PseudoProjMap& s) {
    const KernelDescriptor k = s.kernel();
    if (const auto* p = std::get_if<ProjPoint>(&k)) direct.insert(*p);
  });
  PointSet all;
  for (const ProjPoint& p : direct.items()) all.insert(p);
  const auto moves = translators(ball, radius);
  for (const ProjPoint& p : direct.items())
    for (const ProjMap& v : moves) all.insert(v.apply(p));
  std::vector<ProjPoint> out = all.items();
  canonical_sort(out);
  return out;
}

}  // namespace kleinian
