#include "kleinian/group_families.hpp"

#include <cmath>
#include <numbers>

#include "kleinian/serialization.hpp"
#include "kleinian/word_ball.hpp"

namespace kleinian {

namespace {

constexpr double kUnitaryTol = 1e-6;

using Lattice = std::vector<std::pair<Complex, Complex>>;

void check_discrete_c(const std::vector<Complex>& basis) {
  if (basis.size() > 2) throw Error(ErrorCode::NonDiscreteLattice, "a discrete subgroup of C has rank <= 2");
  for (Complex w : basis)
    if (std::abs(w) < 1e-12) throw Error(ErrorCode::NonDiscreteLattice, "basis element is zero");
  if (basis.size() == 2 && std::abs((basis[1] / basis[0]).imag()) < 1e-9) {
    throw Error(ErrorCode::NonDiscreteLattice, "basis elements are real-proportional");
  }
}

void check_discrete_c2(const Lattice& basis) {
  if (basis.size() > 4) throw Error(ErrorCode::NonDiscreteLattice, "a discrete subgroup of C^2 has rank <= 4");
  if (basis.empty()) return;
  Eigen::MatrixXd m(4, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto c = static_cast<Eigen::Index>(i);
    m(0, c) = basis[i].first.real();
    m(1, c) = basis[i].first.imag();
    m(2, c) = basis[i].second.real();
    m(3, c) = basis[i].second.imag();
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s(0) < 1e-12 || s(s.size() - 1) < 1e-9 * s(0)) {
    throw Error(ErrorCode::NonDiscreteLattice, "lattice basis is not independent over R");
  }
}

void check_mu(const std::vector<Complex>& w, const std::vector<Complex>& mu) {
  if (w.size() != mu.size()) throw Error(ErrorCode::ParseError, "W and mu must have the same length");
  for (Complex m : mu)
    if (std::abs(m) < 1e-12) throw Error(ErrorCode::SingularMatrix, "mu must be nonzero");
}

GroupSpec make(std::string name, std::vector<Mat3> raw, PredictedLimitSet predicted, Json params) {
  GroupSpec spec;
  spec.name = std::move(name);
  spec.predicted = predicted;
  spec.params = std::move(params);
  for (const Mat3& m : raw) spec.generators.push_back(ProjMap::from_matrix(m));
  spec.raw = std::move(raw);
  return spec;
}

Json complex_list(const std::vector<Complex>& v) {
  Json out = Json::array();
  for (Complex z : v) out.push_back(complex_to_json(z));
  return out;
}

Json lattice_json(const Lattice& l) {
  Json out = Json::array();
  for (const auto& [a, b] : l) out.push_back(Json::array({complex_to_json(a), complex_to_json(b)}));
  return out;
}

Mat3 unipotent(Complex e12, Complex e13, Complex e23) {
  Mat3 m = Mat3::Identity();
  m(0, 1) = e12;
  m(0, 2) = e13;
  m(1, 2) = e23;
  return m;
}

Mat3 ell_matrix(Complex w, Complex mu) {
  Mat3 m = Mat3::Zero();
  m(0, 0) = mu;
  m(0, 1) = mu * w;
  m(1, 1) = mu;
  m(2, 2) = 1.0 / (mu * mu);
  return m;
}

bool unitary(Complex z) { return std::abs(std::abs(z) - 1.0) <= kUnitaryTol; }

}  // namespace

const char* to_string(Shape s) {
  switch (s) {
    case Shape::Empty: return "Empty";
    case Shape::OneLine: return "OneLine";
    case Shape::TwoLines: return "TwoLines";
    case Shape::ThreeLinesGeneralPosition: return "ThreeLinesGeneralPosition";
    case Shape::ConeOverCircle: return "ConeOverCircle";
    case Shape::ConeOverPerfectSet: return "ConeOverPerfectSet";
    case Shape::ConePlusLine: return "ConePlusLine";
    case Shape::TwoPencilsPlusSharedLine: return "TwoPencilsPlusSharedLine";
    case Shape::LinePlusPoint: return "LinePlusPoint";
    case Shape::AllOfP2: return "AllOfP2";
    case Shape::Undetermined: return "Undetermined";
  }
  return "?";
}

PredictedLimitSet PredictedLimitSet::of(Shape s) {
  PredictedLimitSet p;
  p.shape = s;
  switch (s) {
    case Shape::Empty: p.lambda = 0; p.mu = 0; break;
    case Shape::OneLine: p.lambda = 1; p.mu = 1; break;
    case Shape::TwoLines: p.lambda = 2; p.mu = 2; break;
    case Shape::ThreeLinesGeneralPosition: p.lambda = 3; p.mu = 3; break;
    case Shape::ConeOverCircle:
    case Shape::ConeOverPerfectSet: p.mu = 2; break;
    case Shape::ConePlusLine: p.mu = 3; break;
    case Shape::TwoPencilsPlusSharedLine: p.mu = 4; break;
    case Shape::LinePlusPoint: p.lambda = 1; p.mu = 1; p.isolated_points = 1; break;
    case Shape::AllOfP2: p.mu = kMuInfinity; break;
    case Shape::Undetermined: break;
  }
  return p;
}

GroupSpec conjugate(const GroupSpec& spec, const ProjMap& g) {
  GroupSpec out = spec;
  const ProjMap gi = g.inverse();
  for (std::size_t i = 0; i < out.generators.size(); ++i) {
    out.generators[i] = g * spec.generators[i] * gi;
    out.raw[i] = out.generators[i].lift();
  }
  return out;
}

GroupSpec elliptic_group(const std::vector<Complex>& w_basis, const std::vector<Complex>& mu) {
  check_discrete_c(w_basis);
  check_mu(w_basis, mu);
  for (Complex m : mu)
    if (std::abs(std::abs(m) - 1.0) > 1e-9) throw Error(ErrorCode::NonUnitaryMu, "mu must take unit values");
  std::vector<Mat3> raw;
  for (std::size_t i = 0; i < w_basis.size(); ++i) raw.push_back(ell_matrix(w_basis[i], mu[i]));
  return make("elliptic", raw, PredictedLimitSet::of(w_basis.empty() ? Shape::Empty : Shape::OneLine),
              {{"W", complex_list(w_basis)}, {"mu", complex_list(mu)}});
}

GroupSpec torus_group(const Lattice& lattice) {
  check_discrete_c2(lattice);
  std::vector<Mat3> raw;
  for (const auto& [a, b] : lattice) raw.push_back(unipotent(0.0, a, b));
  return make("torus", raw, PredictedLimitSet::of(lattice.empty() ? Shape::Empty : Shape::OneLine),
              {{"lattice", lattice_json(lattice)}});
}

GroupSpec dual_torus(const Lattice& lattice) {
  check_discrete_c2(lattice);
  std::vector<Mat3> raw;
  for (const auto& [a, b] : lattice) raw.push_back(unipotent(a, b, 0.0));
  return make("dual_torus", raw, PredictedLimitSet::of(lattice.empty() ? Shape::Empty : Shape::Undetermined),
              {{"lattice", lattice_json(lattice)}});
}

GroupSpec inoue_group(const Lattice& lattice, Complex x, Complex y, Complex z) {
  if (std::abs(z) < 1e-12) throw Error(ErrorCode::DegenerateGamma1, "z = 0 puts gamma_1 in the dual torus part");
  check_discrete_c2(lattice);
  std::vector<Mat3> raw;
  for (const auto& [u, v] : lattice) raw.push_back(unipotent(u, v, 0.0));
  raw.push_back(unipotent(x + z, y, z));
  return make("inoue", raw, PredictedLimitSet::of(Shape::ConeOverCircle),
              {{"lattice", lattice_json(lattice)},
               {"x", complex_to_json(x)},
               {"y", complex_to_json(y)},
               {"z", complex_to_json(z)}});
}

GroupSpec kodaira_group(const Lattice& pairs) {
  std::vector<Mat3> raw;
  for (const auto& [a, b] : pairs) raw.push_back(unipotent(a, b, a));
  GroupSpec spec = make("kodaira", raw, PredictedLimitSet::of(pairs.empty() ? Shape::Empty : Shape::OneLine),
                        {{"pairs", lattice_json(pairs)}});
  const auto ball = enumerate_ball(spec.generators, 6);
  for (const auto& e : ball.entries) {
    if (e.length > 0 && matrix_distance(e.element.canonical(), Mat3::Identity()) < 1e-6) {
      throw Error(ErrorCode::NonDiscreteHeuristic, "a short word lies within 1e-6 of the identity");
    }
  }
  return spec;
}

GroupSpec diagonal_group(Complex alpha, Complex beta) {
  if (unitary(alpha) || unitary(beta)) throw Error(ErrorCode::UnitaryParameter, "alpha and beta must be non-unitary");
  Mat3 a = Mat3::Identity();
  a(0, 0) = alpha;
  Mat3 b = Mat3::Identity();
  b(1, 1) = beta;
  return make("diagonal", {a, b}, PredictedLimitSet::of(Shape::ThreeLinesGeneralPosition),
              {{"alpha", complex_to_json(alpha)}, {"beta", complex_to_json(beta)}});
}

GroupSpec fake_hopf(const std::vector<Complex>& w_basis, const std::vector<Complex>& mu) {
  check_discrete_c(w_basis);
  check_mu(w_basis, mu);
  bool all_unit = true;
  for (Complex m : mu) all_unit = all_unit && std::abs(std::abs(m) - 1.0) <= 1e-9;
  std::vector<Mat3> raw;
  for (std::size_t i = 0; i < w_basis.size(); ++i) raw.push_back(ell_matrix(w_basis[i], mu[i]));
  const Shape shape = w_basis.empty() ? Shape::Empty : (all_unit ? Shape::OneLine : Shape::Undetermined);
  return make("fake_hopf", raw, PredictedLimitSet::of(shape), {{"W", complex_list(w_basis)}, {"mu", complex_list(mu)}});
}

GroupSpec hyperbolic_toral(const std::array<std::array<long, 2>, 2>& a) {
  const long det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  if (det != 1) throw Error(ErrorCode::NotUnimodular, "A must have determinant 1");
  const long trace = a[0][0] + a[1][1];
  if (std::labs(trace) <= 2) throw Error(ErrorCode::NotHyperbolic, "A must have |trace| > 2");
  Mat3 l = Mat3::Identity();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) l(i, j) = static_cast<double>(a[i][j]);
  return make("hyperbolic_toral", {unipotent(0.0, 1.0, 0.0), unipotent(0.0, 0.0, 1.0), l},
              PredictedLimitSet::of(Shape::TwoPencilsPlusSharedLine),
              {{"A", Json::array({Json::array({a[0][0], a[0][1]}), Json::array({a[1][0], a[1][1]})})}});
}

GroupSpec suspension(const std::vector<Mobius>& sigma, const std::vector<Complex>& rho, Complex alpha) {
  if (unitary(alpha)) throw Error(ErrorCode::UnitaryAlpha, "alpha must be non-unitary");
  if (!rho.empty() && rho.size() != sigma.size()) {
    throw Error(ErrorCode::ParseError, "rho needs one value per generator of sigma");
  }
  for (Complex r : rho)
    if (std::abs(r) < 1e-12) throw Error(ErrorCode::SingularMatrix, "rho values must be nonzero");
  if (is_elementary(sigma).elementary) throw Error(ErrorCode::ElementarySigma, "sigma must be non-elementary");
  Mat3 d = Mat3::Identity();
  d(0, 0) = alpha;
  std::vector<Mat3> raw{d};
  Json sigma_json = Json::array();
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    Mat3 m = Mat3::Zero();
    m(0, 0) = rho.empty() ? Complex(1.0) : rho[i];
    m.block<2, 2>(1, 1) = sigma[i].lift();
    raw.push_back(m);
    sigma_json.push_back(mat2_to_json(sigma[i].lift()));
  }
  return make("suspension", raw, PredictedLimitSet::of(Shape::ConePlusLine),
              {{"sigma", sigma_json}, {"rho", complex_list(rho)}, {"alpha", complex_to_json(alpha)}});
}

GroupSpec screw_line_point_group(Complex alpha, double theta) {
  if (unitary(alpha)) throw Error(ErrorCode::UnitaryParameter, "alpha must be non-unitary");
  Mat3 m = Mat3::Zero();
  m(0, 0) = alpha;
  m(1, 1) = std::polar(1.0, 2.0 * std::numbers::pi * theta);
  m(2, 2) = std::polar(1.0, -2.0 * std::numbers::pi * theta);
  return make("screw_line_point", {m}, PredictedLimitSet::of(Shape::LinePlusPoint),
              {{"alpha", complex_to_json(alpha)}, {"theta", theta}});
}

GroupSpec h0_group(const std::vector<Complex>& w_basis, const std::vector<Complex>& mu) {
  check_discrete_c(w_basis);
  check_mu(w_basis, mu);
  // mu(w_n) must tend to 0 or infinity: along every short integer direction
  // |mu|^50 has to leave [1e-2, 1e2].
  const int k = static_cast<int>(w_basis.size());
  std::vector<int> c(static_cast<std::size_t>(k), -2);
  const double min_log = std::log(100.0) / 50.0;
  while (k > 0) {
    bool nonzero = false;
    double log_mod = 0.0;
    for (int i = 0; i < k; ++i) {
      nonzero = nonzero || c[static_cast<std::size_t>(i)] != 0;
      log_mod += c[static_cast<std::size_t>(i)] * std::log(std::abs(mu[static_cast<std::size_t>(i)]));
    }
    if (nonzero && std::abs(log_mod) < min_log) {
      throw Error(ErrorCode::MuConditionViolated, "mu does not diverge along some sequence in W");
    }
    int i = 0;
    while (i < k && ++c[static_cast<std::size_t>(i)] > 2) c[static_cast<std::size_t>(i++)] = -2;
    if (i == k) break;
  }
  std::vector<Mat3> raw;
  for (int i = 0; i < k; ++i) {
    const Complex m = mu[static_cast<std::size_t>(i)];
    Mat3 g = Mat3::Zero();
    g(0, 0) = 1.0 / (m * m);
    g(1, 1) = m;
    g(1, 2) = w_basis[static_cast<std::size_t>(i)] * m;
    g(2, 2) = m;
    raw.push_back(g);
  }
  return make("h0", raw, PredictedLimitSet::of(w_basis.empty() ? Shape::Empty : Shape::LinePlusPoint),
              {{"W", complex_list(w_basis)}, {"mu", complex_list(mu)}});
}

const char* to_string(PresentationKind k) {
  switch (k) {
    case PresentationKind::Z: return "Z";
    case PresentationKind::Z2: return "Z2";
    case PresentationKind::Z3: return "Z3";
    case PresentationKind::Z4: return "Z4";
    case PresentationKind::Delta_k: return "Delta_k";
    case PresentationKind::G_k: return "G_k";
  }
  return "?";
}

std::optional<PresentationKind> presentation_kind_from_string(std::string_view s) {
  for (auto k : {PresentationKind::Z, PresentationKind::Z2, PresentationKind::Z3, PresentationKind::Z4,
                 PresentationKind::Delta_k, PresentationKind::G_k})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

GroupSpec unipotent_presentation_group(PresentationKind kind, int k) {
  const Complex i(0.0, 1.0);
  std::vector<Mat3> raw;
  switch (kind) {
    case PresentationKind::Z4: raw.insert(raw.begin(), unipotent(0.0, 0.0, i)); [[fallthrough]];
    case PresentationKind::Z3: raw.insert(raw.begin(), unipotent(0.0, i, 0.0)); [[fallthrough]];
    case PresentationKind::Z2: raw.insert(raw.begin(), unipotent(0.0, 0.0, 1.0)); [[fallthrough]];
    case PresentationKind::Z: raw.insert(raw.begin(), unipotent(0.0, 1.0, 0.0)); break;
    case PresentationKind::Delta_k:
    case PresentationKind::G_k: {
      if (k < 1) throw Error(ErrorCode::InvalidK, "k must be at least 1");
      const double kk = static_cast<double>(k);
      raw.push_back(unipotent(1.0, 0.0, 1.0));
      raw.push_back(unipotent(-i * kk, 0.0, i * kk));
      raw.push_back(unipotent(0.0, 2.0 * i, 0.0));
      if (kind == PresentationKind::Delta_k) raw.push_back(unipotent(0.0, 1.0, 0.0));
      break;
    }
  }
  return make("unipotent_presentation", raw, PredictedLimitSet::of(Shape::OneLine),
              {{"kind", to_string(kind)}, {"k", k}});
}

namespace {

const Json& need(const Json& params, const char* key) {
  if (!params.is_object() || !params.contains(key)) {
    throw Error(ErrorCode::ParseError, std::string("missing parameter '") + key + "'");
  }
  return params.at(key);
}

std::vector<Complex> complexes(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected a list of complex numbers");
  std::vector<Complex> out;
  for (const auto& x : j) out.push_back(complex_from_json(x));
  return out;
}

Lattice lattice(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected a list of pairs");
  Lattice out;
  for (const auto& x : j) {
    if (!x.is_array() || x.size() != 2) throw Error(ErrorCode::ParseError, "lattice vectors are pairs");
    out.emplace_back(complex_from_json(x[0]), complex_from_json(x[1]));
  }
  return out;
}

Complex optional_complex(const Json& params, const char* key, Complex fallback) {
  return params.contains(key) ? complex_from_json(params.at(key)) : fallback;
}

}  // namespace

std::vector<std::string> family_names() {
  return {"elliptic", "torus", "dual_torus", "inoue", "kodaira", "diagonal", "fake_hopf", "hyperbolic_toral",
          "suspension", "screw_line_point", "h0", "unipotent_presentation"};
}

GroupSpec family_from_json(const std::string& family, const Json& params) {
  try {
    if (family == "elliptic") {
      const auto w = complexes(need(params, "W"));
      const auto mu = params.contains("mu") ? complexes(params.at("mu")) : std::vector<Complex>(w.size(), 1.0);
      return elliptic_group(w, mu);
    }
    if (family == "torus") return torus_group(lattice(need(params, "lattice")));
    if (family == "dual_torus") return dual_torus(lattice(need(params, "lattice")));
    if (family == "inoue") {
      return inoue_group(lattice(need(params, "lattice")), optional_complex(params, "x", 0.0),
                         optional_complex(params, "y", 0.0), complex_from_json(need(params, "z")));
    }
    if (family == "kodaira") return kodaira_group(lattice(need(params, "pairs")));
    if (family == "diagonal") {
      return diagonal_group(complex_from_json(need(params, "alpha")), complex_from_json(need(params, "beta")));
    }
    if (family == "fake_hopf") return fake_hopf(complexes(need(params, "W")), complexes(need(params, "mu")));
    if (family == "hyperbolic_toral") {
      const Json& a = need(params, "A");
      if (!a.is_array() || a.size() != 2 || a[0].size() != 2 || a[1].size() != 2) {
        throw Error(ErrorCode::ParseError, "A must be a 2x2 integer matrix");
      }
      return hyperbolic_toral({{{a[0][0].get<long>(), a[0][1].get<long>()}, {a[1][0].get<long>(), a[1][1].get<long>()}}});
    }
    if (family == "suspension") {
      std::vector<Mobius> sigma;
      if (!params.contains("sigma") || params.at("sigma") == "schottky") {
        sigma = example_schottky_pair();
      } else {
        for (const auto& m : params.at("sigma")) sigma.push_back(Mobius::from_matrix(mat2_from_json(m)));
      }
      const auto rho = params.contains("rho") ? complexes(params.at("rho")) : std::vector<Complex>{};
      return suspension(sigma, rho, complex_from_json(need(params, "alpha")));
    }
    if (family == "screw_line_point") {
      return screw_line_point_group(complex_from_json(need(params, "alpha")), need(params, "theta").get<double>());
    }
    if (family == "h0") return h0_group(complexes(need(params, "W")), complexes(need(params, "mu")));
    if (family == "unipotent_presentation") {
      const auto kind = presentation_kind_from_string(need(params, "kind").get<std::string>());
      if (!kind) throw Error(ErrorCode::ParseError, "unknown presentation kind");
      return unipotent_presentation_group(*kind, params.value("k", 1));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  throw Error(ErrorCode::ParseError, "unknown family '" + family + "'");
}

SolElement sol_multiply(const SolElement& a, const SolElement& b) {
  return {a.x + std::exp(a.t) * b.x, a.y + std::exp(-a.t) * b.y, a.t + b.t};
}

SolCheck sol_embedding_check(const GroupSpec& spec, double tolerance) {
  if (spec.name != "hyperbolic_toral" || spec.generators.size() != 3 || !spec.params.contains("A")) {
    throw Error(ErrorCode::NotToralSpec, "spec was not built by hyperbolic_toral");
  }
  const Json& aj = spec.params.at("A");
  Eigen::Matrix2d a;
  a << aj[0][0].get<double>(), aj[0][1].get<double>(), aj[1][0].get<double>(), aj[1][1].get<double>();
  const double tr = a.trace();
  const double lambda = (tr + std::copysign(std::sqrt(tr * tr - 4.0), tr)) / 2.0;
  if (lambda <= 0.0) return {false, std::numeric_limits<double>::infinity()};
  auto eigvec = [&](double l) {
    const Eigen::Vector2d p(a(0, 1), l - a(0, 0));
    const Eigen::Vector2d q(l - a(1, 1), a(1, 0));
    return p.norm() >= q.norm() ? p : q;
  };
  Eigen::Matrix2d basis;
  basis.col(0) = eigvec(lambda);
  basis.col(1) = eigvec(1.0 / lambda);
  const Eigen::Matrix2d to_eigen = basis.inverse();
  const Eigen::Vector2d u = basis.col(0);
  const int pivot = std::abs(u(0)) >= std::abs(u(1)) ? 0 : 1;

  // Reads (x, y, t) off an element [[A^k, b], [0, 1]] given by its det-one lift.
  auto to_sol = [&](const ProjMap& g) {
    const Mat3 m = g.lift() / g.lift()(2, 2);
    const Eigen::Matrix2d ak = m.block<2, 2>(0, 0).real();
    const Eigen::Vector2d b = m.block<2, 1>(0, 2).real();
    const Eigen::Vector2d xy = to_eigen * b;
    const double growth = (ak * u)(pivot) / u(pivot);
    return SolElement{xy(0), xy(1), std::log(growth)};
  };

  std::vector<ProjMap> letters;
  for (const ProjMap& g : spec.generators) {
    letters.push_back(g);
    letters.push_back(g.inverse());
  }
  double worst = 0.0;
  for (const ProjMap& g : letters) {
    for (const ProjMap& h : letters) {
      const SolElement lhs = sol_multiply(to_sol(g), to_sol(h));
      const SolElement rhs = to_sol(g * h);
      worst = std::max({worst, std::abs(lhs.x - rhs.x), std::abs(lhs.y - rhs.y), std::abs(lhs.t - rhs.t)});
    }
  }
  return {worst < tolerance, worst};
}

}  // namespace kleinian
