#include "kleinian/serialization.hpp"

#include "kleinian/element_classify.hpp"
#include "kleinian/group_families.hpp"
#include "kleinian/limit_set.hpp"

namespace kleinian {

namespace {

template <int N>
Eigen::Matrix<Complex, N, N> square_from_json(const Json& j) {
  Eigen::Matrix<Complex, N, N> m;
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "matrix must be an array");
  if (j.size() == static_cast<std::size_t>(N * N)) {
    for (int k = 0; k < N * N; ++k) m(k / N, k % N) = complex_from_json(j[static_cast<std::size_t>(k)]);
    return m;
  }
  if (j.size() == static_cast<std::size_t>(N)) {
    for (int r = 0; r < N; ++r) {
      const Json& row = j[static_cast<std::size_t>(r)];
      if (!row.is_array() || row.size() != static_cast<std::size_t>(N)) {
        throw Error(ErrorCode::ParseError, "matrix rows have the wrong length");
      }
      for (int c = 0; c < N; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
    return m;
  }
  throw Error(ErrorCode::ParseError, "matrix must have " + std::to_string(N * N) + " entries");
}

template <class M>
Json square_to_json(const M& m) {
  Json out = Json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out.push_back(complex_to_json(m(r, c)));
  return out;
}

Json vec_to_json(const CVec3& v) {
  return Json::array({complex_to_json(v(0)), complex_to_json(v(1)), complex_to_json(v(2))});
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw Error(ErrorCode::ParseError, "complex numbers are [re, im] pairs or plain numbers");
}

Json matrix_to_json(const Mat3& m) { return square_to_json(m); }
Mat3 matrix_from_json(const Json& j) { return square_from_json<3>(j); }
Json mat2_to_json(const Mat2& m) { return square_to_json(m); }
Mat2 mat2_from_json(const Json& j) { return square_from_json<2>(j); }

Json point_to_json(const ProjPoint& p) { return vec_to_json(p.rep()); }
Json line_to_json(const ProjLine& l) { return vec_to_json(l.rep()); }

GroupSpec parse_group_spec(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "group spec must be a JSON object");
  if (j.contains("family")) {
    if (!j.at("family").is_string()) throw Error(ErrorCode::ParseError, "family must be a string");
    return family_from_json(j.at("family").get<std::string>(), j.value("params", Json::object()));
  }
  std::vector<Mat3> raw;
  if (j.contains("generators")) {
    if (!j.at("generators").is_array()) throw Error(ErrorCode::ParseError, "generators must be a list");
    for (const auto& m : j.at("generators")) raw.push_back(matrix_from_json(m));
  } else if (j.contains("matrix")) {
    raw.push_back(matrix_from_json(j.at("matrix")));
  } else {
    throw Error(ErrorCode::ParseError, "expected 'family', 'generators' or 'matrix'");
  }
  GroupSpec spec;
  spec.name = "custom";
  for (const Mat3& m : raw) spec.generators.push_back(ProjMap::from_matrix(m));
  spec.raw = std::move(raw);
  return spec;
}

Json group_spec_to_json(const GroupSpec& spec) {
  if (spec.name != "custom") return {{"family", spec.name}, {"params", spec.params}};
  Json gens = Json::array();
  for (const Mat3& m : spec.raw) gens.push_back(matrix_to_json(m));
  return {{"generators", gens}};
}

Json element_report(const ElementClass& c) {
  Json out;
  out["kind"] = to_string(c.kind);
  if (c.order) out["order"] = *c.order;
  Json eig = Json::array();
  for (Complex z : c.eigenvalues) eig.push_back(complex_to_json(z));
  out["eigenvalues"] = eig;
  Json fixed = Json::array();
  for (const auto& p : c.fixed_points) fixed.push_back(point_to_json(p));
  out["fixed_points"] = fixed;
  Json inv = Json::array();
  for (const auto& l : c.invariant_lines) inv.push_back(line_to_json(l));
  out["invariant_lines"] = inv;
  out["near_boundary"] = c.near_boundary;
  const ElementLimitSet& ls = c.limit_set;
  Json lines = Json::array();
  for (const auto& l : ls.lines) lines.push_back(line_to_json(l));
  Json points = Json::array();
  for (const auto& p : ls.points) points.push_back(point_to_json(p));
  out["limit_set"] = {{"lines", ls.lines.size()},
                      {"points", ls.points.size()},
                      {"is_empty", ls.is_empty},
                      {"is_everything", ls.is_everything},
                      {"line_coords", lines},
                      {"point_coords", points}};
  return out;
}

Json limit_set_report(const LimitSetApprox& a) {
  Json out;
  out["lambda"] = a.lambda.at_least ? Json{{"AtLeast", a.lambda.n}} : Json{{"Exact", a.lambda.n}};
  out["mu"] = a.mu >= kMuInfinity ? Json("infinity") : Json(a.mu);
  out["mu_estimate"] = out["mu"];
  out["lines"] = a.lines.size();
  out["isolated_points"] = a.isolated_points.size();
  out["radius"] = a.radius_used;
  out["ball_size"] = a.ball_size;
  out["everything"] = a.everything;
  Json vertices = Json::array();
  for (const auto& v : a.vertices) vertices.push_back({{"point", point_to_json(v.point)}, {"lines", v.lines}});
  out["vertices"] = vertices;
  Json lines = Json::array();
  for (const auto& t : a.lines) lines.push_back({{"line", line_to_json(t.line)}, {"source", to_string(t.source)}});
  out["line_coords"] = lines;
  Json points = Json::array();
  for (const auto& p : a.isolated_points) points.push_back(point_to_json(p));
  out["point_coords"] = points;
  out["diagnostics"] = a.diagnostics;
  return out;
}

Json verdict_report(const ElementaryVerdict& v) {
  auto mu = [](int m) { return m >= kMuInfinity ? Json("infinity") : Json(m); };
  return {{"kind", to_string(v.kind)},
          {"value", v.value},
          {"radii", {v.radius_low, v.radius_high}},
          {"lines", {v.lines_low, v.lines_high}},
          {"lambda", {to_string(v.lambda_low), to_string(v.lambda_high)}},
          {"mu", {mu(v.mu_low), mu(v.mu_high)}},
          {"diagnostics", v.diagnostics}};
}

}  // namespace kleinian
