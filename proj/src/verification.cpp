#include "kleinian/verification.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>

#include "kleinian/element_classify.hpp"
#include "kleinian/limit_set.hpp"

namespace kleinian {

namespace {

using Rows = std::vector<VerifyRow>;

std::string mu_text(int mu) { return mu >= kMuInfinity ? "infinity" : std::to_string(mu); }

void add(Rows& rows, const std::string& suite, const std::string& check, const std::string& expected,
         const std::string& measured) {
  rows.push_back({suite, check, expected, measured, expected == measured});
}

void verdict_rows(Rows& rows, const std::string& suite, const GroupSpec& spec, const std::string& expected) {
  const ElementaryVerdict v = classify_group(spec, 6);
  add(rows, suite, "verdict", expected, std::string(to_string(v.kind)) + "(" + std::to_string(v.value) + ")");
  add(rows, suite, "theorem gates", "none", v.diagnostics.empty() ? "none" : v.diagnostics.front());
}

ProjLine line_of(int i, int j) {
  CVec3 a = CVec3::Zero();
  CVec3 b = CVec3::Zero();
  a(i) = 1.0;
  b(j) = 1.0;
  return line_through(ProjPoint(a), ProjPoint(b));
}

bool has_line(const LimitSetApprox& a, const ProjLine& l) {
  for (const auto& t : a.lines)
    if (chordal_distance(t.line, l) <= tol::kDedup) return true;
  return false;
}

void line_point_rows(Rows& rows, const std::string& suite, const GroupSpec& spec) {
  const LimitSetApprox a = accumulate(spec, 5);
  add(rows, suite, "lines", "1", std::to_string(a.lines.size()));
  add(rows, suite, "isolated points", "1", std::to_string(a.isolated_points.size()));
  add(rows, suite, "theorem gates", "none", a.diagnostics.empty() ? "none" : a.diagnostics.front());
  const MyrbergApprox m = myrberg_approx(spec, 5);
  add(rows, suite, "myrberg lines + points", "1 + 1",
      std::to_string(m.lines.size()) + " + " + std::to_string(m.points.size()));
}

Rows cyclic_suite() {
  Rows rows;
  const Complex i(0.0, 1.0);
  struct Case {
    const char* name;
    Mat3 m;
    int lines;
    int points;
  };
  Mat3 rank1 = Mat3::Identity();
  rank1(0, 1) = 1.0;
  Mat3 rank2 = Mat3::Identity();
  rank2(0, 1) = 1.0;
  rank2(1, 2) = 1.0;
  Mat3 homothety = Mat3::Zero();
  homothety.diagonal() << 2.0, 2.0, 0.25;
  Mat3 screw = Mat3::Zero();
  screw.diagonal() << 2.0 * std::exp(i * (std::numbers::pi / 4)), 2.0 * std::exp(-i * (std::numbers::pi / 4)), 0.25;
  Mat3 loxo = homothety;
  loxo(0, 1) = 1.0;
  Mat3 strong = Mat3::Zero();
  strong.diagonal() << 1.0 / 3.0, 1.0, 3.0;
  const std::vector<Case> cases{{"ParabolicUnipotentRank1", rank1, 1, 0}, {"ParabolicUnipotentRank2", rank2, 1, 0},
                                {"ComplexHomothety", homothety, 1, 1},       {"Screw", screw, 1, 1},
                                {"Loxoparabolic", loxo, 2, 0},               {"StronglyLoxodromic", strong, 2, 0}};
  for (const auto& c : cases) {
    const ProjMap g = ProjMap::from_matrix(c.m);
    const ElementClass cls = classify(g);
    add(rows, "cyclic", std::string(c.name) + " kind", c.name, to_string(cls.kind));
    const std::vector<ProjMap> gens{g};
    const LimitSetApprox a = accumulate(gens, 5);
    add(rows, "cyclic", std::string(c.name) + " lines + points",
        std::to_string(c.lines) + " + " + std::to_string(c.points),
        std::to_string(a.lines.size()) + " + " + std::to_string(a.isolated_points.size()));
  }
  return rows;
}

Rows diagonal_suite() {
  Rows rows;
  const LimitSetApprox a = accumulate(diagonal_group(2.0, 3.0), 5);
  add(rows, "diagonal", "lambda", "Exact(3)", to_string(a.lambda));
  add(rows, "diagonal", "mu", "3", mu_text(a.mu));
  const auto lines = a.plain_lines();
  add(rows, "diagonal", "general position", "true", lines.size() == 3 && general_position(lines) ? "true" : "false");
  verdict_rows(rows, "diagonal", diagonal_group(2.0, 3.0), "FirstKind(3)");
  return rows;
}

Rows toral_suite() {
  Rows rows;
  const GroupSpec spec = hyperbolic_toral({{{2, 1}, {1, 1}}});
  const LimitSetApprox a = accumulate(spec, 5);
  add(rows, "hyperbolic_toral", "mu", "4", mu_text(a.mu));
  add(rows, "hyperbolic_toral", "vertices", "2", std::to_string(a.vertices.size()));
  bool shared = false;
  if (a.vertices.size() == 2) shared = has_line(a, line_through(a.vertices[0].point, a.vertices[1].point));
  add(rows, "hyperbolic_toral", "line through the vertices", "present", shared ? "present" : "missing");
  for (const auto& m : {std::array<std::array<long, 2>, 2>{{{2, 1}, {1, 1}}}, std::array<std::array<long, 2>, 2>{{{3, 2}, {1, 1}}}}) {
    const SolCheck s = sol_embedding_check(hyperbolic_toral(m));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1e", s.max_residual);
    rows.push_back({"hyperbolic_toral", "sol embedding A=[[" + std::to_string(m[0][0]) + "," + std::to_string(m[0][1]) +
                                            "],[" + std::to_string(m[1][0]) + "," + std::to_string(m[1][1]) + "]]",
                    "residual < 1e-9", buf, s.passed});
  }
  return rows;
}

Rows inoue_suite() {
  Rows rows;
  const GroupSpec spec = inoue_group({{1.0, 0.0}, {0.0, 1.0}}, 0.0, 0.0, 1.0);
  std::vector<std::size_t> counts;
  for (int r = 3; r <= 5; ++r) counts.push_back(accumulate(spec, r).lines.size());
  const bool increasing = counts[0] < counts[1] && counts[1] < counts[2];
  add(rows, "inoue", "lines over radii 3,4,5", "increasing",
      (increasing ? "increasing " : "not increasing ") + std::to_string(counts[0]) + "," + std::to_string(counts[1]) +
          "," + std::to_string(counts[2]));
  rows.back().passed = increasing;
  verdict_rows(rows, "inoue", spec, "SecondKind(2)");
  return rows;
}

Rows suspension_suite() {
  Rows rows;
  const GroupSpec spec = suspension(example_schottky_pair(), {}, 2.0);
  const LimitSetApprox a = accumulate(spec, 5);
  add(rows, "suspension", "line [e2],[e3]", "present", has_line(a, line_of(1, 2)) ? "present" : "missing");
  const ProjPoint e1(1.0, 0.0, 0.0);
  int through = 0;
  for (const auto& t : a.lines)
    if (incidence(t.line, e1) < tol::kIncidence) ++through;
  rows.push_back({"suspension", "lines through [1:0:0]", ">= 10", std::to_string(through), through >= 10});
  verdict_rows(rows, "suspension", spec, "SecondKind(3)");
  const ProjLine horizon = line_of(1, 2);
  const auto pi = control_projection(spec, e1, horizon);
  const auto sigma = example_schottky_pair();
  double worst = 0.0;
  for (std::size_t k = 0; k < sigma.size(); ++k)
    worst = std::max(worst, std::abs(pi[k + 1].trace_squared() - sigma[k].trace_squared()));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1e", worst);
  rows.push_back({"suspension", "control trace^2 error", "< 1e-7", buf, worst < 1e-7});
  return rows;
}

Rows one_line_suite(const std::string& suite, const GroupSpec& spec) {
  Rows rows;
  const LimitSetApprox a = accumulate(spec, 5);
  add(rows, suite, "lambda", "Exact(1)", to_string(a.lambda));
  add(rows, suite, "mu", "1", mu_text(a.mu));
  verdict_rows(rows, suite, spec, "FirstKind(1)");
  return rows;
}

const std::map<std::string, std::function<Rows()>>& suites() {
  static const std::map<std::string, std::function<Rows()>> table{
      {"cyclic", cyclic_suite},
      {"diagonal", diagonal_suite},
      {"hyperbolic_toral", toral_suite},
      {"inoue", inoue_suite},
      {"suspension", suspension_suite},
      {"screw_line_point",
       [] {
         Rows rows;
         line_point_rows(rows, "screw_line_point", screw_line_point_group(2.0, 0.2));
         return rows;
       }},
      {"h0",
       [] {
         Rows rows;
         line_point_rows(rows, "h0", h0_group({1.0}, {2.0}));
         return rows;
       }},
      {"torus", [] { return one_line_suite("torus", torus_group({{1.0, 0.0}, {0.0, 1.0}})); }},
      {"kodaira", [] { return one_line_suite("kodaira", kodaira_group({{1.0, 0.0}, {0.0, 1.0}})); }},
      {"elliptic", [] { return one_line_suite("elliptic", elliptic_group({1.0}, {1.0})); }},
      {"unipotent_presentation",
       [] {
         Rows rows = one_line_suite("unipotent_presentation", unipotent_presentation_group(PresentationKind::G_k, 1));
         Rows more = one_line_suite("unipotent_presentation", unipotent_presentation_group(PresentationKind::G_k, 2));
         rows.insert(rows.end(), more.begin(), more.end());
         return rows;
       }},
  };
  return table;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : suites()) out.push_back(name);
  return out;
}

std::vector<VerifyRow> run_suite(const std::string& suite) {
  if (suite == "all") {
    Rows rows;
    for (const auto& [name, fn] : suites()) {
      Rows part = fn();
      rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
  }
  const auto it = suites().find(suite);
  if (it == suites().end()) throw Error(ErrorCode::ParseError, "unknown suite '" + suite + "'");
  return it->second();
}

std::string format_rows(const std::vector<VerifyRow>& rows) {
  std::string out;
  char buf[512];
  for (const auto& r : rows) {
    const std::string cell = r.check + "=" + r.measured;
    std::snprintf(buf, sizeof buf, "%-4s %-22s %-52s expected %s\n", r.passed ? "PASS" : "FAIL", r.suite.c_str(),
                  cell.c_str(), r.expected.c_str());
    out += buf;
  }
  return out;
}

int oracle_radius(const GroupSpec& spec) {
  static const std::map<std::string, int> table{
      {"torus", 40},          {"dual_torus", 40}, {"kodaira", 80},   {"elliptic", 40},          {"fake_hopf", 20},
      {"unipotent_presentation", 12}, {"diagonal", 5}, {"hyperbolic_toral", 5}, {"inoue", 5}, {"suspension", 5},
      {"screw_line_point", 20},       {"h0", 20}};
  const auto it = table.find(spec.name);
  if (it != table.end()) return spec.name == "unipotent_presentation" && spec.generators.size() == 3 ? 14 : it->second;
  return 40;
}

}  // namespace kleinian
