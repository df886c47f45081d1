#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "kleinian/element_classify.hpp"
#include "kleinian/group_families.hpp"
#include "kleinian/limit_set.hpp"
#include "kleinian/render.hpp"
#include "kleinian/serialization.hpp"
#include "kleinian/verification.hpp"

namespace {

using kleinian::Error;
using kleinian::ErrorCode;
using kleinian::Json;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitVerify = 4;

std::uint64_t oracle_seed() {
  const char* env = std::getenv("KLEINIAN_SEED");
  if (env == nullptr || *env == '\0') return 42;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "KLEINIAN_SEED must be an unsigned integer");
  }
}

// A path, "-" for stdin, or an inline JSON document.
Json read_input(const std::string& source) {
  std::string text;
  if (source == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else if (!source.empty() && (source.front() == '{' || source.front() == '[')) {
    text = source;
  } else {
    std::ifstream in(source);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + source + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

int cmd_classify(const std::string& input) {
  const kleinian::GroupSpec spec = kleinian::parse_group_spec(read_input(input));
  if (spec.generators.size() != 1)
    throw Error(ErrorCode::ParseError, "classify takes exactly one matrix, got " + std::to_string(spec.generators.size()));
  std::cout << kleinian::element_report(kleinian::classify(spec.generators.front())).dump(2) << "\n";
  return kExitOk;
}

int cmd_limitset(const std::string& input, int radius, const std::string& csv, int samples, bool verdict) {
  const kleinian::GroupSpec spec = kleinian::parse_group_spec(read_input(input));
  const kleinian::LimitSetApprox a = kleinian::accumulate(spec, radius);
  Json report = kleinian::limit_set_report(a);
  if (verdict) report["verdict"] = kleinian::verdict_report(kleinian::classify_group(spec, radius + 1));
  if (!csv.empty()) {
    const auto cloud = kleinian::orbit_oracle(spec, kleinian::oracle_radius(spec), samples, oracle_seed());
    write_file(csv, kleinian::cloud_csv(cloud));
    const auto check = kleinian::orbit_oracle_check(cloud, a);
    report["oracle"] = {{"cloud", check.cloud},     {"clusters", check.clusters}, {"outliers", check.outliers},
                        {"worst", check.worst},     {"passed", check.passed}};
  }
  std::cout << report.dump(2) << "\n";
  return kExitOk;
}

int cmd_render(const std::string& input, int radius, const std::string& chart, const std::string& axes,
               double window, int px, const std::string& out) {
  const kleinian::ChartSlice slice = kleinian::parse_chart_slice(chart, axes, window, px);
  const kleinian::GroupSpec spec = kleinian::parse_group_spec(read_input(input));
  const kleinian::LimitSetApprox a = kleinian::accumulate(spec, radius);
  const auto lines = a.plain_lines();
  const auto bytes = kleinian::render_ppm(lines, a.isolated_points, slice);
  write_file(out, std::string(bytes.begin(), bytes.end()));
  return kExitOk;
}

int cmd_verify(const std::string& suite) {
  const auto rows = kleinian::run_suite(suite);
  std::cout << kleinian::format_rows(rows);
  std::size_t failed = 0;
  for (const auto& r : rows) failed += r.passed ? 0 : 1;
  std::cout << rows.size() - failed << "/" << rows.size() << " checks passed\n";
  return failed == 0 ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elementary complex Kleinian groups in PSL(3,C)"};
  app.require_subcommand(1);

  std::string input;
  int radius = 5;

  auto* classify = app.add_subcommand("classify", "Classify a single projective transformation");
  classify->add_option("input", input, "JSON file, '-' for stdin, or inline JSON")->required();

  auto* limitset = app.add_subcommand("limitset", "Approximate the limit set of a group");
  std::string csv;
  int samples = 200;
  bool verdict = false;
  limitset->add_option("input", input, "JSON file, '-' for stdin, or inline JSON")->required();
  limitset->add_option("--radius", radius, "Word-ball radius")->check(CLI::Range(1, 60));
  limitset->add_option("--out", csv, "Write the orbit-oracle point cloud as CSV");
  limitset->add_option("--samples", samples, "Orbit-oracle seed points")->check(CLI::Range(1, 100000));
  limitset->add_flag("--verdict", verdict, "Also decide first kind / second kind / non-elementary");

  auto* render = app.add_subcommand("render", "Render the limit set in an affine chart as PPM");
  std::string chart = "z3";
  std::string axes = "re1,re2";
  double window = 3.0;
  int px = 256;
  std::string out;
  render->add_option("input", input, "JSON file, '-' for stdin, or inline JSON")->required();
  render->add_option("--radius", radius, "Word-ball radius")->check(CLI::Range(1, 60));
  render->add_option("--chart", chart, "Affine chart z1, z2 or z3");
  render->add_option("--axes", axes, "Two real axes such as re1,re2 or re1,im1");
  render->add_option("--window", window, "Half-width of the square window")->check(CLI::PositiveNumber);
  render->add_option("--px", px, "Image side in pixels")->check(CLI::Range(8, 8192));
  render->add_option("--out", out, "Output PPM file")->required();

  auto* verify = app.add_subcommand("verify", "Run the verification table");
  std::string suite = "all";
  verify->add_option("--suite", suite, "all or one of: " + [] {
    std::string names;
    for (const auto& n : kleinian::suite_names()) names += (names.empty() ? "" : ", ") + n;
    return names;
  }());

  auto* families = app.add_subcommand("families", "List family names accepted in GroupSpec JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*classify) return cmd_classify(input);
    if (*limitset) return cmd_limitset(input, radius, csv, samples, verdict);
    if (*render) return cmd_render(input, radius, chart, axes, window, px, out);
    if (*verify) return cmd_verify(suite);
    if (*families) {
      for (const auto& n : kleinian::family_names()) std::cout << n << "\n";
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::ParseError || e.code() == ErrorCode::BadChart ? kExitParse : kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
  return kExitOk;
}
