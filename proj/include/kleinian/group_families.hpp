#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kleinian/moebius.hpp"
#include "kleinian/projective.hpp"

namespace kleinian {

enum class Shape {
  Empty,
  OneLine,
  TwoLines,
  ThreeLinesGeneralPosition,
  ConeOverCircle,
  ConeOverPerfectSet,
  ConePlusLine,
  TwoPencilsPlusSharedLine,
  LinePlusPoint,
  AllOfP2,
  /// No a priori prediction; the limit set is measured.
  Undetermined,
};

const char* to_string(Shape s);

/// mu values of 5 and above stand for the infinite class.
inline constexpr int kMuInfinity = 5;

struct PredictedLimitSet {
  Shape shape = Shape::Undetermined;
  std::optional<int> lambda;  // nullopt: infinitely many lines
  int mu = 0;
  int isolated_points = 0;

  bool definite() const { return shape != Shape::Undetermined; }
  static PredictedLimitSet of(Shape s);
};

struct GroupSpec {
  std::string name;
  std::vector<ProjMap> generators;
  PredictedLimitSet predicted;
  /// Constructor arguments in the JSON form accepted by family_from_json.
  nlohmann::json params;
  /// Generator matrices before determinant normalization.
  std::vector<Mat3> raw;
};

/// Applies g . gamma . g^-1 to every generator; the prediction is kept.
GroupSpec conjugate(const GroupSpec& spec, const ProjMap& g);

GroupSpec elliptic_group(const std::vector<Complex>& w_basis, const std::vector<Complex>& mu);
GroupSpec torus_group(const std::vector<std::pair<Complex, Complex>>& lattice);
GroupSpec dual_torus(const std::vector<std::pair<Complex, Complex>>& lattice);
GroupSpec inoue_group(const std::vector<std::pair<Complex, Complex>>& lattice, Complex x, Complex y, Complex z);
GroupSpec kodaira_group(const std::vector<std::pair<Complex, Complex>>& pairs);
GroupSpec diagonal_group(Complex alpha, Complex beta);
GroupSpec fake_hopf(const std::vector<Complex>& w_basis, const std::vector<Complex>& mu);
GroupSpec hyperbolic_toral(const std::array<std::array<long, 2>, 2>& a);
/// Empty rho means the trivial character.
GroupSpec suspension(const std::vector<Mobius>& sigma, const std::vector<Complex>& rho, Complex alpha);
GroupSpec screw_line_point_group(Complex alpha, double theta);
GroupSpec h0_group(const std::vector<Complex>& w_basis, const std::vector<Complex>& mu);

enum class PresentationKind { Z, Z2, Z3, Z4, Delta_k, G_k };
const char* to_string(PresentationKind k);
std::optional<PresentationKind> presentation_kind_from_string(std::string_view s);

/// Unipotent integer realizations. For G_k the generators are A, B, C with
/// C central and [A,B] = C^k; Delta_k adds a second central generator D.
GroupSpec unipotent_presentation_group(PresentationKind kind, int k = 1);

/// Builds any family from its name and JSON parameters.
GroupSpec family_from_json(const std::string& family, const nlohmann::json& params);
std::vector<std::string> family_names();

struct SolElement {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
};

SolElement sol_multiply(const SolElement& a, const SolElement& b);

struct SolCheck {
  bool passed;
  double max_residual;
};

/// Maps the toral group into Sol through the eigenbasis of A and checks the
/// homomorphism property on all products of two generators or inverses.
/// Throws NotToralSpec for other specs.
SolCheck sol_embedding_check(const GroupSpec& spec, double tolerance = 1e-9);

}  // namespace kleinian
