#pragma once

#include <array>
#include <optional>
#include <vector>

#include "kleinian/projective.hpp"

namespace kleinian {

namespace tol {
/// ||lambda| - 1| below this counts as unit modulus.
inline constexpr double kUnitModulus = 1e-9;
}  // namespace tol

/// One eigenvalue cluster of a det-one lift.
struct EigenCluster {
  Complex value;
  int algebraic;  // multiplicity as a root of the characteristic polynomial
  int geometric;  // 3 - rank(M - value I)
};

struct Eigen3 {
  std::array<Complex, 3> values;       // sorted by modulus, ascending
  std::vector<EigenCluster> clusters;  // in order of first appearance in `values`
};

/// Eigenvalues of the det-one lift via Cardano, polished and clustered.
Eigen3 eigen3(const ProjMap& m);

/// Basis (columns) of ker (M - lambda I)^power.
Eigen::MatrixXcd generalized_eigenspace(const Mat3& lift, Complex lambda, int power);

enum class ElementKind {
  EllipticFiniteOrder,
  EllipticInfiniteOrder,
  ParabolicUnipotentRank1,
  ParabolicUnipotentRank2,
  ElliptoParabolic,
  ComplexHomothety,
  Screw,
  Loxoparabolic,
  StronglyLoxodromic,
};

const char* to_string(ElementKind k);
std::optional<ElementKind> element_kind_from_string(std::string_view s);

bool is_loxodromic(ElementKind k);
bool is_parabolic(ElementKind k);

struct ElementLimitSet {
  std::vector<ProjLine> lines;
  std::vector<ProjPoint> points;
  bool is_empty = false;
  bool is_everything = false;
};

struct ElementClass {
  ElementKind kind = ElementKind::EllipticFiniteOrder;
  std::optional<int> order;  // for elliptic elements of order <= cutoff
  std::array<Complex, 3> eigenvalues{};
  std::vector<ProjPoint> fixed_points;
  std::vector<ProjLine> invariant_lines;
  /// Closed-form limit set, filled by classify().
  ElementLimitSet limit_set;
  /// Some modulus comparison fell within 1e-6 of its threshold.
  bool near_boundary = false;
  bool classified = false;
};

inline constexpr int kDefaultOrderCutoff = 200;

ElementClass classify(const ProjMap& m, int order_cutoff = kDefaultOrderCutoff);

/// Throws UnclassifiedElement if c did not come from classify().
ElementLimitSet element_limit_set(const ElementClass& c);

/// Least k <= cutoff with m^k the identity in PSL(3,C).
std::optional<int> order_of(const ProjMap& m, int cutoff = kDefaultOrderCutoff);

}  // namespace kleinian
