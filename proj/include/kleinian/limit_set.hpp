#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kleinian/group_families.hpp"
#include "kleinian/moebius.hpp"
#include "kleinian/projective.hpp"
#include "kleinian/pseudo_projective.hpp"

namespace kleinian {

/// Line counts at or above this are reported as AtLeast (the infinite class).
inline constexpr int kLambdaCutoff = 50;

struct LambdaEstimate {
  int n = 0;
  bool at_least = false;  // true: AtLeast(n), otherwise Exact(n)

  static LambdaEstimate exact(int n) { return {n, false}; }
  static LambdaEstimate infinite() { return {kLambdaCutoff, true}; }
  friend bool operator==(const LambdaEstimate&, const LambdaEstimate&) = default;
};

std::string to_string(const LambdaEstimate& l);

struct Vertex {
  ProjPoint point;
  int lines;  // number of listed lines through the point
};

struct LimitSetApprox {
  std::vector<TaggedLine> lines;
  std::vector<ProjPoint> isolated_points;
  int radius_used = 0;
  LambdaEstimate lambda;
  int mu = 0;  // kMuInfinity stands for five or more
  std::vector<Vertex> vertices;
  /// Some word is an elliptic element of infinite order.
  bool everything = false;
  std::size_t ball_size = 0;
  bool ball_truncated = false;
  /// Theorem gate violations, empty when all gates pass.
  std::vector<std::string> diagnostics;

  std::vector<ProjLine> plain_lines() const;
};

LimitSetApprox accumulate(const GroupSpec& spec, int radius = 5);
LimitSetApprox accumulate(std::span<const ProjMap> generators, int radius = 5);

/// Points on at least three of the lines.
std::vector<Vertex> find_vertices(std::span<const ProjLine> lines);

/// Largest subset with no three concurrent, clamped at infinity_cutoff.
int count_mu(std::span<const ProjLine> lines, int infinity_cutoff = kMuInfinity);

/// Violations of the line-count theorem visible on a single approximation.
/// The bound on stable finite line counts is checked by classify_group.
std::vector<std::string> theorem_gates(const LimitSetApprox& a);

struct ElementaryVerdict {
  enum class Kind { FirstKind, SecondKind, NonElementary };
  Kind kind = Kind::NonElementary;
  int value = 0;  // lines for FirstKind, mu for SecondKind
  int radius_low = 0;
  int radius_high = 0;
  std::size_t lines_low = 0;
  std::size_t lines_high = 0;
  LambdaEstimate lambda_low;
  LambdaEstimate lambda_high;
  int mu_low = 0;
  int mu_high = 0;
  std::vector<std::string> diagnostics;
};

const char* to_string(ElementaryVerdict::Kind k);

/// Accumulates at max_radius - 1 and max_radius and compares.
ElementaryVerdict classify_group(const GroupSpec& spec, int max_radius = 6);

/// Mobius map induced on the horizon by projecting from p.
Mobius control_map(const ProjMap& g, const ProjPoint& p, const ProjLine& horizon);
/// One Mobius map per generator. Throws NotGloballyFixed, PointOnHorizon.
std::vector<Mobius> control_projection(const GroupSpec& spec, const ProjPoint& p, const ProjLine& horizon);

/// Points fixed by every generator. A fixed subspace of dimension two or
/// three contributes basis points. Verified by direct application (1e-8).
std::vector<ProjPoint> common_fixed_points(const GroupSpec& spec);

struct MyrbergApprox {
  std::vector<ProjLine> lines;
  std::vector<ProjPoint> points;
};

/// Effective lines plus point kernels of accumulation maps off those lines.
MyrbergApprox myrberg_approx(const GroupSpec& spec, int radius = 5);

/// Largest distance from an accumulate() line or isolated point to the
/// Myrberg approximation.
double containment_gap(const LimitSetApprox& kulkarni, const MyrbergApprox& myrberg);

/// Images of `samples` seeded random points under the words on the outermost
/// sphere of the ball: length radius, or less if deduplication saturates it.
std::vector<ProjPoint> orbit_oracle(const GroupSpec& spec, int radius, int samples, std::uint64_t seed);

/// A cluster is a cell of side 1e-2 in an affine chart holding at least
/// three cloud points; it is measured through its first point.
struct OracleCheck {
  std::size_t cloud = 0;
  std::size_t clusters = 0;
  std::size_t clustered = 0;  // cloud points inside clusters
  std::size_t outliers = 0;   // clusters farther than the tolerance from the geometry
  double worst = 0.0;         // largest cluster distance to the geometry
  bool passed = false;
};

/// Distance of a point to the union of the lines and points.
double distance_to_geometry(const ProjPoint& x, std::span<const ProjLine> lines, std::span<const ProjPoint> points);

OracleCheck orbit_oracle_check(std::span<const ProjPoint> cloud, const LimitSetApprox& a, double tolerance = 5e-2);

}  // namespace kleinian
