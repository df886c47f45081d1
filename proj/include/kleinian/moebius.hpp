#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <vector>

#include "kleinian/projective.hpp"

namespace kleinian {

using CVec2 = Eigen::Vector2cd;
using Mat2 = Eigen::Matrix2cd;

/// Point of P^1 in canonical homogeneous coordinates.
class P1Point {
 public:
  explicit P1Point(const CVec2& v);
  P1Point(Complex a, Complex b) : P1Point(CVec2(a, b)) {}

  const CVec2& rep() const { return rep_; }
  friend bool operator==(const P1Point& a, const P1Point& b) { return a.rep_ == b.rep_; }

 private:
  CVec2 rep_;
};

double chordal_distance(const P1Point& a, const P1Point& b);

/// Element of PSL(2,C) through a determinant-one lift (sign left as is).
class Mobius {
 public:
  Mobius();
  static Mobius from_matrix(const Mat2& m);

  const Mat2& lift() const { return lift_; }
  /// Canonical form of the lift; equal for m and -m.
  const Mat2& canonical() const { return canonical_; }
  Complex trace_squared() const;

  Mobius inverse() const;
  P1Point apply(const P1Point& p) const;

  friend Mobius operator*(const Mobius& a, const Mobius& b);

 private:
  Mat2 lift_;
  Mat2 canonical_;
};

enum class MobiusKind { Identity, Elliptic, Parabolic, Loxodromic };

const char* to_string(MobiusKind k);

MobiusKind classify_mobius(const Mobius& m);

/// Attracting fixed point first for loxodromic elements. Throws IsIdentity.
std::vector<P1Point> fixed_points(const Mobius& m);

/// Fixed points of every non-elliptic word of length <= radius, deduplicated.
std::vector<P1Point> limit_points(std::span<const Mobius> generators, int radius);

struct ElementaryResult {
  bool elementary;
  int points;  // fixed-point count at the last radius examined
  int radius;
};

/// Elementary if the fixed-point count stays <= 2 up to the given radius.
ElementaryResult is_elementary(std::span<const Mobius> generators, int radius = 6);

/// diag(3, 1/3) and its conjugate by [[1,1],[1,2]].
std::vector<Mobius> example_schottky_pair();

}  // namespace kleinian
