#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <variant>
#include <vector>

#include "kleinian/error.hpp"

namespace kleinian {

using Complex = std::complex<double>;
using CVec3 = Eigen::Vector3cd;
using Mat3 = Eigen::Matrix3cd;

namespace tol {
/// Chordal distance below which two points (or two lines) are the same.
inline constexpr double kDedup = 1e-6;
/// Sup-norm distance between canonical matrices below which they are equal.
inline constexpr double kMatrixEqual = 1e-9;
/// Relative singular-value threshold for numerical rank.
inline constexpr double kRank = 1e-9;
/// Normalized pairing below which a point lies on a line.
inline constexpr double kIncidence = 1e-6;
}  // namespace tol

// Canonical representative of a homogeneous vector or matrix: divide by the
// entry of largest modulus, ties going to the lowest index. The pivot entry
// becomes exactly 1. Idempotent bit-for-bit.
template <class Derived>
typename Derived::PlainObject canonical_form(const Eigen::MatrixBase<Derived>& x) {
  typename Derived::PlainObject out = x;
  double largest = 0.0;
  for (Eigen::Index i = 0; i < out.size(); ++i) largest = std::max(largest, std::abs(out(i)));
  if (largest == 0.0) return out;
  // Near-ties resolve to the lowest index so rounding noise cannot move the pivot.
  Eigen::Index pivot = 0;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (std::abs(out(i)) >= largest * (1.0 - 1e-12)) {
      pivot = i;
      break;
    }
  }
  const std::complex<double> p = out(pivot);
  if (p == std::complex<double>(1.0, 0.0)) return out;
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) /= p;
  out(pivot) = 1.0;
  return out;
}

CVec3 canonical(const CVec3& v);
Mat3 canonical(const Mat3& m);

namespace detail {
struct PointTag {};
struct LineTag {};

template <class Tag>
class Homogeneous {
 public:
  explicit Homogeneous(const CVec3& v);
  Homogeneous(Complex a, Complex b, Complex c) : Homogeneous(CVec3(a, b, c)) {}

  const CVec3& rep() const { return rep_; }
  Complex operator[](int i) const { return rep_(i); }

  friend bool operator==(const Homogeneous& a, const Homogeneous& b) { return a.rep_ == b.rep_; }

 private:
  CVec3 rep_;
};

extern template class Homogeneous<PointTag>;
extern template class Homogeneous<LineTag>;
}  // namespace detail

/// A point of P^2 in canonical homogeneous coordinates.
using ProjPoint = detail::Homogeneous<detail::PointTag>;
/// A line of P^2 given by its dual coordinates; incidence is l^T p = 0.
using ProjLine = detail::Homogeneous<detail::LineTag>;

/// Fubini-Study chordal distance |sin angle| between the lifts; in [0, 1].
double chordal_distance(const CVec3& a, const CVec3& b);
inline double chordal_distance(const ProjPoint& a, const ProjPoint& b) {
  return chordal_distance(a.rep(), b.rep());
}
inline double chordal_distance(const ProjLine& a, const ProjLine& b) {
  return chordal_distance(a.rep(), b.rep());
}

/// |l^T p| / (|l| |p|): the chordal distance from p to the line l.
double incidence(const ProjLine& l, const ProjPoint& p);
inline bool is_incident(const ProjLine& l, const ProjPoint& p, double tolerance = tol::kIncidence) {
  return incidence(l, p) < tolerance;
}

ProjLine line_through(const ProjPoint& p, const ProjPoint& q);
ProjPoint meet(const ProjLine& a, const ProjLine& b);

/// True if the three lines share a point. The meet is taken on the best
/// separated pair and tested against the third line.
bool concurrent(const ProjLine& a, const ProjLine& b, const ProjLine& c,
                double tolerance = tol::kIncidence);

/// No three of the lines concurrent. Throws DuplicateLines on dedup-equal input.
bool general_position(std::span<const ProjLine> lines);

/// Element of PSL(3,C) stored through its determinant-one lift.
class ProjMap {
 public:
  /// Identity.
  ProjMap();
  /// Divides by the principal cube root of det(m). Throws SingularMatrix when
  /// |det| is below 1e-15 times the product of the row norms.
  static ProjMap from_matrix(const Mat3& m);

  const Mat3& lift() const { return lift_; }
  const Mat3& canonical() const { return canonical_; }

  ProjMap inverse() const;
  ProjPoint apply(const ProjPoint& p) const;
  /// Lines transform by the inverse transpose.
  ProjLine apply(const ProjLine& l) const;

  bool is_identity(double tolerance = tol::kMatrixEqual) const;

  friend ProjMap operator*(const ProjMap& a, const ProjMap& b);

 private:
  Mat3 lift_;
  Mat3 canonical_;
};

/// Sup-norm distance between canonical forms.
double matrix_distance(const Mat3& a, const Mat3& b);
inline bool same_map(const ProjMap& a, const ProjMap& b, double tolerance = tol::kMatrixEqual) {
  return matrix_distance(a.canonical(), b.canonical()) < tolerance;
}

int numerical_rank(const Mat3& m, double relative_tolerance = tol::kRank);

/// Orthonormal basis (columns) of the `dim` right-singular directions with
/// smallest singular values.
Eigen::MatrixXcd null_space(const Mat3& m, int dim);

using KernelDescriptor = std::variant<std::monostate, ProjPoint, ProjLine>;

/// Nonzero 3x3 matrix up to scale; possibly singular.
class PseudoProjMap {
 public:
  explicit PseudoProjMap(const Mat3& m);

  const Mat3& rep() const { return rep_; }
  int kernel_rank() const { return kernel_rank_; }
  bool is_singular() const { return kernel_rank_ > 0; }

  KernelDescriptor kernel() const;
  /// Image is a point for rank 1, a line for rank 2, everything for rank 3.
  KernelDescriptor image() const;

 private:
  Mat3 rep_;
  int kernel_rank_;
};

inline KernelDescriptor kernel(const PseudoProjMap& s) { return s.kernel(); }

/// Insertion-ordered set of points or lines with chordal dedup. Lookup goes
/// through a sorted Lipschitz key so that large sets stay cheap.
template <class T>
class ProjectiveSet {
 public:
  explicit ProjectiveSet(double tolerance = tol::kDedup) : tolerance_(tolerance) {}

  /// Returns true if x was new.
  bool insert(const T& x);
  /// Index of a stored element within tolerance, or -1.
  long find(const T& x) const;
  bool contains(const T& x) const { return find(x) >= 0; }

  const std::vector<T>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

 private:
  static double key(const CVec3& v);

  double tolerance_;
  std::vector<T> items_;
  std::multimap<double, std::size_t> index_;
};

extern template class ProjectiveSet<ProjPoint>;
extern template class ProjectiveSet<ProjLine>;

using PointSet = ProjectiveSet<ProjPoint>;
using LineSet = ProjectiveSet<ProjLine>;

/// Sorts lexicographically by canonical coordinates.
template <class T>
void canonical_sort(std::vector<T>& items);

}  // namespace kleinian
