#include "kleinian/projective.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace kleinian {

namespace {

CVec3 cross(const CVec3& a, const CVec3& b) {
  return CVec3(a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0));
}

// Fixed generic direction for the set lookup key.
const CVec3& key_direction() {
  static const CVec3 w = CVec3(Complex(0.5773, 0.1312), Complex(-0.3121, 0.6619), Complex(0.2714, -0.1893))
                             .normalized();
  return w;
}

}  // namespace

CVec3 canonical(const CVec3& v) { return canonical_form(v); }
Mat3 canonical(const Mat3& m) { return canonical_form(m); }

namespace detail {

template <class Tag>
Homogeneous<Tag>::Homogeneous(const CVec3& v) {
  if (v.cwiseAbs().maxCoeff() == 0.0 || !v.allFinite()) {
    throw Error(ErrorCode::ZeroVector, "homogeneous coordinates must be finite and nonzero");
  }
  rep_ = canonical(v);
}

template class Homogeneous<PointTag>;
template class Homogeneous<LineTag>;

}  // namespace detail

double chordal_distance(const CVec3& a, const CVec3& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 1.0;
  // |a x b| = |a||b| sin(angle) holds for the Hermitian angle as well.
  return std::min(1.0, cross(a, b).norm() / (na * nb));
}

double incidence(const ProjLine& l, const ProjPoint& p) {
  return std::abs(l.rep().cwiseProduct(p.rep()).sum()) / (l.rep().norm() * p.rep().norm());
}

ProjLine line_through(const ProjPoint& p, const ProjPoint& q) {
  if (chordal_distance(p, q) <= tol::kDedup) {
    throw Error(ErrorCode::CoincidentPoints, "line_through needs two distinct points");
  }
  return ProjLine(cross(p.rep().normalized(), q.rep().normalized()));
}

ProjPoint meet(const ProjLine& a, const ProjLine& b) {
  if (chordal_distance(a, b) <= tol::kDedup) {
    throw Error(ErrorCode::CoincidentLines, "meet needs two distinct lines");
  }
  return ProjPoint(cross(a.rep().normalized(), b.rep().normalized()));
}

bool concurrent(const ProjLine& a, const ProjLine& b, const ProjLine& c, double tolerance) {
  const ProjLine* lines[3] = {&a, &b, &c};
  int best = 0;
  double best_sep = -1.0;
  for (int k = 0; k < 3; ++k) {
    const double sep = chordal_distance(*lines[(k + 1) % 3], *lines[(k + 2) % 3]);
    if (sep > best_sep) {
      best_sep = sep;
      best = k;
    }
  }
  // All three pairwise equal: trivially concurrent.
  if (best_sep <= tol::kDedup) return true;
  const ProjPoint x = meet(*lines[(best + 1) % 3], *lines[(best + 2) % 3]);
  return incidence(*lines[best], x) < tolerance;
}

bool general_position(std::span<const ProjLine> lines) {
  const std::size_t n = lines.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (chordal_distance(lines[i], lines[j]) <= tol::kDedup)
        throw Error(ErrorCode::DuplicateLines, "general_position needs pairwise distinct lines");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (concurrent(lines[i], lines[j], lines[k])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// ProjMap

ProjMap::ProjMap() : lift_(Mat3::Identity()), canonical_(Mat3::Identity()) {}

ProjMap ProjMap::from_matrix(const Mat3& m) {
  if (!m.allFinite()) throw Error(ErrorCode::SingularMatrix, "matrix has non-finite entries");
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) throw Error(ErrorCode::SingularMatrix, "zero matrix");
  const Mat3 unit = m / scale;
  const Complex det = unit.determinant();
  // Hadamard ratio: |det| relative to the product of row norms.
  const double rows = unit.row(0).norm() * unit.row(1).norm() * unit.row(2).norm();
  if (!(std::abs(det) > 1e-15 * rows)) throw Error(ErrorCode::SingularMatrix, "matrix is not invertible");
  ProjMap out;
  // Lifts that already have determinant one are kept bit for bit.
  out.lift_ = std::abs(m.determinant() - 1.0) < 1e-13 ? m : Mat3(unit / std::pow(det, 1.0 / 3.0));
  out.canonical_ = kleinian::canonical(out.lift_);
  return out;
}

ProjMap ProjMap::inverse() const { return from_matrix(lift_.inverse()); }

ProjPoint ProjMap::apply(const ProjPoint& p) const { return ProjPoint(lift_ * p.rep()); }

ProjLine ProjMap::apply(const ProjLine& l) const {
  return ProjLine(lift_.inverse().transpose() * l.rep());
}

bool ProjMap::is_identity(double tolerance) const {
  return matrix_distance(canonical_, Mat3::Identity()) < tolerance;
}

ProjMap operator*(const ProjMap& a, const ProjMap& b) { return ProjMap::from_matrix(a.lift_ * b.lift_); }

double matrix_distance(const Mat3& a, const Mat3& b) { return (a - b).cwiseAbs().maxCoeff(); }

int numerical_rank(const Mat3& m, double relative_tolerance) {
  const Eigen::JacobiSVD<Mat3> svd(m);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < 3; ++i)
    if (s(i) > relative_tolerance * s(0)) ++rank;
  return rank;
}

Eigen::MatrixXcd null_space(const Mat3& m, int dim) {
  const Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(dim);
}

// ---------------------------------------------------------------------------
// PseudoProjMap

PseudoProjMap::PseudoProjMap(const Mat3& m) {
  if (!m.allFinite() || m.cwiseAbs().maxCoeff() == 0.0) {
    throw Error(ErrorCode::ZeroVector, "pseudo-projective map needs a nonzero finite matrix");
  }
  rep_ = kleinian::canonical(m);
  kernel_rank_ = 3 - numerical_rank(rep_);
}

KernelDescriptor PseudoProjMap::kernel() const {
  switch (kernel_rank_) {
    case 1:
      return ProjPoint(CVec3(null_space(rep_, 1).col(0)));
    case 2: {
      const Eigen::MatrixXcd k = null_space(rep_, 2);
      return ProjLine(cross(k.col(0), k.col(1)));
    }
    default:
      return std::monostate{};
  }
}

KernelDescriptor PseudoProjMap::image() const {
  const Eigen::JacobiSVD<Mat3> svd(rep_, Eigen::ComputeFullU);
  const Mat3& u = svd.matrixU();
  switch (kernel_rank_) {
    case 2:
      return ProjPoint(CVec3(u.col(0)));
    case 1:
      return ProjLine(cross(u.col(0), u.col(1)));
    default:
      return std::monostate{};
  }
}

// ---------------------------------------------------------------------------
// ProjectiveSet

template <class T>
double ProjectiveSet<T>::key(const CVec3& v) {
  return std::norm(key_direction().dot(v)) / v.squaredNorm();
}

template <class T>
long ProjectiveSet<T>::find(const T& x) const {
  // The key is 2-Lipschitz in the angle, and angle <= (pi/2) * chordal.
  const double k = key(x.rep());
  const double window = 4.0 * tolerance_ + 1e-12;
  for (auto it = index_.lower_bound(k - window); it != index_.end() && it->first <= k + window; ++it) {
    if (chordal_distance(items_[it->second].rep(), x.rep()) <= tolerance_) return static_cast<long>(it->second);
  }
  return -1;
}

template <class T>
bool ProjectiveSet<T>::insert(const T& x) {
  if (find(x) >= 0) return false;
  index_.emplace(key(x.rep()), items_.size());
  items_.push_back(x);
  return true;
}

template class ProjectiveSet<ProjPoint>;
template class ProjectiveSet<ProjLine>;

template <class T>
void canonical_sort(std::vector<T>& items) {
  auto as_tuple = [](const T& x) {
    const CVec3& r = x.rep();
    return std::make_tuple(r(0).real(), r(0).imag(), r(1).real(), r(1).imag(), r(2).real(), r(2).imag());
  };
  std::sort(items.begin(), items.end(), [&](const T& a, const T& b) { return as_tuple(a) < as_tuple(b); });
}

template void canonical_sort<ProjPoint>(std::vector<ProjPoint>&);
template void canonical_sort<ProjLine>(std::vector<ProjLine>&);

}  // namespace kleinian
