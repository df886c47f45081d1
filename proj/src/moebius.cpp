#include "kleinian/moebius.hpp"

#include <cmath>

#include "kleinian/word_ball.hpp"

namespace kleinian {

namespace {

constexpr double kTraceTol = 1e-9;

CVec2 eigenvector(const Mat2& m, Complex lambda) {
  const CVec2 a(m(0, 1), lambda - m(0, 0));
  const CVec2 b(lambda - m(1, 1), m(1, 0));
  return a.norm() >= b.norm() ? a : b;
}

}  // namespace

P1Point::P1Point(const CVec2& v) {
  if (v.cwiseAbs().maxCoeff() == 0.0 || !v.allFinite()) {
    throw Error(ErrorCode::ZeroVector, "homogeneous coordinates must be finite and nonzero");
  }
  rep_ = canonical_form(v);
}

double chordal_distance(const P1Point& a, const P1Point& b) {
  const CVec2& x = a.rep();
  const CVec2& y = b.rep();
  return std::min(1.0, std::abs(x(0) * y(1) - x(1) * y(0)) / (x.norm() * y.norm()));
}

Mobius::Mobius() : lift_(Mat2::Identity()), canonical_(Mat2::Identity()) {}

Mobius Mobius::from_matrix(const Mat2& m) {
  if (!m.allFinite()) throw Error(ErrorCode::SingularMatrix, "matrix has non-finite entries");
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) throw Error(ErrorCode::SingularMatrix, "zero matrix");
  const Mat2 unit = m / scale;
  const Complex det = unit.determinant();
  if (!(std::abs(det) > 1e-15 * unit.row(0).norm() * unit.row(1).norm())) {
    throw Error(ErrorCode::SingularMatrix, "matrix is not invertible");
  }
  Mobius out;
  // Lifts that already have determinant one are kept bit for bit.
  out.lift_ = std::abs(m.determinant() - 1.0) < 1e-13 ? m : Mat2(unit / std::sqrt(det));
  out.canonical_ = canonical_form(out.lift_);
  return out;
}

Complex Mobius::trace_squared() const {
  const Complex t = lift_.trace();
  return t * t;
}

Mobius Mobius::inverse() const {
  Mat2 inv;
  inv << lift_(1, 1), -lift_(0, 1), -lift_(1, 0), lift_(0, 0);
  return from_matrix(inv);
}

P1Point Mobius::apply(const P1Point& p) const { return P1Point(lift_ * p.rep()); }

Mobius operator*(const Mobius& a, const Mobius& b) { return Mobius::from_matrix(a.lift_ * b.lift_); }

const char* to_string(MobiusKind k) {
  switch (k) {
    case MobiusKind::Identity: return "Identity";
    case MobiusKind::Elliptic: return "Elliptic";
    case MobiusKind::Parabolic: return "Parabolic";
    case MobiusKind::Loxodromic: return "Loxodromic";
  }
  return "?";
}

MobiusKind classify_mobius(const Mobius& m) {
  if ((m.canonical() - Mat2::Identity()).cwiseAbs().maxCoeff() < tol::kMatrixEqual) return MobiusKind::Identity;
  const Complex t2 = m.trace_squared();
  if (std::abs(t2 - 4.0) < kTraceTol) return MobiusKind::Parabolic;
  if (std::abs(t2.imag()) < kTraceTol && t2.real() >= 0.0 && t2.real() < 4.0) return MobiusKind::Elliptic;
  return MobiusKind::Loxodromic;
}

std::vector<P1Point> fixed_points(const Mobius& m) {
  const MobiusKind kind = classify_mobius(m);
  if (kind == MobiusKind::Identity) throw Error(ErrorCode::IsIdentity, "identity fixes every point");
  const Mat2& a = m.lift();
  const Complex t = a.trace();
  if (kind == MobiusKind::Parabolic) return {P1Point(eigenvector(a, t / 2.0))};
  const Complex s = std::sqrt(t * t - 4.0);
  Complex l1 = (t + s) / 2.0;
  Complex l2 = (t - s) / 2.0;
  if (std::abs(l1) < std::abs(l2)) std::swap(l1, l2);
  return {P1Point(eigenvector(a, l1)), P1Point(eigenvector(a, l2))};
}

std::vector<P1Point> limit_points(std::span<const Mobius> generators, int radius) {
  const auto ball = enumerate_ball(generators, radius);
  std::vector<P1Point> out;
  for (const auto& entry : ball.entries) {
    const MobiusKind kind = classify_mobius(entry.element);
    if (kind == MobiusKind::Identity || kind == MobiusKind::Elliptic) continue;
    for (const P1Point& p : fixed_points(entry.element)) {
      bool fresh = true;
      for (const P1Point& q : out) {
        if (chordal_distance(p, q) <= tol::kDedup) {
          fresh = false;
          break;
        }
      }
      if (fresh) out.push_back(p);
    }
  }
  return out;
}

ElementaryResult is_elementary(std::span<const Mobius> generators, int radius) {
  int count = 0;
  for (int r = 1; r <= radius; ++r) {
    count = static_cast<int>(limit_points(generators, r).size());
    if (count > 2) return {false, count, r};
  }
  return {true, count, radius};
}

std::vector<Mobius> example_schottky_pair() {
  Mat2 a;
  a << 3.0, 0.0, 0.0, 1.0 / 3.0;
  Mat2 g;
  g << 1.0, 1.0, 1.0, 2.0;
  const Mat2 b = g * a * g.inverse();
  return {Mobius::from_matrix(a), Mobius::from_matrix(b)};
}

}  // namespace kleinian
