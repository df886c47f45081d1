#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "kleinian/projective.hpp"

namespace kleinian {

template <class Elem>
struct BallEntry {
  Elem element;
  int length;  // word length in the generators and their inverses
};

/// Group elements at word distance <= radius, breadth first, identity first.
///
/// Elements are deduplicated on their canonical matrices (sup-norm 1e-9), so
/// the result is the ball of the Cayley graph rather than of the free group.
/// Elem needs operator*, inverse() and canonical() returning an Eigen matrix.
/// Enumeration stops early once `max_size` elements are collected; the
/// returned `truncated` flag reports it.
template <class Elem>
struct Ball {
  std::vector<BallEntry<Elem>> entries;
  bool truncated = false;

  std::vector<Elem> elements() const {
    std::vector<Elem> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.element);
    return out;
  }
};

namespace detail {

template <class Matrix>
double ball_key(const Matrix& m) {
  double k = 0.0;
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    // Fixed irrational weights in (-1, 1).
    const double wr = std::sin(1.0 + 2.17 * static_cast<double>(i));
    const double wi = std::cos(0.3 + 1.61 * static_cast<double>(i));
    k += wr * m(i).real() + wi * m(i).imag();
  }
  return k;
}

template <class Elem>
class ElementIndex {
 public:
  /// Returns true if e was not yet present.
  bool insert(const Elem& e) {
    const auto& c = e.canonical();
    const double k = ball_key(c);
    const double window = 2.0 * static_cast<double>(c.size()) * tol::kMatrixEqual + 1e-12;
    for (auto it = index_.lower_bound(k - window); it != index_.end() && it->first <= k + window; ++it) {
      if ((stored_[it->second] - c).cwiseAbs().maxCoeff() < tol::kMatrixEqual) return false;
    }
    index_.emplace(k, stored_.size());
    stored_.push_back(c);
    return true;
  }

 private:
  using Matrix = std::decay_t<decltype(std::declval<Elem>().canonical())>;
  std::multimap<double, std::size_t> index_;
  std::vector<Matrix> stored_;
};

}  // namespace detail

template <class Elem>
Ball<Elem> enumerate_ball(std::span<const Elem> generators, int radius, std::size_t max_size = 250000) {
  Ball<Elem> ball;
  detail::ElementIndex<Elem> seen;
  ball.entries.push_back({Elem(), 0});
  seen.insert(Elem());

  std::vector<Elem> letters;
  {
    detail::ElementIndex<Elem> letter_index;
    letter_index.insert(Elem());
    for (const Elem& g : generators) {
      for (const Elem& s : {g, g.inverse()}) {
        if (letter_index.insert(s)) letters.push_back(s);
      }
    }
  }

  std::size_t frontier_begin = 0;
  for (int length = 1; length <= radius; ++length) {
    const std::size_t frontier_end = ball.entries.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (const Elem& s : letters) {
        Elem next = ball.entries[i].element * s;
        if (!seen.insert(next)) continue;
        ball.entries.push_back({std::move(next), length});
        if (ball.entries.size() >= max_size) {
          ball.truncated = true;
          return ball;
        }
      }
    }
    frontier_begin = frontier_end;
    if (frontier_begin == ball.entries.size()) break;
  }
  return ball;
}

template <class Elem>
Ball<Elem> enumerate_ball(const std::vector<Elem>& generators, int radius, std::size_t max_size = 250000) {
  return enumerate_ball(std::span<const Elem>(generators), radius, max_size);
}

}  // namespace kleinian
