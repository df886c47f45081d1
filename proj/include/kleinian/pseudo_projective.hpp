#pragma once

#include <optional>
#include <span>
#include <vector>

#include "kleinian/projective.hpp"
#include "kleinian/word_ball.hpp"

namespace kleinian {

enum class PowerLimitStatus {
  Converged,
  /// The normalized powers stay in PSL(3,C) (the element is scalar).
  InGroup,
  /// The normalized powers have at least two accumulation points.
  MultipleAccumulationPoints,
};

const char* to_string(PowerLimitStatus s);

struct PowerLimit {
  PowerLimitStatus status;
  std::optional<PseudoProjMap> limit;  // set iff Converged
  bool numeric = false;                // closed form rejected, powering used
};

/// Limit of canonical(m^n) as n -> infinity.
PowerLimit power_limit(const ProjMap& m);

/// One accumulation point of canonical(m^n). All accumulation points share
/// its kernel. Empty when m is scalar.
std::optional<PseudoProjMap> power_accumulation(const ProjMap& m);

/// Limit of canonical(m^n) by repeated squaring with canonicalization,
/// accepted when successive squares agree to 1e-8.
std::optional<PseudoProjMap> numeric_power_limit(const ProjMap& m);

/// Accumulation representatives of a sequence: clusters (chordal 1e-6 in P^8)
/// with at least two members, represented by their latest member.
std::vector<PseudoProjMap> sequence_limit(std::span<const ProjMap> words);

/// Chordal distance between two matrices viewed as points of P^8.
double projective_matrix_distance(const Mat3& a, const Mat3& b);

enum class LineSource { PerElement, EffectiveLine, OrbitInferred };

const char* to_string(LineSource s);

struct TaggedLine {
  ProjLine line;
  LineSource source;
};

/// Kernel lines of power accumulation points of every ball word and its
/// inverse, together with their translates v^-1 ker S (kernels of S v) for v
/// in the ball of radius min(3, radius). Canonically sorted.
std::vector<TaggedLine> effective_lines(std::span<const ProjMap> generators, int radius);

/// Same, reusing an already enumerated ball.
std::vector<TaggedLine> effective_lines(const Ball<ProjMap>& ball, int radius);

/// Point kernels of power accumulation points of ball words and inverses,
/// translated like effective_lines.
std::vector<ProjPoint> effective_points(const Ball<ProjMap>& ball, int radius);

}  // namespace kleinian
