#include "kleinian/word_ball.hpp"

#include "kleinian/moebius.hpp"

namespace kleinian {

template Ball<ProjMap> enumerate_ball<ProjMap>(std::span<const ProjMap>, int, std::size_t);
template Ball<Mobius> enumerate_ball<Mobius>(std::span<const Mobius>, int, std::size_t);

}  // namespace kleinian
