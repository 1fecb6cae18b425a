#pragma once

#include <random>
#include <utility>
#include <vector>

#include "dutchdraw/measures.hpp"

namespace dutchdraw::detail {

// Partial Fisher-Yates: after the call, indices[0..k) is a uniformly random
// k-subset of the values held in `indices`. The remaining order is left
// permuted, which keeps later draws from the same buffer uniform as well.
template <class Rng>
void draw_subset(Rng& rng, std::vector<Count>& indices, Count k) {
  const Count m = static_cast<Count>(indices.size());
  for (Count i = 0; i < k; ++i) {
    std::uniform_int_distribution<Count> pick(i, m - 1);
    std::swap(indices[static_cast<std::size_t>(i)], indices[static_cast<std::size_t>(pick(rng))]);
  }
}

}  // namespace dutchdraw::detail
