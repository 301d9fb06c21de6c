#pragma once

#include <cstddef>
#include <type_traits>
#include <vector>

#include "netforge/random.hpp"

namespace netforge {

// Tree of partial sums over slot weights (Fenwick layout). Supports O(log n)
// point updates and draws a slot with probability exactly weight/total.
// Integral weights give exact proportionality; floating weights are subject
// to accumulated rounding in the internal sums.
template <typename Weight>
class WeightedSampler {
  static_assert(std::is_arithmetic_v<Weight>);

 public:
  explicit WeightedSampler(std::size_t slots, Weight initial = Weight{})
      : weights_(slots, initial), tree_(slots + 1, Weight{}) {
    top_bit_ = 1;
    while (top_bit_ * 2 <= slots) top_bit_ *= 2;
    for (std::size_t i = 0; i < slots; ++i) {
      tree_[i + 1] += initial;
      const std::size_t parent = (i + 1) + ((i + 1) & (~(i + 1) + 1));
      if (parent <= slots) tree_[parent] += tree_[i + 1];
    }
    total_ = initial * static_cast<Weight>(slots);
  }

  std::size_t size() const { return weights_.size(); }
  Weight total() const { return total_; }
  Weight weight(std::size_t slot) const { return weights_[slot]; }

  void add(std::size_t slot, Weight delta) {
    weights_[slot] += delta;
    total_ += delta;
    for (std::size_t i = slot + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }

  void set(std::size_t slot, Weight value) { add(slot, value - weights_[slot]); }

  // Smallest slot whose cumulative weight exceeds target, for target in
  // [0, total).
  std::size_t find(Weight target) const {
    std::size_t pos = 0;
    for (std::size_t step = top_bit_; step > 0; step >>= 1) {
      const std::size_t next = pos + step;
      if (next < tree_.size() && tree_[next] <= target) {
        pos = next;
        target -= tree_[next];
      }
    }
    return pos < weights_.size() ? pos : weights_.size() - 1;
  }

  std::size_t sample(RandomSource& rng) const {
    if constexpr (std::is_integral_v<Weight>) {
      return find(static_cast<Weight>(rng.uniform_index(static_cast<std::uint64_t>(total_))));
    } else {
      return find(rng.uniform_real() * total_);
    }
  }

 private:
  std::vector<Weight> weights_;
  std::vector<Weight> tree_;
  std::size_t top_bit_ = 1;
  Weight total_{};
};

}  // namespace netforge
