#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <numeric>
#include <tuple>
#include <vector>

#include "cbtt/model.hpp"
#include "cbtt/rng.hpp"

namespace cbtt {

// Degree, then ascending year, then class, then period. Missing metadata sorts
// after present values of the same tier and ties break by ascending id, so the
// result does not depend on storage order.
inline std::vector<int> ordered_sort(const Instance& inst) {
  std::vector<int> order(inst.curriculum_count());
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](int l) {
    const Curriculum& c = inst.curriculum(l);
    return std::make_tuple(c.degree.empty(), std::cref(c.degree), c.year == kUnknownYear ? INT_MAX : c.year,
                           c.class_id.empty(), std::cref(c.class_id), c.period, std::cref(c.id));
  };
  std::sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });
  return order;
}

inline std::vector<int> random_sort(const Instance& inst, std::uint64_t seed) {
  std::vector<int> order(inst.curriculum_count());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);
  return order;
}

}  // namespace cbtt
