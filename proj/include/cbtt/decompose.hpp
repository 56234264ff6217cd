#pragma once

// Curriculum increments: the solver works on a growing prefix of the
// curriculum order, adding the next curricula once the current prefix is
// feasible.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cbtt/construct.hpp"
#include "cbtt/evaluator.hpp"
#include "cbtt/rng.hpp"

namespace cbtt {

enum class IncrementKind { fixed, violations_based, none };

struct IncrementPolicy {
  IncrementKind kind = IncrementKind::none;
  int rho = 0;
  long max_violations = 0;

  static IncrementPolicy fixed(int rho) { return {IncrementKind::fixed, rho, 0}; }
  static IncrementPolicy violations(long max_violations) {
    return {IncrementKind::violations_based, 0, max_violations};
  }
  static IncrementPolicy none() { return {IncrementKind::none, 0, 0}; }
  // ρ as a percentage of the curriculum count, rounded up, at least 1.
  static IncrementPolicy fixed_fraction(double percent, int curricula) {
    return fixed(std::max(1, static_cast<int>(std::ceil(percent / 100.0 * curricula - 1e-9))));
  }

  void check() const {
    if (kind == IncrementKind::fixed && rho < 1) throw std::invalid_argument("rho must be at least 1");
    if (kind == IncrementKind::violations_based && max_violations < 0)
      throw std::invalid_argument("max_violations must be non-negative");
  }

  std::string describe() const {
    switch (kind) {
      case IncrementKind::fixed: return "fixed:" + std::to_string(rho);
      case IncrementKind::violations_based: return "violations:" + std::to_string(max_violations);
      case IncrementKind::none: return "none";
    }
    return "";
  }
};

struct IncrementResult {
  int cursor = 0;
  int added = 0;
  std::vector<int> fallbacks;
};

// Constructs the unadded lectures of one curriculum through the evaluator so
// the ledger stays exact.
inline Construction add_curriculum(const Instance& inst, Evaluator& eval, int curriculum, Rng& rng) {
  Construction plan = plan_initial_timetable(inst, eval.schedule(), curriculum, rng);
  for (const auto& [i, slot] : plan.placements) eval.place(i, slot);
  return plan;
}

inline IncrementResult fixed_increment(const Instance& inst, Evaluator& eval, std::span<const int> order, int cursor,
                                       int rho, Rng& rng) {
  if (cursor < 0 || cursor >= static_cast<int>(order.size())) throw std::out_of_range("increment cursor out of range");
  if (rho < 1) throw std::invalid_argument("rho must be at least 1");
  IncrementResult out;
  const int end = std::min<long>(static_cast<long>(cursor) + rho, static_cast<long>(order.size()));
  for (int n = cursor; n < end; ++n) {
    Construction c = add_curriculum(inst, eval, order[n], rng);
    out.fallbacks.insert(out.fallbacks.end(), c.fallbacks.begin(), c.fallbacks.end());
  }
  out.cursor = end;
  out.added = end - cursor;
  return out;
}

// Adds curricula one at a time while the violation total stays below the
// threshold; always adds at least one.
inline IncrementResult violations_increment(const Instance& inst, Evaluator& eval, std::span<const int> order,
                                            int cursor, long max_violations, Rng& rng) {
  if (cursor < 0 || cursor >= static_cast<int>(order.size())) throw std::out_of_range("increment cursor out of range");
  IncrementResult out;
  int n = cursor;
  do {
    Construction c = add_curriculum(inst, eval, order[n], rng);
    out.fallbacks.insert(out.fallbacks.end(), c.fallbacks.begin(), c.fallbacks.end());
    ++n;
  } while (n < static_cast<int>(order.size()) && eval.ledger().grand_total() < max_violations);
  out.cursor = n;
  out.added = n - cursor;
  return out;
}

inline IncrementResult run_increment(const Instance& inst, Evaluator& eval, std::span<const int> order, int cursor,
                                     const IncrementPolicy& policy, Rng& rng) {
  switch (policy.kind) {
    case IncrementKind::fixed: return fixed_increment(inst, eval, order, cursor, policy.rho, rng);
    case IncrementKind::violations_based:
      return violations_increment(inst, eval, order, cursor, policy.max_violations, rng);
    case IncrementKind::none:
      return fixed_increment(inst, eval, order, cursor, static_cast<int>(order.size()), rng);
  }
  throw std::logic_error("unknown increment kind");
}

}  // namespace cbtt
