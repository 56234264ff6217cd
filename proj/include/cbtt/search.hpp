#pragma once

// Hybrid search: adaptive neighbourhood selection, penalty-augmented
// acceptance, shaking on stagnation, all driven over curriculum increments.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cbtt/decompose.hpp"
#include "cbtt/evaluator.hpp"
#include "cbtt/ledger.hpp"
#include "cbtt/neighbourhoods.hpp"
#include "cbtt/rng.hpp"
#include "cbtt/schedule.hpp"

namespace cbtt {

struct StoppingCriteria {
  int s1 = 25;
  int s2 = 3;
  int s3 = 1;
  long iteration_limit = 0;  // 0: no cap
  double time_limit = 0;     // seconds, 0: no cap

  void check() const {
    if (s1 < 1 || s2 < 1 || s3 < 1) throw std::invalid_argument("s1, s2 and s3 must be at least 1");
    if (iteration_limit < 0) throw std::invalid_argument("iteration limit must be non-negative");
    if (time_limit < 0 || !std::isfinite(time_limit)) throw std::invalid_argument("time limit must be non-negative");
  }
};

struct SearchOptions {
  double swap_probability = 0.5;
  // s1 bounds consecutive non-improving iterations instead of all iterations.
  bool s1_counts_non_improving = false;
  int max_redraws = 12;

  void check() const {
    if (!(swap_probability >= 0 && swap_probability <= 1)) throw std::invalid_argument("swap probability outside [0, 1]");
    if (max_redraws < 0) throw std::invalid_argument("max_redraws must be non-negative");
  }
};

struct SearchState {
  std::array<double, kNeighbourhoodCount> probabilities;
  std::array<long, kNeighbourhoodCount> successes;
  int stagnation = 0;

  SearchState() {
    probabilities.fill(1.0 / kNeighbourhoodCount);
    successes.fill(1);
  }

  void reset_successes() { successes.fill(1); }
};

inline NeighbourhoodFamily draw_family(const std::array<double, kNeighbourhoodCount>& p, Rng& rng) {
  double total = 0;
  for (double w : p) total += w;
  const double u = rng.unit() * total;
  double acc = 0;
  int last = 0;
  for (int n = 0; n < kNeighbourhoodCount; ++n) {
    if (p[n] <= 0) continue;
    acc += p[n];
    last = n;
    if (u < acc) return static_cast<NeighbourhoodFamily>(n);
  }
  return static_cast<NeighbourhoodFamily>(last);
}

inline NeighbourhoodId select_neighbourhood(const SearchState& state, Rng& rng, double swap_probability = 0.5) {
  NeighbourhoodId id;
  id.family = draw_family(state.probabilities, rng);
  id.swap = swap_probability == 0.5 ? rng.coin() : rng.unit() < swap_probability;
  return id;
}

// Weights from the success counters and the raw family totals of the current
// ledger; worst slot uses the mean of the five totals.
inline void update_probabilities(SearchState& state, const ViolationLedger& ledger) {
  std::array<double, kNeighbourhoodCount> w{};
  double mean = 0;
  for (int f = 0; f < kFamilyCount; ++f) mean += static_cast<double>(ledger.family_total(static_cast<Family>(f)));
  mean /= kFamilyCount;
  w[0] = static_cast<double>(state.successes[0]) * mean;
  for (int n = 1; n < kNeighbourhoodCount; ++n)
    w[n] = static_cast<double>(state.successes[n]) *
           static_cast<double>(targeted_total(ledger, static_cast<NeighbourhoodFamily>(n)));
  double sum = 0;
  for (double v : w) sum += v;
  if (sum <= 0) {
    state.probabilities.fill(1.0 / kNeighbourhoodCount);
    return;
  }
  for (int n = 0; n < kNeighbourhoodCount; ++n) state.probabilities[n] = w[n] / sum;
}

// Penalty update between two consecutive local optima.
inline PenaltyVector update_penalties(const ViolationLedger& previous, const ViolationLedger& current,
                                      const PenaltyVector& penalties) {
  PenaltyVector out = penalties;
  if (augmented_objective(current, penalties) < augmented_objective(previous, penalties)) {
    out.reset();
    return out;
  }
  auto bump = [](long& lambda, long now, long before) { lambda = (now > 0 && now >= before) ? lambda + 1 : 0; };
  for (int l = 0; l < current.curriculum_count(); ++l)
    bump(out.curriculum[l], current.curriculum_total(l), previous.curriculum_total(l));
  bump(out.professor, current.family_total(Family::professor), previous.family_total(Family::professor));
  bump(out.room, current.family_total(Family::room), previous.family_total(Family::room));
  bump(out.precedence, current.family_total(Family::precedence), previous.family_total(Family::precedence));
  bump(out.different_day, current.family_total(Family::different_day), previous.family_total(Family::different_day));
  for (int s = 0; s < current.slot_count(); ++s) bump(out.time_slot[s], current.slot_total(s), previous.slot_total(s));
  return out;
}

struct MoveEvent {
  long iteration = 0;  // global, 1-based
  bool shake = false;
  NeighbourhoodId id;
  bool found = false;     // a candidate move was generated
  bool accepted = false;  // and kept
  long raw = 0;           // after the iteration
  long augmented = 0;     // under the penalties of the phase
};

enum class TraceEvent { increment, improve, penalise, shake };

inline std::string_view trace_event_name(TraceEvent e) {
  switch (e) {
    case TraceEvent::increment: return "increment";
    case TraceEvent::improve: return "improve";
    case TraceEvent::penalise: return "penalise";
    case TraceEvent::shake: return "shake";
  }
  return "";
}

struct TraceRow {
  long sequence = 0;
  int increment = 0;
  long iteration = 0;
  TraceEvent event = TraceEvent::increment;
  int added_curricula = 0;
  int added_lectures = 0;
  long raw = 0;
  long augmented = 0;
  std::array<double, kNeighbourhoodCount> probabilities{};
};

// Mutable state of one run.
struct SearchContext {
  const Instance* inst;
  Evaluator eval;
  PenaltyVector penalties;
  SearchState state;
  Rng rng;
  SearchOptions options;
  long augmented = 0;  // f' of the working schedule under `penalties`
  long iterations = 0;
  long iteration_limit = 0;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  std::function<void(const MoveEvent&)> on_move;
  std::vector<EntryChange> journal;

  // Incumbent by raw violation count.
  long best_raw = 0;
  Schedule best;

  SearchContext(const Instance& instance, Schedule schedule, std::uint64_t seed, SearchOptions opts = {})
      : inst(&instance),
        eval(instance, std::move(schedule)),
        penalties(instance),
        rng(seed),
        options(opts) {
    options.check();
    refresh_augmented();
    reset_incumbent();
  }

  const ViolationLedger& ledger() const { return eval.ledger(); }
  const Schedule& schedule() const { return eval.schedule(); }
  long raw() const { return eval.ledger().grand_total(); }

  void refresh_augmented() { augmented = augmented_objective(eval.ledger(), penalties); }
  void reset_incumbent() {
    best_raw = raw();
    best = eval.schedule();
  }
  void note_incumbent() {
    if (raw() < best_raw) {
      best_raw = raw();
      best = eval.schedule();
    }
  }

  bool out_of_budget() const {
    if (iteration_limit > 0 && iterations >= iteration_limit) return true;
    return deadline && std::chrono::steady_clock::now() >= *deadline;
  }

  // A move from an applicable neighbourhood, redrawing inapplicable or empty
  // draws before falling back to the worst slot.
  std::pair<NeighbourhoodId, std::optional<Move>> draw_move() {
    for (int attempt = 0; attempt < options.max_redraws; ++attempt) {
      const NeighbourhoodId id = select_neighbourhood(state, rng, options.swap_probability);
      if (!applicable(ledger(), id.family)) continue;
      if (auto m = search_neighbourhood(*inst, schedule(), ledger(), id, rng)) return {id, m};
    }
    NeighbourhoodId id{NeighbourhoodFamily::worst_slot, options.swap_probability == 0.5
                                                            ? rng.coin()
                                                            : rng.unit() < options.swap_probability};
    return {id, search_neighbourhood(*inst, schedule(), ledger(), id, rng)};
  }

  long apply_journaled(const Move& m) {
    journal.clear();
    eval.apply(m, &journal);
    long delta = 0;
    for (const auto& c : journal) delta += augmented_delta(penalties, c);
    return delta;
  }
};

// One ALNS phase. Returns the number of iterations spent.
inline long alns(SearchContext& ctx, int s1) {
  if (s1 < 1) throw std::invalid_argument("s1 must be at least 1");
  long spent = 0, non_improving = 0;
  while (!ctx.ledger().feasible() && !ctx.out_of_budget()) {
    if (ctx.options.s1_counts_non_improving ? non_improving >= s1 : spent >= s1) break;
    ++spent;
    ++ctx.iterations;
    auto [id, move] = ctx.draw_move();
    bool accepted = false, improved = false;
    if (move) {
      const Move undo = inverse_of(*move, ctx.schedule());
      const long delta = ctx.apply_journaled(*move);
      if (delta <= 0) {
        accepted = true;
        ctx.augmented += delta;
        if (delta < 0) {
          improved = true;
          ++ctx.state.successes[static_cast<int>(id.family)];
        }
      } else {
        ctx.eval.apply(undo);
      }
    }
    non_improving = improved ? 0 : non_improving + 1;
    update_probabilities(ctx.state, ctx.ledger());
    ctx.note_incumbent();
    if (ctx.on_move) ctx.on_move({ctx.iterations, false, id, move.has_value(), accepted, ctx.raw(), ctx.augmented});
  }
  ctx.state.reset_successes();
  return spent;
}

// Unconditional moves. Returns the number of moves applied.
inline long shake(SearchContext& ctx, int s3) {
  if (s3 < 1) throw std::invalid_argument("s3 must be at least 1");
  long applied = 0;
  for (int it = 0; it < s3 && !ctx.ledger().feasible() && !ctx.out_of_budget(); ++it) {
    ++ctx.iterations;
    auto [id, move] = ctx.draw_move();
    if (move) {
      ctx.augmented += ctx.apply_journaled(*move);
      ++applied;
    }
    update_probabilities(ctx.state, ctx.ledger());
    ctx.note_incumbent();
    if (ctx.on_move) ctx.on_move({ctx.iterations, true, id, move.has_value(), move.has_value(), ctx.raw(), ctx.augmented});
  }
  return applied;
}

struct SolveOptions {
  SearchOptions search;
  std::function<void(const MoveEvent&)> on_move;
};

struct SolveResult {
  bool feasible = false;
  // Every curriculum was added before the run stopped.
  bool complete = false;
  std::string stop_reason;  // "feasible", "iteration_limit" or "time_limit"
  Schedule schedule;
  ViolationLedger ledger;
  long iterations = 0;
  long phases = 0;
  long shakes = 0;
  int increments = 0;
  double seconds = 0;
  std::vector<TraceRow> trace;
  std::vector<int> fallbacks;
};

inline SolveResult solve(const Instance& inst, std::span<const int> order, const IncrementPolicy& policy,
                         const StoppingCriteria& criteria, std::uint64_t seed, const SolveOptions& options = {}) {
  criteria.check();
  policy.check();
  {
    std::vector<char> seen(inst.curriculum_count(), 0);
    for (int l : order) {
      if (l < 0 || l >= inst.curriculum_count() || seen[l]) throw std::invalid_argument("order is not a permutation of the curricula");
      seen[l] = 1;
    }
    if (static_cast<int>(order.size()) != inst.curriculum_count())
      throw std::invalid_argument("order does not cover every curriculum");
  }

  const auto started = std::chrono::steady_clock::now();
  SearchContext ctx(inst, Schedule(inst), seed, options.search);
  ctx.iteration_limit = criteria.iteration_limit;
  ctx.on_move = options.on_move;
  if (criteria.time_limit > 0)
    ctx.deadline = started + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                 std::chrono::duration<double>(criteria.time_limit));

  SolveResult result;
  int cursor = 0;
  long sequence = 0;
  auto record = [&](TraceEvent e) {
    TraceRow row;
    row.sequence = ++sequence;
    row.increment = result.increments;
    row.iteration = ctx.iterations;
    row.event = e;
    row.added_curricula = cursor;
    row.added_lectures = ctx.schedule().added_count();
    row.raw = ctx.raw();
    row.augmented = ctx.augmented;
    row.probabilities = ctx.state.probabilities;
    result.trace.push_back(row);
  };

  bool capped = false;
  while (cursor < static_cast<int>(order.size()) && !capped) {
    IncrementResult inc = run_increment(inst, ctx.eval, order, cursor, policy, ctx.rng);
    cursor = inc.cursor;
    ++result.increments;
    result.fallbacks.insert(result.fallbacks.end(), inc.fallbacks.begin(), inc.fallbacks.end());
    ctx.penalties.reset();
    ctx.refresh_augmented();
    ctx.state.stagnation = 0;
    ctx.reset_incumbent();
    update_probabilities(ctx.state, ctx.ledger());
    record(TraceEvent::increment);

    while (!ctx.ledger().feasible()) {
      if (ctx.out_of_budget()) {
        capped = true;
        break;
      }
      const ViolationLedger before = ctx.ledger();
      alns(ctx, criteria.s1);
      ++result.phases;
      ctx.penalties = update_penalties(before, ctx.ledger(), ctx.penalties);
      ctx.refresh_augmented();
      const bool improved = ctx.raw() < before.grand_total();
      ctx.state.stagnation = improved ? 0 : ctx.state.stagnation + 1;
      record(improved ? TraceEvent::improve : TraceEvent::penalise);
      if (ctx.state.stagnation > criteria.s2 && !ctx.ledger().feasible()) {
        shake(ctx, criteria.s3);
        ++result.shakes;
        ctx.state.stagnation = 0;
        record(TraceEvent::shake);
      }
    }
  }

  result.iterations = ctx.iterations;
  result.complete = cursor == static_cast<int>(order.size());
  if (capped) {
    result.schedule = ctx.best;
    result.ledger = evaluate_full(inst, ctx.best);
    result.stop_reason = ctx.iteration_limit > 0 && ctx.iterations >= ctx.iteration_limit ? "iteration_limit" : "time_limit";
  } else {
    result.schedule = ctx.schedule();
    result.ledger = ctx.ledger();
    result.stop_reason = "feasible";
  }
  result.feasible = result.complete && result.ledger.feasible();
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

}  // namespace cbtt
