#pragma once

// The six neighbourhood structures. Each picks a lecture involved in the
// violations it targets and either sends it to a random slot (non-swap) or
// exchanges its slot with a partner lecture (swap). A search returns nullopt
// when it has nothing to work on; the caller redraws.

#include <array>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "cbtt/ledger.hpp"
#include "cbtt/model.hpp"
#include "cbtt/rng.hpp"
#include "cbtt/schedule.hpp"

namespace cbtt {

enum class NeighbourhoodFamily : int {
  worst_slot = 0,
  worst_curriculum = 1,
  worst_professor = 2,
  worst_room_type = 3,
  different_day = 4,
  precedence = 5,
};
inline constexpr int kNeighbourhoodCount = 6;

inline std::string_view neighbourhood_name(NeighbourhoodFamily n) {
  static constexpr std::array<std::string_view, kNeighbourhoodCount> names{
      "worst_slot", "worst_curriculum", "worst_professor", "worst_room_type", "different_day", "precedence"};
  return names[static_cast<int>(n)];
}

struct NeighbourhoodId {
  NeighbourhoodFamily family = NeighbourhoodFamily::worst_slot;
  bool swap = false;
  bool operator==(const NeighbourhoodId&) const = default;
};

// Violation family a neighbourhood targets; worst slot targets all of them.
inline std::optional<Family> targeted_family(NeighbourhoodFamily n) {
  switch (n) {
    case NeighbourhoodFamily::worst_slot: return std::nullopt;
    case NeighbourhoodFamily::worst_curriculum: return Family::curriculum;
    case NeighbourhoodFamily::worst_professor: return Family::professor;
    case NeighbourhoodFamily::worst_room_type: return Family::room;
    case NeighbourhoodFamily::different_day: return Family::different_day;
    case NeighbourhoodFamily::precedence: return Family::precedence;
  }
  return std::nullopt;
}

inline long targeted_total(const ViolationLedger& ledger, NeighbourhoodFamily n) {
  auto f = targeted_family(n);
  return f ? ledger.family_total(*f) : ledger.grand_total();
}

inline bool applicable(const ViolationLedger& ledger, NeighbourhoodFamily n) { return targeted_total(ledger, n) > 0; }

namespace detail {

inline bool covers(const Instance& inst, const Schedule& s, int lecture, int slot_index) {
  const Slot& at = s.at(lecture);
  if (!at.assigned()) return false;
  const Calendar& cal = inst.calendar();
  const int day = cal.day_of(slot_index), hour = cal.hour_of(slot_index);
  return at.day == day && at.start <= hour && hour < at.start + inst.lecture(lecture).duration;
}

template <typename Range>
std::vector<int> covering(const Instance& inst, const Schedule& s, const Range& lectures, int slot_index) {
  std::vector<int> out;
  for (int i : lectures)
    if (covers(inst, s, i, slot_index)) out.push_back(i);
  return out;
}

inline std::vector<int> all_covering(const Instance& inst, const Schedule& s, int slot_index) {
  std::vector<int> out;
  for (int i = 0; i < inst.lecture_count(); ++i)
    if (covers(inst, s, i, slot_index)) out.push_back(i);
  return out;
}

// Partner for a swap: a random curriculum of `lecture`, then a random other
// added lecture of that curriculum passing `accept`.
template <typename Accept>
std::optional<int> curriculum_partner(const Instance& inst, const Schedule& s, int lecture, Rng& rng, Accept&& accept) {
  const auto& curricula = inst.curricula_of(lecture);
  if (curricula.empty()) return std::nullopt;
  const int l = rng.pick(curricula);
  std::vector<int> candidates;
  for (int i : inst.curriculum(l).lectures)
    if (i != lecture && s.is_added(i) && accept(i)) candidates.push_back(i);
  if (candidates.empty()) return std::nullopt;
  return rng.pick(candidates);
}

inline std::optional<int> curriculum_partner(const Instance& inst, const Schedule& s, int lecture, Rng& rng) {
  return curriculum_partner(inst, s, lecture, rng, [](int) { return true; });
}

inline std::optional<Move> relocate_or_swap(const Instance& inst, const Schedule& s, int lecture,
                                            std::optional<int> partner, bool swap, Rng& rng);

}  // namespace detail

// Uniform day and a uniform start among those that keep the lecture in its day.
inline Slot random_slot(const Instance& inst, int lecture, Rng& rng) {
  const Calendar& cal = inst.calendar();
  return {rng.index(cal.days), rng.index(cal.slots_per_day - inst.lecture(lecture).duration + 1)};
}

namespace detail {
inline std::optional<Move> relocate_or_swap(const Instance& inst, const Schedule& s, int lecture,
                                            std::optional<int> partner, bool swap, Rng& rng) {
  if (!swap) return Move::relocate(lecture, random_slot(inst, lecture, rng));
  if (!partner) return std::nullopt;
  return make_swap(inst, s, lecture, *partner);
}
}  // namespace detail

inline std::optional<Move> search_worst_slot(const Instance& inst, const Schedule& s, const ViolationLedger& ledger,
                                             bool swap, Rng& rng) {
  const auto slots = worst_slots(ledger);
  if (slots.empty()) return std::nullopt;
  const auto lectures = detail::all_covering(inst, s, rng.pick(slots));
  if (lectures.empty()) return std::nullopt;
  const int chosen = rng.pick(lectures);
  std::optional<int> partner;
  if (swap) partner = detail::curriculum_partner(inst, s, chosen, rng);
  return detail::relocate_or_swap(inst, s, chosen, partner, swap, rng);
}

inline std::optional<Move> search_worst_curriculum(const Instance& inst, const Schedule& s,
                                                   const ViolationLedger& ledger, bool swap, Rng& rng) {
  const auto worst = worst_curricula(ledger);
  if (worst.empty()) return std::nullopt;
  const int l = rng.pick(worst);
  const auto slots = curriculum_worst_slots(ledger, l);
  if (slots.empty()) return std::nullopt;
  const auto lectures = detail::covering(inst, s, inst.curriculum(l).lectures, rng.pick(slots));
  if (lectures.empty()) return std::nullopt;
  const int chosen = rng.pick(lectures);
  std::optional<int> partner;
  if (swap) {
    std::vector<int> candidates;
    for (int i : inst.curriculum(l).lectures)
      if (i != chosen && s.is_added(i)) candidates.push_back(i);
    if (!candidates.empty()) partner = rng.pick(candidates);
  }
  return detail::relocate_or_swap(inst, s, chosen, partner, swap, rng);
}

inline std::optional<Move> search_worst_professor(const Instance& inst, const Schedule& s,
                                                  const ViolationLedger& ledger, bool swap, Rng& rng) {
  const auto worst = worst_professors(ledger);
  if (worst.empty()) return std::nullopt;
  const int p = rng.pick(worst);
  const auto slots = professor_worst_slots(ledger, p);
  if (slots.empty()) return std::nullopt;
  const auto lectures = detail::covering(inst, s, inst.professor(p).lectures, rng.pick(slots));
  if (lectures.empty()) return std::nullopt;
  const int chosen = rng.pick(lectures);
  std::optional<int> partner;
  if (swap) partner = detail::curriculum_partner(inst, s, chosen, rng);
  return detail::relocate_or_swap(inst, s, chosen, partner, swap, rng);
}

inline std::optional<Move> search_worst_room_type(const Instance& inst, const Schedule& s,
                                                  const ViolationLedger& ledger, bool swap, Rng& rng) {
  const auto cells = worst_room_cells(ledger);
  if (cells.empty()) return std::nullopt;
  const int types = inst.layout().room_type_count();
  const int cell = rng.pick(cells);
  const int campus = cell / types, type = cell % types;
  const auto slots = room_worst_slots(ledger, campus, type);
  if (slots.empty()) return std::nullopt;
  const auto lectures = detail::covering(inst, s, inst.lectures_in_rooms(campus, type), rng.pick(slots));
  if (lectures.empty()) return std::nullopt;
  const int chosen = rng.pick(lectures);
  std::optional<int> partner;
  if (swap)
    partner = detail::curriculum_partner(inst, s, chosen, rng, [&](int i) { return inst.lecture(i).room_type != type; });
  return detail::relocate_or_swap(inst, s, chosen, partner, swap, rng);
}

inline std::optional<Move> search_different_day(const Instance& inst, const Schedule& s, const ViolationLedger& ledger,
                                                bool swap, Rng& rng) {
  std::vector<int> violating;
  for (int i = 0; i < inst.lecture_count(); ++i)
    if (ledger.different_day(i) > 0) violating.push_back(i);
  if (violating.empty()) return std::nullopt;
  const int chosen = rng.pick(violating);
  const Calendar& cal = inst.calendar();
  const int day = s.at(chosen).day;
  if (!swap) {
    if (cal.days < 2) return std::nullopt;
    int other = rng.index(cal.days - 1);
    if (other >= day) ++other;
    return Move::relocate(chosen, {other, rng.index(cal.slots_per_day - inst.lecture(chosen).duration + 1)});
  }
  auto partner = detail::curriculum_partner(inst, s, chosen, rng, [&](int i) { return s.at(i).day != day; });
  if (!partner) return std::nullopt;
  return make_swap(inst, s, chosen, *partner);
}

// Violated (predecessor, successor) pairs.
inline std::vector<std::pair<int, int>> violated_precedences(const Instance& inst, const Schedule& s,
                                                             const ViolationLedger& ledger) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < inst.lecture_count(); ++i) {
    if (ledger.precedence(i) == 0) continue;
    const Slot& after = s.at(i);
    for (int e : inst.lecture(i).predecessors) {
      const Slot& before = s.at(e);
      if (!before.assigned()) continue;
      if (!(before.day < after.day || (before.day == after.day && before.start < after.start))) pairs.emplace_back(e, i);
    }
  }
  return pairs;
}

inline std::optional<Move> search_precedence(const Instance& inst, const Schedule& s, const ViolationLedger& ledger,
                                             bool swap, Rng& rng) {
  const auto pairs = violated_precedences(inst, s, ledger);
  if (pairs.empty()) return std::nullopt;
  const auto [before, after] = rng.pick(pairs);
  if (!swap) {
    const Calendar& cal = inst.calendar();
    const Slot target = s.at(after);
    const int last_start = cal.slots_per_day - inst.lecture(before).duration;
    // Days strictly before the successor's day accept any fitting start; its
    // own day only starts before the successor's start.
    const int same_day_last = std::min(target.start - 1, last_start);
    const int days = target.day + (same_day_last >= 0 ? 1 : 0);
    if (days > 0) {
      const int day = rng.index(days);
      const int start = day < target.day ? rng.index(last_start + 1) : rng.index(same_day_last + 1);
      return Move::relocate(before, {day, start});
    }
    // No earlier slot exists: fall through to the swap.
  }
  return make_swap(inst, s, before, after);
}

inline std::optional<Move> search_neighbourhood(const Instance& inst, const Schedule& s, const ViolationLedger& ledger,
                                                NeighbourhoodId id, Rng& rng) {
  switch (id.family) {
    case NeighbourhoodFamily::worst_slot: return search_worst_slot(inst, s, ledger, id.swap, rng);
    case NeighbourhoodFamily::worst_curriculum: return search_worst_curriculum(inst, s, ledger, id.swap, rng);
    case NeighbourhoodFamily::worst_professor: return search_worst_professor(inst, s, ledger, id.swap, rng);
    case NeighbourhoodFamily::worst_room_type: return search_worst_room_type(inst, s, ledger, id.swap, rng);
    case NeighbourhoodFamily::different_day: return search_different_day(inst, s, ledger, id.swap, rng);
    case NeighbourhoodFamily::precedence: return search_precedence(inst, s, ledger, id.swap, rng);
  }
  return std::nullopt;
}

}  // namespace cbtt
