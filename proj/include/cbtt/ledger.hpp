#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "cbtt/model.hpp"

namespace cbtt {

// Violation families, one per term group of the objective.
enum class Family : int { curriculum = 0, professor = 1, room = 2, precedence = 3, different_day = 4 };
inline constexpr int kFamilyCount = 5;

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::curriculum: return "curriculum";
    case Family::professor: return "professor";
    case Family::room: return "room";
    case Family::precedence: return "precedence";
    case Family::different_day: return "different_day";
  }
  return "?";
}

// One ledger entry changing value. `entity` is the curriculum, the professor,
// the (campus * room_types + type) cell, or the lecture, by family; `slot` is
// the calendar slot index the entry is recorded at.
struct EntryChange {
  Family family;
  int entity;
  int slot;
  int before;
  int after;
};

// Per-entity, per-slot violation counts and their running totals.
class ViolationLedger {
 public:
  ViolationLedger() = default;
  explicit ViolationLedger(const Instance& inst)
      : slots_(inst.calendar().slot_count()),
        periods_(inst.calendar().periods),
        campi_(inst.layout().campus_count()),
        types_(inst.layout().room_type_count()),
        curriculum_(static_cast<std::size_t>(inst.curriculum_count()) * slots_, 0),
        professor_(static_cast<std::size_t>(inst.professor_count()) * periods_ * slots_, 0),
        room_(static_cast<std::size_t>(periods_) * campi_ * types_ * slots_, 0),
        precedence_(inst.lecture_count(), 0),
        precedence_at_(inst.lecture_count(), -1),
        different_day_(inst.lecture_count(), 0),
        different_day_at_(inst.lecture_count(), -1),
        slot_total_(slots_, 0),
        curriculum_total_(inst.curriculum_count(), 0),
        professor_total_(inst.professor_count(), 0),
        room_cell_total_(static_cast<std::size_t>(campi_) * types_, 0) {}

  int slot_count() const { return slots_; }
  int period_count() const { return periods_; }
  int campus_count() const { return campi_; }
  int room_type_count() const { return types_; }
  int curriculum_count() const { return static_cast<int>(curriculum_total_.size()); }
  int professor_count() const { return static_cast<int>(professor_total_.size()); }
  int lecture_count() const { return static_cast<int>(precedence_.size()); }

  int curriculum(int l, int slot) const { return curriculum_[curriculum_index(l, slot)]; }
  int professor(int p, int period, int slot) const { return professor_[professor_index(p, period, slot)]; }
  int room(int period, int campus, int type, int slot) const { return room_[room_index(period, campus, type, slot)]; }
  int precedence(int lecture) const { return precedence_[lecture]; }
  int precedence_slot(int lecture) const { return precedence_at_[lecture]; }
  int different_day(int lecture) const { return different_day_[lecture]; }
  int different_day_slot(int lecture) const { return different_day_at_[lecture]; }

  long family_total(Family f) const { return family_total_[static_cast<int>(f)]; }
  const std::array<long, kFamilyCount>& family_totals() const { return family_total_; }
  long grand_total() const { return grand_total_; }
  bool feasible() const { return grand_total_ == 0; }
  long slot_total(int slot) const { return slot_total_[slot]; }
  long curriculum_total(int l) const { return curriculum_total_[l]; }
  long professor_total(int p) const { return professor_total_[p]; }
  long room_cell_total(int campus, int type) const { return room_cell_total_[campus * types_ + type]; }

  // Mutators keep every total consistent and report the change to the journal.
  void set_curriculum(int l, int slot, int value) {
    int& cell = curriculum_[curriculum_index(l, slot)];
    if (cell == value) return;
    const int before = cell;
    cell = value;
    curriculum_total_[l] += value - before;
    account(Family::curriculum, l, slot, before, value);
  }
  void set_professor(int p, int period, int slot, int value) {
    int& cell = professor_[professor_index(p, period, slot)];
    if (cell == value) return;
    const int before = cell;
    cell = value;
    professor_total_[p] += value - before;
    account(Family::professor, p, slot, before, value);
  }
  void set_room(int period, int campus, int type, int slot, int value) {
    int& cell = room_[room_index(period, campus, type, slot)];
    if (cell == value) return;
    const int before = cell;
    cell = value;
    room_cell_total_[campus * types_ + type] += value - before;
    account(Family::room, campus * types_ + type, slot, before, value);
  }
  // Per-lecture entry (precedence or different day) recorded at `slot`;
  // slot -1 means the lecture is not scheduled and the value must be 0.
  void set_lecture_entry(Family f, int lecture, int slot, int value) {
    auto& values = f == Family::precedence ? precedence_ : different_day_;
    auto& at = f == Family::precedence ? precedence_at_ : different_day_at_;
    const int before = values[lecture];
    const int old_slot = at[lecture];
    if (before == value && (old_slot == slot || value == 0)) {
      at[lecture] = slot;
      return;
    }
    if (old_slot == slot) {
      values[lecture] = value;
      account(f, lecture, slot, before, value);
    } else {
      if (before != 0) account(f, lecture, old_slot, before, 0);
      values[lecture] = value;
      if (value != 0) account(f, lecture, slot, 0, value);
    }
    at[lecture] = slot;
  }

  void set_journal(std::vector<EntryChange>* journal) { journal_ = journal; }

  // Calls fn(family, entity, slot, value) for every non-zero entry.
  template <typename Fn>
  void for_each_entry(Fn&& fn) const {
    for (int l = 0; l < curriculum_count(); ++l)
      for (int s = 0; s < slots_; ++s)
        if (int v = curriculum(l, s)) fn(Family::curriculum, l, s, v);
    for (int p = 0; p < professor_count(); ++p)
      for (int q = 0; q < periods_; ++q)
        for (int s = 0; s < slots_; ++s)
          if (int v = professor(p, q, s)) fn(Family::professor, p, s, v);
    for (int q = 0; q < periods_; ++q)
      for (int c = 0; c < campi_; ++c)
        for (int t = 0; t < types_; ++t)
          for (int s = 0; s < slots_; ++s)
            if (int v = room(q, c, t, s)) fn(Family::room, c * types_ + t, s, v);
    for (int i = 0; i < lecture_count(); ++i) {
      if (precedence_[i]) fn(Family::precedence, i, precedence_at_[i], precedence_[i]);
      if (different_day_[i]) fn(Family::different_day, i, different_day_at_[i], different_day_[i]);
    }
  }

  bool operator==(const ViolationLedger& o) const {
    if (curriculum_ != o.curriculum_ || professor_ != o.professor_ || room_ != o.room_ ||
        precedence_ != o.precedence_ || different_day_ != o.different_day_ || family_total_ != o.family_total_ ||
        grand_total_ != o.grand_total_ || slot_total_ != o.slot_total_)
      return false;
    for (int i = 0; i < lecture_count(); ++i) {
      if (precedence_[i] && precedence_at_[i] != o.precedence_at_[i]) return false;
      if (different_day_[i] && different_day_at_[i] != o.different_day_at_[i]) return false;
    }
    return true;
  }

 private:
  std::size_t curriculum_index(int l, int slot) const { return static_cast<std::size_t>(l) * slots_ + slot; }
  std::size_t professor_index(int p, int period, int slot) const {
    return (static_cast<std::size_t>(p) * periods_ + period) * slots_ + slot;
  }
  std::size_t room_index(int period, int campus, int type, int slot) const {
    return ((static_cast<std::size_t>(period) * campi_ + campus) * types_ + type) * slots_ + slot;
  }

  void account(Family f, int entity, int slot, int before, int after) {
    const long d = after - before;
    family_total_[static_cast<int>(f)] += d;
    grand_total_ += d;
    slot_total_[slot] += d;
    if (journal_) journal_->push_back({f, entity, slot, before, after});
  }

  int slots_ = 0, periods_ = 0, campi_ = 0, types_ = 0;
  std::vector<int> curriculum_, professor_, room_;
  std::vector<int> precedence_, precedence_at_, different_day_, different_day_at_;
  std::array<long, kFamilyCount> family_total_{};
  long grand_total_ = 0;
  std::vector<long> slot_total_, curriculum_total_, professor_total_, room_cell_total_;
  std::vector<EntryChange>* journal_ = nullptr;
};

// Guided-local-search feature weights. All zero when freshly constructed.
struct PenaltyVector {
  std::vector<long> curriculum;  // per curriculum
  long professor = 0;
  long room = 0;
  long precedence = 0;
  long different_day = 0;
  std::vector<long> time_slot;  // per calendar slot

  PenaltyVector() = default;
  PenaltyVector(int curricula, int slots) : curriculum(curricula, 0), time_slot(slots, 0) {}
  explicit PenaltyVector(const Instance& inst)
      : PenaltyVector(inst.curriculum_count(), inst.calendar().slot_count()) {}

  long family_weight(Family f, int entity) const {
    switch (f) {
      case Family::curriculum: return curriculum[entity];
      case Family::professor: return professor;
      case Family::room: return room;
      case Family::precedence: return precedence;
      case Family::different_day: return different_day;
    }
    return 0;
  }

  // Penalty added by one violating entry: its feature weight plus the weight
  // of the slot it is recorded at.
  long entry_weight(Family f, int entity, int slot) const { return family_weight(f, entity) + time_slot[slot]; }

  void reset() {
    std::fill(curriculum.begin(), curriculum.end(), 0);
    std::fill(time_slot.begin(), time_slot.end(), 0);
    professor = room = precedence = different_day = 0;
  }

  bool all_zero() const {
    for (long v : curriculum)
      if (v) return false;
    for (long v : time_slot)
      if (v) return false;
    return professor == 0 && room == 0 && precedence == 0 && different_day == 0;
  }

  bool operator==(const PenaltyVector&) const = default;
};

// Contribution of one entry moving from `before` to `after` to the augmented
// objective: the raw difference plus the weight toggled by the presence indicator.
inline long augmented_delta(const PenaltyVector& penalties, const EntryChange& c) {
  const long indicator = static_cast<long>(c.after > 0) - static_cast<long>(c.before > 0);
  long d = c.after - c.before;
  if (indicator != 0) d += indicator * penalties.entry_weight(c.family, c.entity, c.slot);
  return d;
}

// f'(s): every violating entry contributes its count, its feature weight and
// the weight of its slot.
inline long augmented_objective(const ViolationLedger& ledger, const PenaltyVector& penalties) {
  long value = 0;
  ledger.for_each_entry([&](Family f, int entity, int slot, int v) { value += v + penalties.entry_weight(f, entity, slot); });
  return value;
}

// Argmax selectors used by the worst-X neighbourhoods. Each set holds every
// tied maximiser and is empty when the queried family has no violation.
namespace detail {
template <typename Value>
std::vector<int> argmax(int n, Value&& value) {
  std::vector<int> best;
  long top = 0;
  for (int k = 0; k < n; ++k) {
    const long v = value(k);
    if (v <= 0 || v < top) continue;
    if (v > top) {
      top = v;
      best.clear();
    }
    best.push_back(k);
  }
  return best;
}
}  // namespace detail

inline std::vector<int> worst_slots(const ViolationLedger& ledger) {
  return detail::argmax(ledger.slot_count(), [&](int s) { return ledger.slot_total(s); });
}
inline std::vector<int> worst_curricula(const ViolationLedger& ledger) {
  return detail::argmax(ledger.curriculum_count(), [&](int l) { return ledger.curriculum_total(l); });
}
inline std::vector<int> worst_professors(const ViolationLedger& ledger) {
  return detail::argmax(ledger.professor_count(), [&](int p) { return ledger.professor_total(p); });
}
// Cells are campus * room_types + type.
inline std::vector<int> worst_room_cells(const ViolationLedger& ledger) {
  const int types = ledger.room_type_count();
  return detail::argmax(ledger.campus_count() * types,
                        [&](int cell) { return ledger.room_cell_total(cell / types, cell % types); });
}
inline std::vector<int> curriculum_worst_slots(const ViolationLedger& ledger, int l) {
  return detail::argmax(ledger.slot_count(), [&](int s) { return static_cast<long>(ledger.curriculum(l, s)); });
}
inline std::vector<int> professor_worst_slots(const ViolationLedger& ledger, int p) {
  return detail::argmax(ledger.slot_count(), [&](int s) {
    long sum = 0;
    for (int q = 0; q < ledger.period_count(); ++q) sum += ledger.professor(p, q, s);
    return sum;
  });
}
inline std::vector<int> room_worst_slots(const ViolationLedger& ledger, int campus, int type) {
  return detail::argmax(ledger.slot_count(), [&](int s) {
    long sum = 0;
    for (int q = 0; q < ledger.period_count(); ++q) sum += ledger.room(q, campus, type, s);
    return sum;
  });
}

struct WorstSelection {
  std::vector<int> slots;
  std::vector<int> curricula;
  std::vector<int> professors;
  std::vector<int> room_cells;
};

inline WorstSelection worst_selectors(const ViolationLedger& ledger) {
  return {worst_slots(ledger), worst_curricula(ledger), worst_professors(ledger), worst_room_cells(ledger)};
}

}  // namespace cbtt
