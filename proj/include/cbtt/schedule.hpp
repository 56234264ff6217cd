#pragma once

#include <array>
#include <compare>
#include <stdexcept>
#include <vector>

#include "cbtt/model.hpp"

namespace cbtt {

// Start position of a lecture: 0-based day and 0-based slot within the day.
struct Slot {
  int day = -1;
  int start = -1;

  bool assigned() const { return day >= 0; }
  auto operator<=>(const Slot&) const = default;
};

inline constexpr Slot kUnassigned{};

// Positional form of the decision variables: every added lecture has exactly
// one start slot, unadded lectures have none.
class Schedule {
 public:
  Schedule() = default;
  explicit Schedule(int lectures) : slots_(lectures) {}
  explicit Schedule(const Instance& inst) : slots_(inst.lecture_count()) {}

  int size() const { return static_cast<int>(slots_.size()); }
  bool is_added(int lecture) const { return slots_[lecture].assigned(); }
  const Slot& at(int lecture) const { return slots_[lecture]; }
  int added_count() const { return added_; }

  void assign(int lecture, Slot slot) {
    if (!slot.assigned()) {
      remove(lecture);
      return;
    }
    if (!slots_[lecture].assigned()) ++added_;
    slots_[lecture] = slot;
  }
  void remove(int lecture) {
    if (slots_[lecture].assigned()) --added_;
    slots_[lecture] = kUnassigned;
  }

  // Every assigned lecture lies inside the calendar.
  bool fits(const Instance& inst) const {
    const Calendar& cal = inst.calendar();
    for (int i = 0; i < size(); ++i) {
      const Slot& s = slots_[i];
      if (!s.assigned()) continue;
      if (s.day >= cal.days || s.start < 0 || s.start + inst.lecture(i).duration > cal.slots_per_day) return false;
    }
    return true;
  }

  bool operator==(const Schedule& other) const { return slots_ == other.slots_; }

 private:
  std::vector<Slot> slots_;
  int added_ = 0;
};

inline bool fits_in_day(const Instance& inst, int lecture, Slot slot) {
  const Calendar& cal = inst.calendar();
  return slot.day >= 0 && slot.day < cal.days && slot.start >= 0 &&
         slot.start + inst.lecture(lecture).duration <= cal.slots_per_day;
}

// Reassignment of one lecture, or of two lectures for a swap.
struct Move {
  struct Reassignment {
    int lecture = -1;
    Slot to;
    bool operator==(const Reassignment&) const = default;
  };

  std::array<Reassignment, 2> items{};
  int count = 0;

  static Move relocate(int lecture, Slot to) {
    Move m;
    m.items[0] = {lecture, to};
    m.count = 1;
    return m;
  }
  static Move pair(int a, Slot to_a, int b, Slot to_b) {
    Move m;
    m.items[0] = {a, to_a};
    m.items[1] = {b, to_b};
    m.count = 2;
    return m;
  }

  const Reassignment* begin() const { return items.data(); }
  const Reassignment* end() const { return items.data() + count; }
  bool operator==(const Move&) const = default;
};

// Exchanges the start slots of two added lectures. A start that would push
// the longer lecture past the end of the day is pulled back to the last
// fitting start.
inline Move make_swap(const Instance& inst, const Schedule& s, int a, int b) {
  const int n_k = inst.calendar().slots_per_day;
  Slot to_a = s.at(b), to_b = s.at(a);
  to_a.start = std::min(to_a.start, n_k - inst.lecture(a).duration);
  to_b.start = std::min(to_b.start, n_k - inst.lecture(b).duration);
  return Move::pair(a, to_a, b, to_b);
}

// The move that restores the pre-move slots of every lecture `m` touches.
inline Move inverse_of(const Move& m, const Schedule& before) {
  Move inv = m;
  for (int k = 0; k < m.count; ++k) inv.items[k].to = before.at(m.items[k].lecture);
  return inv;
}

}  // namespace cbtt
