#pragma once

// Violation counting. The ledger is built in one batch pass (evaluate_full)
// and kept exact under moves by re-deriving only the rows a move touches
// (Evaluator::apply / evaluate_delta).
//
// Counting rules, per entity (curriculum, or professor in one period) and day:
//  - juxtaposition: covering lectures - 1 at every slot with more than one;
//  - daily workload: occupied slots - max_daily, at the day's last occupied slot;
//  - consecutive workload: run length - max_consecutive, at each run's last slot;
//  - campus change: 1 per pair of lectures in different campi whose gap is
//    shorter than the travel time, at the later lecture's start.
// Rooms: lectures in session - rooms of the type, per period/campus/type/slot.
// Different day: per lecture, partners on the same day, at its start.
// Precedence: per lecture, predecessors not strictly earlier, at its start.

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "cbtt/ledger.hpp"
#include "cbtt/model.hpp"
#include "cbtt/schedule.hpp"

namespace cbtt {

struct Occupant {
  int start;
  int duration;
  int campus;
};

// Violations of one entity on one day; `row` has slots_per_day entries and is
// overwritten. `cover` is scratch of the same size.
inline void day_row(std::span<Occupant> occupants, int max_daily, int max_consecutive, const CampusLayout& layout,
                    std::span<int> row, std::span<int> cover) {
  const int n_k = static_cast<int>(row.size());
  std::fill(row.begin(), row.end(), 0);
  if (occupants.empty()) return;
  std::fill(cover.begin(), cover.end(), 0);
  for (const Occupant& o : occupants)
    for (int k = o.start; k < o.start + o.duration; ++k) ++cover[k];

  int occupied = 0, last = -1, run = 0;
  for (int k = 0; k < n_k; ++k) {
    if (cover[k] > 1) row[k] += cover[k] - 1;
    if (cover[k] > 0) {
      ++occupied;
      last = k;
      ++run;
    }
    if (run > 0 && (cover[k] == 0 || k == n_k - 1)) {
      const int end = cover[k] == 0 ? k - 1 : k;
      if (run > max_consecutive) row[end] += run - max_consecutive;
      run = 0;
    }
  }
  if (occupied > max_daily) row[last] += occupied - max_daily;

  if (layout.campus_count() > 1 && occupants.size() > 1) {
    std::stable_sort(occupants.begin(), occupants.end(),
                     [](const Occupant& a, const Occupant& b) { return a.start < b.start; });
    for (std::size_t a = 0; a < occupants.size(); ++a)
      for (std::size_t b = a + 1; b < occupants.size(); ++b) {
        const Occupant& first = occupants[a];
        const Occupant& second = occupants[b];
        if (first.campus == second.campus) continue;
        const int travel = layout.travel_slots(first.campus, second.campus);
        if (travel > 0 && second.start - (first.start + first.duration) < travel) row[second.start] += 1;
      }
  }
}

// Owns a schedule and its exact ledger.
class Evaluator {
 public:
  Evaluator(const Instance& inst, Schedule schedule) : inst_(&inst), schedule_(std::move(schedule)) {
    if (schedule_.size() != inst.lecture_count()) throw std::invalid_argument("schedule size does not match instance");
    if (!schedule_.fits(inst)) throw std::invalid_argument("schedule places a lecture outside its day");
    rebuild();
  }
  explicit Evaluator(const Instance& inst) : Evaluator(inst, Schedule(inst)) {}
  // Adopts a ledger the caller guarantees is exact for `schedule`.
  Evaluator(const Instance& inst, Schedule schedule, ViolationLedger exact)
      : inst_(&inst), schedule_(std::move(schedule)), ledger_(std::move(exact)) {
    init_scratch();
    for (int i = 0; i < inst_->lecture_count(); ++i)
      if (schedule_.is_added(i)) count_room_usage(i, schedule_.at(i), +1);
  }

  const Instance& instance() const { return *inst_; }
  const Schedule& schedule() const { return schedule_; }
  const ViolationLedger& ledger() const { return ledger_; }

  // Applies the move: every moved lecture is first taken out, then placed at
  // its target (an unassigned target removes it). Changed entries are
  // appended to `journal` when given.
  void apply(const Move& move, std::vector<EntryChange>* journal = nullptr) {
    for (const auto& r : move) {
      if (r.lecture < 0 || r.lecture >= inst_->lecture_count()) throw std::out_of_range("move references unknown lecture");
      if (r.to.assigned() && !fits_in_day(*inst_, r.lecture, r.to))
        throw std::invalid_argument("move places lecture '" + inst_->lecture(r.lecture).id + "' outside its day");
    }
    ledger_.set_journal(journal);
    for (const auto& r : move)
      if (schedule_.is_added(r.lecture)) detach(r.lecture);
    for (const auto& r : move)
      if (r.to.assigned()) attach(r.lecture, r.to);
    ledger_.set_journal(nullptr);
  }

  void place(int lecture, Slot slot, std::vector<EntryChange>* journal = nullptr) {
    apply(Move::relocate(lecture, slot), journal);
  }

 private:
  const Calendar& cal() const { return inst_->calendar(); }

  void init_scratch() {
    const int n_k = cal().slots_per_day;
    row_.assign(n_k, 0);
    cover_.assign(n_k, 0);
    usage_.assign(static_cast<std::size_t>(cal().periods) * inst_->layout().campus_count() *
                      inst_->layout().room_type_count() * cal().slot_count(),
                  0);
  }

  void rebuild() {
    ledger_ = ViolationLedger(*inst_);
    init_scratch();
    for (int i = 0; i < inst_->lecture_count(); ++i)
      if (schedule_.is_added(i)) count_room_usage(i, schedule_.at(i), +1);
    for (int q = 0; q < cal().periods; ++q)
      for (int c = 0; c < inst_->layout().campus_count(); ++c)
        for (int t = 0; t < inst_->layout().room_type_count(); ++t)
          for (int s = 0; s < cal().slot_count(); ++s)
            ledger_.set_room(q, c, t, s, std::max(0, usage_[usage_index(q, c, t, s)] - inst_->layout().rooms(c, t)));
    for (int l = 0; l < inst_->curriculum_count(); ++l)
      for (int d = 0; d < cal().days; ++d) refresh_curriculum(l, d);
    for (int p = 0; p < inst_->professor_count(); ++p)
      for (int q = 0; q < cal().periods; ++q)
        for (int d = 0; d < cal().days; ++d) refresh_professor(p, q, d);
    for (int i = 0; i < inst_->lecture_count(); ++i) {
      refresh_precedence(i);
      refresh_different_day(i);
    }
  }

  void detach(int i) {
    const Slot old = schedule_.at(i);
    schedule_.remove(i);
    add_room_usage(i, old, -1);
    refresh_entities(i, old.day);
    refresh_links(i);
  }

  void attach(int i, Slot to) {
    schedule_.assign(i, to);
    add_room_usage(i, to, +1);
    refresh_entities(i, to.day);
    refresh_links(i);
  }

  void refresh_entities(int i, int day) {
    for (int l : inst_->curricula_of(i)) refresh_curriculum(l, day);
    for (int p : inst_->professors_of(i)) {
      const int period = inst_->lecture(i).period;
      if (period == kBothPeriods) {
        for (int q = 0; q < cal().periods; ++q) refresh_professor(p, q, day);
      } else {
        refresh_professor(p, period, day);
      }
    }
  }

  void refresh_links(int i) {
    refresh_precedence(i);
    for (int s : inst_->successors_of(i)) refresh_precedence(s);
    refresh_different_day(i);
    for (int d : inst_->lecture(i).different_day) refresh_different_day(d);
  }

  void refresh_curriculum(int l, int day) {
    const Curriculum& c = inst_->curriculum(l);
    occupants_.clear();
    for (int i : c.lectures) collect(i, day);
    day_row(occupants_, c.max_daily, c.max_consecutive, inst_->layout(), row_, cover_);
    const int base = cal().slot_index(day, 0);
    for (int k = 0; k < cal().slots_per_day; ++k) ledger_.set_curriculum(l, base + k, row_[k]);
  }

  void refresh_professor(int p, int period, int day) {
    const Professor& prof = inst_->professor(p);
    occupants_.clear();
    for (int i : prof.lectures)
      if (inst_->lecture(i).in_period(period)) collect(i, day);
    day_row(occupants_, prof.max_daily, prof.max_consecutive, inst_->layout(), row_, cover_);
    const int base = cal().slot_index(day, 0);
    for (int k = 0; k < cal().slots_per_day; ++k) ledger_.set_professor(p, period, base + k, row_[k]);
  }

  void collect(int i, int day) {
    const Slot& s = schedule_.at(i);
    if (s.assigned() && s.day == day) occupants_.push_back({s.start, inst_->lecture(i).duration, inst_->lecture(i).campus});
  }

  void refresh_precedence(int i) {
    const Slot& at = schedule_.at(i);
    if (!at.assigned()) {
      ledger_.set_lecture_entry(Family::precedence, i, -1, 0);
      return;
    }
    int count = 0;
    for (int e : inst_->lecture(i).predecessors) {
      const Slot& before = schedule_.at(e);
      if (!before.assigned()) continue;
      if (!(before.day < at.day || (before.day == at.day && before.start < at.start))) ++count;
    }
    ledger_.set_lecture_entry(Family::precedence, i, cal().slot_index(at.day, at.start), count);
  }

  void refresh_different_day(int i) {
    const Slot& at = schedule_.at(i);
    if (!at.assigned()) {
      ledger_.set_lecture_entry(Family::different_day, i, -1, 0);
      return;
    }
    int count = 0;
    for (int d : inst_->lecture(i).different_day) {
      const Slot& other = schedule_.at(d);
      if (other.assigned() && other.day == at.day) ++count;
    }
    ledger_.set_lecture_entry(Family::different_day, i, cal().slot_index(at.day, at.start), count);
  }

  void count_room_usage(int i, Slot s, int delta) {
    const Lecture& lec = inst_->lecture(i);
    for (int q = 0; q < cal().periods; ++q) {
      if (!lec.in_period(q)) continue;
      for (int k = s.start; k < s.start + lec.duration; ++k)
        usage_[usage_index(q, lec.campus, lec.room_type, cal().slot_index(s.day, k))] += delta;
    }
  }

  void add_room_usage(int i, Slot s, int delta) {
    const Lecture& lec = inst_->lecture(i);
    const int capacity = inst_->layout().rooms(lec.campus, lec.room_type);
    for (int q = 0; q < cal().periods; ++q) {
      if (!lec.in_period(q)) continue;
      for (int k = s.start; k < s.start + lec.duration; ++k) {
        const int slot = cal().slot_index(s.day, k);
        int& used = usage_[usage_index(q, lec.campus, lec.room_type, slot)];
        used += delta;
        ledger_.set_room(q, lec.campus, lec.room_type, slot, std::max(0, used - capacity));
      }
    }
  }

  std::size_t usage_index(int period, int campus, int type, int slot) const {
    const CampusLayout& layout = inst_->layout();
    return ((static_cast<std::size_t>(period) * layout.campus_count() + campus) * layout.room_type_count() + type) *
               cal().slot_count() +
           slot;
  }

  const Instance* inst_;
  Schedule schedule_;
  ViolationLedger ledger_;
  std::vector<int> usage_;
  std::vector<int> row_, cover_;
  std::vector<Occupant> occupants_;
};

inline ViolationLedger evaluate_full(const Instance& inst, const Schedule& schedule) {
  for (int i = 0; i < schedule.size(); ++i)
    if (schedule.is_added(i) && i >= inst.lecture_count()) throw std::out_of_range("schedule assigns a lecture absent from the instance");
  return Evaluator(inst, schedule).ledger();
}

// Ledger after `move`, starting from an exact ledger for `schedule`. Only the
// rows the move touches are recomputed.
inline ViolationLedger evaluate_delta(const Instance& inst, const Schedule& schedule, const ViolationLedger& ledger,
                                      const Move& move) {
  for (const auto& r : move)
    if (r.lecture < 0 || r.lecture >= inst.lecture_count() || !schedule.is_added(r.lecture))
      throw std::invalid_argument("move references a lecture that is not added");
  Evaluator eval(inst, schedule, ledger);
  eval.apply(move);
  return eval.ledger();
}

}  // namespace cbtt
