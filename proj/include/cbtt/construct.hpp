#pragma once

// Initial timetable of a newly added curriculum: each of its unadded lectures
// goes to the first slot, scanning forward from a random start, that keeps
// the curriculum free of juxtaposition, daily, consecutive and campus-change
// violations. Professor, room, precedence and different-day violations are
// left for the search to repair.

#include <algorithm>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cbtt/model.hpp"
#include "cbtt/rng.hpp"
#include "cbtt/schedule.hpp"

namespace cbtt {

// Occupancy of one curriculum, derived from a schedule and kept in step with
// the placements made during construction.
class WorkloadTracker {
 public:
  WorkloadTracker(const Instance& inst, const Schedule& schedule, int curriculum)
      : inst_(&inst),
        curriculum_(curriculum),
        n_k_(inst.calendar().slots_per_day),
        cover_(static_cast<std::size_t>(inst.calendar().days) * n_k_, 0),
        daily_(inst.calendar().days, 0),
        by_day_(inst.calendar().days) {
    for (int i : inst.curriculum(curriculum).lectures)
      if (schedule.is_added(i)) place(i, schedule.at(i));
  }

  // Occupied slots on a day (w'_j).
  int daily(int day) const { return daily_[day]; }

  // Length of the run of occupied slots containing [start, start + duration)
  // if a lecture of that duration were placed there (r'_ijk).
  int consecutive_if_placed(int day, int start, int duration) const {
    int left = 0;
    for (int k = start - 1; k >= 0 && covered(day, k); --k) ++left;
    int right = 0;
    for (int k = start + duration; k < n_k_ && covered(day, k); ++k) ++right;
    return left + duration + right;
  }

  bool juxtaposed(int day, int start, int duration) const {
    for (int k = start; k < start + duration; ++k)
      if (covered(day, k)) return true;
    return false;
  }

  // A lecture at (day, start) in `campus` leaves too little travel time
  // next to an already placed lecture of the curriculum.
  bool campus_conflict(int day, int start, int duration, int campus) const {
    const CampusLayout& layout = inst_->layout();
    if (layout.campus_count() < 2) return false;
    for (const auto& [other, slot] : by_day_[day]) {
      const Lecture& o = inst_->lecture(other);
      if (o.campus == campus) continue;
      const int travel = layout.travel_slots(o.campus, campus);
      if (travel == 0) continue;
      const int gap = slot.start <= start ? start - (slot.start + o.duration) : slot.start - (start + duration);
      if (gap < travel) return true;
    }
    return false;
  }

  // Conditions a construction slot must meet.
  bool admissible(int lecture, int day, int start) const {
    const Lecture& lec = inst_->lecture(lecture);
    const Curriculum& cur = inst_->curriculum(curriculum_);
    if (start < 0 || start + lec.duration > n_k_) return false;
    if (daily(day) + lec.duration > cur.max_daily) return false;
    if (juxtaposed(day, start, lec.duration)) return false;
    if (consecutive_if_placed(day, start, lec.duration) > cur.max_consecutive) return false;
    return !campus_conflict(day, start, lec.duration, lec.campus);
  }

  void place(int lecture, Slot slot) {
    const int duration = inst_->lecture(lecture).duration;
    for (int k = slot.start; k < slot.start + duration; ++k) {
      if (cover_[slot.day * n_k_ + k]++ == 0) ++daily_[slot.day];
    }
    by_day_[slot.day].emplace_back(lecture, slot);
  }

 private:
  bool covered(int day, int k) const { return cover_[day * n_k_ + k] > 0; }

  const Instance* inst_;
  int curriculum_;
  int n_k_;
  std::vector<int> cover_;
  std::vector<int> daily_;
  std::vector<std::vector<std::pair<int, Slot>>> by_day_;
};

// Latest start day (count of days) and latest start slot (count of starts)
// for the random restarts.
struct StartLimits {
  int days;
  int starts;
};

inline StartLimits default_start_limits(const Instance& inst, int curriculum) {
  const Calendar& cal = inst.calendar();
  return {cal.days, cal.slots_per_day - inst.longest_lecture(curriculum) + 1};
}

struct Construction {
  std::vector<std::pair<int, Slot>> placements;
  // Lectures for which no admissible slot existed; placed by the fallback rule.
  std::vector<int> fallbacks;

  bool fallback_used() const { return !fallbacks.empty(); }
};

// Computes the placements for the unadded lectures of `curriculum` without
// touching `schedule`.
inline Construction plan_initial_timetable(const Instance& inst, const Schedule& schedule, int curriculum, Rng& rng,
                                           std::optional<StartLimits> limits = std::nullopt) {
  const Calendar& cal = inst.calendar();
  const StartLimits lim = limits.value_or(default_start_limits(inst, curriculum));
  Construction out;

  std::vector<int> pending;
  for (int i : inst.curriculum(curriculum).lectures)
    if (!schedule.is_added(i)) pending.push_back(i);
  if (pending.empty()) return out;
  std::stable_sort(pending.begin(), pending.end(),
                   [&](int a, int b) { return inst.lecture(a).duration > inst.lecture(b).duration; });

  WorkloadTracker tracker(inst, schedule, curriculum);
  int day = rng.index(lim.days);
  int k = rng.index(lim.starts);

  for (std::size_t n = 0; n < pending.size(); ++n) {
    const int i = pending[n];
    const int c = inst.lecture(i).duration;
    std::optional<Slot> chosen;

    // Forward scan with a random restart on each day change, bounded to one
    // pass over the week.
    for (int advances = 0; !chosen && advances <= cal.days;) {
      if (k + c > cal.slots_per_day) {
        day = (day + 1) % cal.days;
        k = rng.index(lim.starts);
        ++advances;
        continue;
      }
      if (tracker.admissible(i, day, k))
        chosen = Slot{day, k};
      else
        ++k;
    }
    // The restarts may have skipped early slots; sweep the whole calendar.
    for (int dd = 0; !chosen && dd < cal.days; ++dd) {
      const int d = (day + dd) % cal.days;
      for (int kk = 0; !chosen && kk + c <= cal.slots_per_day; ++kk)
        if (tracker.admissible(i, d, kk)) chosen = Slot{d, kk};
    }
    if (!chosen) {
      int best_day = 0;
      for (int d = 1; d < cal.days; ++d)
        if (tracker.daily(d) < tracker.daily(best_day)) best_day = d;
      int start = 0;
      for (int kk = 0; kk + c <= cal.slots_per_day; ++kk)
        if (!tracker.juxtaposed(best_day, kk, c)) {
          start = kk;
          break;
        }
      chosen = Slot{best_day, start};
      out.fallbacks.push_back(i);
    }

    tracker.place(i, *chosen);
    out.placements.emplace_back(i, *chosen);
    day = chosen->day;
    k = chosen->start + c;
    if (n + 1 < pending.size() && k + inst.lecture(pending[n + 1]).duration > cal.slots_per_day) {
      day = (day + 1) % cal.days;
      k = rng.index(lim.starts);
    }
  }
  return out;
}

inline Construction construct_initial_timetable(const Instance& inst, Schedule& schedule, int curriculum, Rng& rng,
                                                std::optional<StartLimits> limits = std::nullopt) {
  Construction plan = plan_initial_timetable(inst, schedule, curriculum, rng, limits);
  for (const auto& [i, slot] : plan.placements) schedule.assign(i, slot);
  return plan;
}

// Initial schedule for a sequence of curricula, each built on top of the
// placements of the previous ones.
inline Schedule seed_initial_state(const Instance& inst, std::span<const int> curricula, Rng& rng,
                                   std::vector<int>* fallbacks = nullptr) {
  Schedule schedule(inst);
  for (int l : curricula) {
    Construction c = construct_initial_timetable(inst, schedule, l, rng);
    if (fallbacks) fallbacks->insert(fallbacks->end(), c.fallbacks.begin(), c.fallbacks.end());
  }
  return schedule;
}

}  // namespace cbtt
