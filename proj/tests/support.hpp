#pragma once

// Test-only helpers: a violation counter written directly from the
// constraint definitions (no shared code with the evaluator), random tiny
// instances, and exhaustive enumeration of assignments.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cbtt/model.hpp"
#include "cbtt/rng.hpp"
#include "cbtt/schedule.hpp"

namespace cbtt::testing {

struct OracleCounts {
  std::array<long, 5> family{};  // curriculum, professor, room, precedence, different_day
  std::vector<long> curriculum;
  std::vector<long> professor;
  std::vector<long> room_cell;  // campus * types + type
  std::vector<long> slot;
  long total() const { return family[0] + family[1] + family[2] + family[3] + family[4]; }
};

namespace oracle_detail {

struct Interval {
  int lecture;
  int start;
  int end;  // exclusive
  int campus;
};

// Violations of one timetable owner on one day, added at absolute slots.
inline long owner_day(const Instance& inst, const std::vector<Interval>& on_day, int day, int max_daily,
                      int max_consecutive, std::vector<long>& slot_totals) {
  const Calendar& cal = inst.calendar();
  const int n = cal.slots_per_day;
  long total = 0;
  auto charge = [&](int hour, long v) {
    if (v <= 0) return;
    total += v;
    slot_totals[cal.slot_index(day, hour)] += v;
  };
  std::vector<int> count(n, 0);
  for (int k = 0; k < n; ++k)
    for (const auto& iv : on_day)
      if (iv.start <= k && k < iv.end) ++count[k];
  for (int k = 0; k < n; ++k) charge(k, count[k] - 1);

  int busy = 0, last_busy = -1;
  for (int k = 0; k < n; ++k)
    if (count[k] > 0) ++busy, last_busy = k;
  if (busy > max_daily) charge(last_busy, busy - max_daily);

  for (int k = 0; k < n;) {
    if (count[k] == 0) {
      ++k;
      continue;
    }
    int j = k;
    while (j < n && count[j] > 0) ++j;
    charge(j - 1, (j - k) - max_consecutive);
    k = j;
  }

  const CampusLayout& layout = inst.layout();
  for (std::size_t a = 0; a < on_day.size(); ++a)
    for (std::size_t b = 0; b < on_day.size(); ++b) {
      if (a == b) continue;
      const Interval& x = on_day[a];
      const Interval& y = on_day[b];
      // Each unordered pair once: x is the earlier start (ties by position).
      if (x.start > y.start || (x.start == y.start && a > b)) continue;
      if (x.campus == y.campus) continue;
      const int travel = layout.travel_slots(x.campus, y.campus);
      if (travel > 0 && y.start - x.end < travel) charge(y.start, 1);
    }
  return total;
}

}  // namespace oracle_detail

inline OracleCounts oracle_count(const Instance& inst, const Schedule& s) {
  using oracle_detail::Interval;
  const Calendar& cal = inst.calendar();
  const CampusLayout& layout = inst.layout();
  OracleCounts out;
  out.curriculum.assign(inst.curriculum_count(), 0);
  out.professor.assign(inst.professor_count(), 0);
  out.room_cell.assign(static_cast<std::size_t>(layout.campus_count()) * layout.room_type_count(), 0);
  out.slot.assign(cal.slot_count(), 0);

  auto intervals_on = [&](const std::vector<int>& lectures, int day, int period) {
    std::vector<Interval> v;
    for (int i : lectures) {
      if (!s.at(i).assigned() || s.at(i).day != day) continue;
      if (period >= 0 && !inst.lecture(i).in_period(period)) continue;
      v.push_back({i, s.at(i).start, s.at(i).start + inst.lecture(i).duration, inst.lecture(i).campus});
    }
    return v;
  };

  for (int l = 0; l < inst.curriculum_count(); ++l) {
    const Curriculum& c = inst.curriculum(l);
    for (int d = 0; d < cal.days; ++d) {
      const long v =
          oracle_detail::owner_day(inst, intervals_on(c.lectures, d, -1), d, c.max_daily, c.max_consecutive, out.slot);
      out.curriculum[l] += v;
      out.family[0] += v;
    }
  }
  for (int p = 0; p < inst.professor_count(); ++p) {
    const Professor& prof = inst.professor(p);
    for (int q = 0; q < cal.periods; ++q)
      for (int d = 0; d < cal.days; ++d) {
        const long v = oracle_detail::owner_day(inst, intervals_on(prof.lectures, d, q), d, prof.max_daily,
                                                prof.max_consecutive, out.slot);
        out.professor[p] += v;
        out.family[1] += v;
      }
  }
  for (int q = 0; q < cal.periods; ++q)
    for (int c = 0; c < layout.campus_count(); ++c)
      for (int t = 0; t < layout.room_type_count(); ++t)
        for (int slot = 0; slot < cal.slot_count(); ++slot) {
          int in_session = 0;
          for (int i = 0; i < inst.lecture_count(); ++i) {
            const Lecture& lec = inst.lecture(i);
            const Slot& at = s.at(i);
            if (!at.assigned() || !lec.in_period(q) || lec.campus != c || lec.room_type != t) continue;
            if (at.day == cal.day_of(slot) && at.start <= cal.hour_of(slot) && cal.hour_of(slot) < at.start + lec.duration)
              ++in_session;
          }
          const long v = std::max(0, in_session - layout.rooms(c, t));
          out.room_cell[c * layout.room_type_count() + t] += v;
          out.family[2] += v;
          out.slot[slot] += v;
        }
  for (int i = 0; i < inst.lecture_count(); ++i) {
    const Slot& at = s.at(i);
    if (!at.assigned()) continue;
    const int where = cal.slot_index(at.day, at.start);
    for (int e : inst.lecture(i).predecessors) {
      const Slot& before = s.at(e);
      if (!before.assigned()) continue;
      const bool earlier = before.day < at.day || (before.day == at.day && before.start < at.start);
      if (!earlier) ++out.family[3], ++out.slot[where];
    }
    for (int d : inst.lecture(i).different_day) {
      const Slot& other = s.at(d);
      if (other.assigned() && other.day == at.day) ++out.family[4], ++out.slot[where];
    }
  }
  return out;
}

struct TinyLimits {
  int max_lectures = 5;
  int max_days = 2;
  int max_slots = 6;
  int max_duration = 3;
  int max_curricula = 3;
  int max_professors = 2;
  int max_periods = 2;
  int max_campi = 2;
};

// Random valid instance within the limits.
inline Instance random_tiny_instance(Rng& rng, const TinyLimits& lim = {}) {
  Calendar cal;
  cal.days = rng.between(1, lim.max_days);
  cal.slots_per_day = rng.between(2, lim.max_slots);
  cal.periods = rng.between(1, lim.max_periods);

  CampusLayout layout;
  const int campi = rng.between(1, lim.max_campi);
  const int types = rng.between(1, 2);
  for (int c = 0; c < campi; ++c) layout.campi.push_back("c" + std::to_string(c));
  for (int t = 0; t < types; ++t) layout.room_types.push_back("t" + std::to_string(t));
  for (int k = 0; k < campi * types; ++k) layout.room_counts.push_back(rng.between(0, 2));
  layout.travel.assign(static_cast<std::size_t>(campi) * campi, 0);
  for (int a = 0; a < campi; ++a)
    for (int b = a + 1; b < campi; ++b) layout.travel_slots(a, b) = layout.travel_slots(b, a) = rng.between(0, 2);

  const int n = rng.between(1, lim.max_lectures);
  std::vector<Lecture> lectures(n);
  for (int i = 0; i < n; ++i) {
    Lecture& l = lectures[i];
    l.id = "L" + std::to_string(i);
    l.duration = rng.between(1, std::min(lim.max_duration, cal.slots_per_day));
    l.room_type = rng.index(types);
    l.campus = rng.index(campi);
    l.period = cal.periods > 1 && rng.coin() ? kBothPeriods : rng.index(cal.periods);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (rng.unit() < 0.3) {
        lectures[i].different_day.push_back(j);
        lectures[j].different_day.push_back(i);
      }
      if (rng.unit() < 0.25) {
        if (rng.coin())
          lectures[j].predecessors.push_back(i);
        else
          lectures[i].predecessors.push_back(j);
      }
    }

  // Curricula: each lecture joins at least one curriculum of a compatible period.
  const int n_cur = rng.between(1, lim.max_curricula);
  std::vector<Curriculum> curricula(n_cur);
  for (int l = 0; l < n_cur; ++l) {
    curricula[l].id = "C" + std::to_string(l);
    curricula[l].period = rng.index(cal.periods);
  }
  for (int i = 0; i < n; ++i) {
    std::vector<int> compatible;
    for (int l = 0; l < n_cur; ++l)
      if (lectures[i].in_period(curricula[l].period)) compatible.push_back(l);
    if (compatible.empty()) {
      // Keep the instance valid: the lecture takes the period of a curriculum.
      const int l = rng.index(n_cur);
      lectures[i].period = curricula[l].period;
      compatible.push_back(l);
    }
    curricula[rng.pick(compatible)].lectures.push_back(i);
    for (int l : compatible)
      if (rng.unit() < 0.3 && std::find(curricula[l].lectures.begin(), curricula[l].lectures.end(), i) ==
                                  curricula[l].lectures.end())
        curricula[l].lectures.push_back(i);
  }
  std::erase_if(curricula, [](const Curriculum& c) { return c.lectures.empty(); });
  for (auto& c : curricula) {
    std::sort(c.lectures.begin(), c.lectures.end());
    c.max_daily = rng.between(1, cal.slots_per_day);
    c.max_consecutive = rng.between(1, c.max_daily);
  }

  const int n_prof = rng.between(0, lim.max_professors);
  std::vector<Professor> professors(n_prof);
  for (int p = 0; p < n_prof; ++p) {
    professors[p].id = "P" + std::to_string(p);
    professors[p].max_daily = rng.between(1, cal.slots_per_day);
    professors[p].max_consecutive = rng.between(1, professors[p].max_daily);
    for (int i = 0; i < n; ++i)
      if (rng.unit() < 0.5) professors[p].lectures.push_back(i);
  }
  return Instance("tiny", cal, std::move(layout), std::move(lectures), std::move(curricula), std::move(professors));
}

// Curricula sharing no lecture, each with room to spare: its lecture hours
// stay within half of the week's daily allowance.
inline Instance random_disjoint_instance(Rng& rng, int curricula) {
  Calendar cal{5, rng.between(6, 12), 1};
  CampusLayout layout{{"a", "b"}, {"room"}, {3, 3}, {0, 1, 1, 0}};
  std::vector<Lecture> lectures;
  std::vector<Curriculum> cs;
  std::vector<Professor> professors;
  for (int l = 0; l < curricula; ++l) {
    Curriculum c;
    c.id = "C" + std::to_string(l);
    c.max_daily = rng.between((cal.slots_per_day + 1) / 2, cal.slots_per_day);
    c.max_consecutive = rng.between(2, c.max_daily);
    const int budget = cal.days * (c.max_daily / 2);
    int hours = 0;
    const int count = rng.between(1, 8);
    for (int n = 0; n < count; ++n) {
      const int duration = rng.between(1, std::min(3, c.max_consecutive));
      if (hours + duration > budget) break;
      hours += duration;
      Lecture lec;
      lec.id = c.id + "-" + std::to_string(n);
      lec.duration = duration;
      lec.campus = rng.index(2);
      c.lectures.push_back(static_cast<int>(lectures.size()));
      lectures.push_back(lec);
    }
    cs.push_back(c);
    professors.push_back({"P" + std::to_string(l), cal.slots_per_day, cal.slots_per_day, {c.lectures.front()}});
  }
  return Instance("disjoint", cal, std::move(layout), std::move(lectures), std::move(cs), std::move(professors));
}

inline Slot random_start(const Instance& inst, int lecture, Rng& rng) {
  const Calendar& cal = inst.calendar();
  return {rng.index(cal.days), rng.index(cal.slots_per_day - inst.lecture(lecture).duration + 1)};
}

inline Schedule random_full_schedule(const Instance& inst, Rng& rng) {
  Schedule s(inst);
  for (int i = 0; i < inst.lecture_count(); ++i) s.assign(i, random_start(inst, i, rng));
  return s;
}

// Number of complete assignments (every lecture at some fitting start).
inline std::uint64_t assignment_count(const Instance& inst) {
  std::uint64_t n = 1;
  const Calendar& cal = inst.calendar();
  for (const Lecture& l : inst.lectures()) n *= static_cast<std::uint64_t>(cal.days) * (cal.slots_per_day - l.duration + 1);
  return n;
}

// Calls fn on every complete assignment.
inline void for_each_assignment(const Instance& inst, const std::function<void(const Schedule&)>& fn) {
  const Calendar& cal = inst.calendar();
  Schedule s(inst);
  std::function<void(int)> rec = [&](int i) {
    if (i == inst.lecture_count()) {
      fn(s);
      return;
    }
    for (int d = 0; d < cal.days; ++d)
      for (int k = 0; k + inst.lecture(i).duration <= cal.slots_per_day; ++k) {
        s.assign(i, {d, k});
        rec(i + 1);
      }
    s.remove(i);
  };
  rec(0);
}

}  // namespace cbtt::testing
