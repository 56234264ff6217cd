#pragma once

// Generator for instances that are feasible by construction. A witness
// timetable is planted first and every constraint is derived so the witness
// satisfies it: curricula follow degree/year/class/trimester structure,
// classes of the same year share most of their lectures, room counts equal
// the witness peak (times a slack factor), professors are assigned only where
// free, and different-day and precedence pairs only link lectures the
// witness already separates.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cbtt/model.hpp"
#include "cbtt/rng.hpp"
#include "cbtt/schedule.hpp"

namespace cbtt {

struct SyntheticSpec {
  std::string name = "synthetic";
  int degrees = 10;
  int years = 5;
  int classes = 2;  // per (degree, year)
  int days = 5;
  int slots_per_day = 10;
  int campi = 2;
  int travel = 1;
  int room_types = 3;
  int semester_courses = 1;  // per (degree, year), shared, both trimesters
  int shared_courses = 3;    // per (degree, year, trimester), shared by every class
  int own_courses = 2;       // per (class, trimester)
  int elective_pool = 0;     // per (degree, year, trimester)
  int electives_taken = 0;   // per (class, trimester), drawn from the pool
  int min_lectures = 1;      // per course
  int max_lectures = 2;
  int min_duration = 1;
  int max_duration = 2;
  int max_daily = 6;
  int max_consecutive = 4;
  int degrees_per_department = 2;  // professors are drawn from a department pool
  int professor_load = 0;          // slots per week and trimester, 0: no cap
  // Valid witness slots sampled per lecture; the one with the lowest room
  // usage wins, which flattens the room profile the counts are derived from.
  int room_candidates = 1;
  double room_slack = 0.0;
  double different_day_probability = 0.5;
  double precedence_probability = 0.3;

  void check() const {
    auto positive = [](int v, const char* what) {
      if (v < 1) throw std::invalid_argument(std::string(what) + " must be at least 1");
    };
    positive(degrees, "degrees");
    positive(years, "years");
    positive(classes, "classes");
    positive(days, "days");
    positive(slots_per_day, "slots_per_day");
    positive(campi, "campi");
    positive(room_types, "room_types");
    positive(min_lectures, "min_lectures");
    positive(min_duration, "min_duration");
    positive(max_consecutive, "max_consecutive");
    positive(degrees_per_department, "degrees_per_department");
    positive(room_candidates, "room_candidates");
    if (max_lectures < min_lectures || max_duration < min_duration) throw std::invalid_argument("empty range");
    if (max_duration > slots_per_day) throw std::invalid_argument("max_duration exceeds the day");
    if (max_consecutive > max_daily) throw std::invalid_argument("max_consecutive exceeds max_daily");
    if (max_duration > max_consecutive) throw std::invalid_argument("max_duration exceeds max_consecutive");
    if (travel < 0 || room_slack < 0) throw std::invalid_argument("negative travel or slack");
    if (semester_courses < 0 || shared_courses < 0 || own_courses < 0) throw std::invalid_argument("negative course count");
    if (electives_taken < 0 || electives_taken > elective_pool) throw std::invalid_argument("electives_taken outside the pool");
  }
};

struct SyntheticInstance {
  Instance instance;
  Schedule witness;
};

namespace detail {

// Occupancy of one timetable owner (a class trimester or a professor
// trimester) in the witness.
struct PlantedRow {
  std::vector<int> cover;   // [day * slots + k] -> campus + 1, 0 when free
  std::vector<int> daily;   // occupied slots per day
};

class Planter {
 public:
  Planter(const SyntheticSpec& spec) : spec_(spec) {}

  PlantedRow fresh() const {
    return {std::vector<int>(static_cast<std::size_t>(spec_.days) * spec_.slots_per_day, 0),
            std::vector<int>(spec_.days, 0)};
  }

  bool fits(const PlantedRow& row, int day, int start, int duration, int campus) const {
    const int n = spec_.slots_per_day;
    if (row.daily[day] + duration > spec_.max_daily) return false;
    for (int k = start; k < start + duration; ++k)
      if (row.cover[day * n + k]) return false;
    int left = 0, right = 0;
    for (int k = start - 1; k >= 0 && row.cover[day * n + k]; --k) ++left;
    for (int k = start + duration; k < n && row.cover[day * n + k]; ++k) ++right;
    if (left + duration + right > spec_.max_consecutive) return false;
    if (spec_.travel > 0) {
      // Another campus within `travel` free slots either side.
      for (int k = std::max(0, start - spec_.travel); k < std::min(n, start + duration + spec_.travel); ++k) {
        const int c = row.cover[day * n + k];
        if (c && c - 1 != campus) return false;
      }
    }
    return true;
  }

  void occupy(PlantedRow& row, int day, int start, int duration, int campus) const {
    for (int k = start; k < start + duration; ++k) row.cover[day * spec_.slots_per_day + k] = campus + 1;
    row.daily[day] += duration;
  }

 private:
  const SyntheticSpec& spec_;
};

}  // namespace detail

inline SyntheticInstance generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
  spec.check();
  Rng rng(seed);
  detail::Planter planter(spec);
  const int periods = 2;

  CampusLayout layout;
  for (int c = 0; c < spec.campi; ++c) layout.campi.push_back("campus" + std::to_string(c + 1));
  layout.room_types.push_back("hall");
  for (int t = 1; t < spec.room_types; ++t) layout.room_types.push_back("room" + std::to_string(t));
  layout.room_counts.assign(static_cast<std::size_t>(spec.campi) * spec.room_types, 0);
  layout.travel.assign(static_cast<std::size_t>(spec.campi) * spec.campi, spec.travel);
  for (int c = 0; c < spec.campi; ++c) layout.travel_slots(c, c) = 0;

  std::vector<Lecture> lectures;
  std::vector<Slot> planted;
  std::vector<int> lecture_professor;
  std::vector<Curriculum> curricula;

  struct Pool {
    std::vector<int> members;
  };
  std::vector<detail::PlantedRow> professor_rows;  // [professor * periods + period]
  std::map<int, Pool> departments;

  const int slots = spec.days * spec.slots_per_day;
  std::vector<int> usage(static_cast<std::size_t>(periods) * spec.campi * spec.room_types * slots, 0);
  auto usage_at = [&](int q, int campus, int type, int s) -> int& {
    return usage[((static_cast<std::size_t>(q) * spec.campi + campus) * spec.room_types + type) * slots + s];
  };

  auto periods_of = [&](int period) {
    return period == kBothPeriods ? std::vector<int>{0, 1} : std::vector<int>{period};
  };

  // Professor free at the slot in every trimester of the lecture; a new one is
  // hired when nobody in the department is.
  auto assign_professor = [&](int department, int period, int day, int start, int duration, int campus) {
    Pool& pool = departments[department];
    std::vector<int> order = pool.members;
    rng.shuffle(order);
    for (int p : order) {
      bool ok = true;
      for (int q : periods_of(period)) {
        const auto& row = professor_rows[p * periods + q];
        if (spec.professor_load > 0) {
          int load = 0;
          for (int v : row.daily) load += v;
          ok = ok && load + duration <= spec.professor_load;
        }
        ok = ok && planter.fits(row, day, start, duration, campus);
      }
      if (ok) return p;
    }
    const int p = static_cast<int>(professor_rows.size() / periods);
    for (int q = 0; q < periods; ++q) professor_rows.push_back(planter.fresh());
    pool.members.push_back(p);
    return p;
  };

  for (int d = 0; d < spec.degrees; ++d) {
    const int campus = d % spec.campi;
    const int department = d / spec.degrees_per_department;
    char degree_buf[16];
    std::snprintf(degree_buf, sizeof degree_buf, "D%02d", d + 1);
    const std::string degree = degree_buf;

    for (int y = 0; y < spec.years; ++y) {
      // rows[class][period]
      std::vector<std::vector<detail::PlantedRow>> rows(spec.classes, std::vector<detail::PlantedRow>(periods, planter.fresh()));
      // lectures[class][period]
      std::vector<std::vector<std::vector<int>>> members(spec.classes, std::vector<std::vector<int>>(periods));
      const std::string year_tag = degree + "Y" + std::to_string(y + 1);
      int course_no = 0;

      auto plant_course = [&](const std::vector<int>& classes, int period, int room_type, const std::string& tag) {
        const int n = spec.min_lectures + rng.index(spec.max_lectures - spec.min_lectures + 1);
        const int duration = spec.min_duration + rng.index(spec.max_duration - spec.min_duration + 1);
        std::vector<int> placed;
        std::vector<char> used_day(spec.days, 0);
        for (int m = 0; m < n; ++m) {
          std::optional<Slot> slot;
          int slot_peak = 0, found = 0;
          for (int attempt = 0; attempt < 400 && found < spec.room_candidates; ++attempt) {
            const int day = rng.index(spec.days);
            if (attempt < 200 && used_day[day]) continue;
            const int start = rng.index(spec.slots_per_day - duration + 1);
            bool ok = true;
            for (int c : classes)
              for (int q : periods_of(period)) ok = ok && planter.fits(rows[c][q], day, start, duration, campus);
            if (!ok) continue;
            ++found;
            int peak = 0;
            for (int q : periods_of(period))
              for (int k = start; k < start + duration; ++k)
                peak = std::max(peak, usage_at(q, campus, room_type, day * spec.slots_per_day + k));
            if (!slot || peak < slot_peak) {
              slot = Slot{day, start};
              slot_peak = peak;
            }
          }
          if (!slot) continue;
          for (int q : periods_of(period))
            for (int k = slot->start; k < slot->start + duration; ++k)
              ++usage_at(q, campus, room_type, slot->day * spec.slots_per_day + k);
          for (int c : classes)
            for (int q : periods_of(period)) planter.occupy(rows[c][q], slot->day, slot->start, duration, campus);
          const int p = assign_professor(department, period, slot->day, slot->start, duration, campus);
          for (int q : periods_of(period)) planter.occupy(professor_rows[p * periods + q], slot->day, slot->start, duration, campus);
          used_day[slot->day] = 1;

          Lecture lec;
          lec.id = tag + "-" + std::to_string(m + 1);
          lec.duration = duration;
          lec.room_type = room_type;
          lec.campus = campus;
          lec.period = period;
          const int id = static_cast<int>(lectures.size());
          lectures.push_back(lec);
          planted.push_back(*slot);
          lecture_professor.push_back(p);
          for (int c : classes)
            for (int q : periods_of(period)) members[c][q].push_back(id);
          placed.push_back(id);
        }
        // Links between lectures of the course that the witness honours.
        for (std::size_t a = 0; a < placed.size(); ++a)
          for (std::size_t b = a + 1; b < placed.size(); ++b) {
            const int i = placed[a], j = placed[b];
            if (planted[i].day != planted[j].day && rng.unit() < spec.different_day_probability) {
              lectures[i].different_day.push_back(j);
              lectures[j].different_day.push_back(i);
            }
            if (rng.unit() < spec.precedence_probability) {
              const bool i_first = planted[i] < planted[j];
              const int before = i_first ? i : j, after = i_first ? j : i;
              if (planted[before].day < planted[after].day ||
                  (planted[before].day == planted[after].day && planted[before].start < planted[after].start))
                lectures[after].predecessors.push_back(before);
            }
          }
      };

      std::vector<int> everyone(spec.classes);
      for (int c = 0; c < spec.classes; ++c) everyone[c] = c;
      for (int k = 0; k < spec.semester_courses; ++k)
        plant_course(everyone, kBothPeriods, 0, year_tag + "-S" + std::to_string(++course_no));
      for (int q = 0; q < periods; ++q)
        for (int k = 0; k < spec.shared_courses; ++k)
          plant_course(everyone, q, 0, year_tag + "-T" + std::to_string(q + 1) + "K" + std::to_string(++course_no));
      // Each class takes a random subset of the elective pool, so classes of
      // the same year overlap pairwise rather than all sharing one set.
      for (int q = 0; q < periods; ++q) {
        std::vector<std::vector<int>> takers(spec.elective_pool);
        for (int c = 0; c < spec.classes; ++c) {
          std::vector<int> pool(spec.elective_pool);
          for (int e = 0; e < spec.elective_pool; ++e) pool[e] = e;
          rng.shuffle(pool);
          for (int e = 0; e < spec.electives_taken; ++e) takers[pool[e]].push_back(c);
        }
        for (int e = 0; e < spec.elective_pool; ++e)
          if (!takers[e].empty())
            plant_course(takers[e], q, 0, year_tag + "-T" + std::to_string(q + 1) + "E" + std::to_string(++course_no));
      }
      for (int c = 0; c < spec.classes; ++c)
        for (int q = 0; q < periods; ++q)
          for (int k = 0; k < spec.own_courses; ++k) {
            const int type = spec.room_types > 1 ? 1 + rng.index(spec.room_types - 1) : 0;
            plant_course({c}, q, type,
                         year_tag + "C" + std::to_string(c + 1) + "-T" + std::to_string(q + 1) + "K" +
                             std::to_string(++course_no));
          }

      for (int c = 0; c < spec.classes; ++c)
        for (int q = 0; q < periods; ++q) {
          if (members[c][q].empty()) continue;
          Curriculum cur;
          cur.class_id = year_tag + "C" + std::to_string(c + 1);
          cur.id = cur.class_id + "-T" + std::to_string(q + 1);
          cur.degree = degree;
          cur.year = y + 1;
          cur.period = q;
          cur.max_daily = spec.max_daily;
          cur.max_consecutive = spec.max_consecutive;
          cur.lectures = members[c][q];
          curricula.push_back(cur);
        }
    }
  }

  const int n_prof = static_cast<int>(professor_rows.size() / periods);
  std::vector<Professor> professors(n_prof);
  for (int p = 0; p < n_prof; ++p) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "P%04d", p + 1);
    professors[p].id = buf;
    professors[p].max_daily = spec.max_daily;
    professors[p].max_consecutive = spec.max_consecutive;
  }
  for (int i = 0; i < static_cast<int>(lectures.size()); ++i) professors[lecture_professor[i]].lectures.push_back(i);

  // Rooms: witness peak per (campus, type) over trimesters and slots.
  for (int c = 0; c < spec.campi; ++c)
    for (int t = 0; t < spec.room_types; ++t) {
      int peak = 0;
      for (int q = 0; q < periods; ++q)
        for (int s = 0; s < slots; ++s)
          peak = std::max(peak, usage_at(q, c, t, s));
      layout.rooms(c, t) = static_cast<int>(std::ceil(peak * (1.0 + spec.room_slack) - 1e-9));
    }

  Calendar cal{spec.days, spec.slots_per_day, periods};
  SyntheticInstance out{Instance(spec.name, cal, std::move(layout), std::move(lectures), std::move(curricula),
                                 std::move(professors)),
                        Schedule()};
  out.witness = Schedule(out.instance);
  for (int i = 0; i < out.instance.lecture_count(); ++i) out.witness.assign(i, planted[i]);
  return out;
}

}  // namespace cbtt
