#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace cbtt {

// Errors --------------------------------------------------------------------

class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax problem in an input document; carries the 1-based line number.
class ParseError : public InstanceError {
 public:
  ParseError(int line, const std::string& what)
      : InstanceError("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Reference to an entity that does not exist.
class ReferenceError : public InstanceError {
 public:
  using InstanceError::InstanceError;
};

// Well-formed but violates a structural invariant of the model.
class InvariantError : public InstanceError {
 public:
  using InstanceError::InstanceError;
};

// Domain types ----------------------------------------------------------------

// Lecture period value for semester lectures that occupy every period.
inline constexpr int kBothPeriods = -1;
inline constexpr int kUnknownYear = -1;

struct Calendar {
  int days = 5;
  int slots_per_day = 1;
  int periods = 1;

  int slot_count() const { return days * slots_per_day; }
  int slot_index(int day, int slot) const { return day * slots_per_day + slot; }
  int day_of(int slot_index) const { return slot_index / slots_per_day; }
  int hour_of(int slot_index) const { return slot_index % slots_per_day; }

  bool operator==(const Calendar&) const = default;
};

struct Lecture {
  std::string id;
  int duration = 1;
  int room_type = 0;
  int campus = 0;
  int period = 0;  // 0-based, or kBothPeriods
  std::vector<int> different_day;
  std::vector<int> predecessors;

  bool in_period(int p) const { return period == kBothPeriods || period == p; }
  bool operator==(const Lecture&) const = default;
};

struct Curriculum {
  std::string id;
  std::string degree;    // empty when unknown
  int year = kUnknownYear;
  std::string class_id;  // empty when unknown
  int period = 0;
  int max_daily = 1;
  int max_consecutive = 1;
  std::vector<int> lectures;

  bool operator==(const Curriculum&) const = default;
};

struct Professor {
  std::string id;
  int max_daily = 1;
  int max_consecutive = 1;
  std::vector<int> lectures;

  bool operator==(const Professor&) const = default;
};

struct CampusLayout {
  std::vector<std::string> campi;
  std::vector<std::string> room_types;
  std::vector<int> room_counts;  // [campus * room_types + type]
  std::vector<int> travel;       // [campus * campi + campus]

  int campus_count() const { return static_cast<int>(campi.size()); }
  int room_type_count() const { return static_cast<int>(room_types.size()); }
  int rooms(int campus, int type) const { return room_counts[campus * room_type_count() + type]; }
  int& rooms(int campus, int type) { return room_counts[campus * room_type_count() + type]; }
  int travel_slots(int from, int to) const { return travel[from * campus_count() + to]; }
  int& travel_slots(int from, int to) { return travel[from * campus_count() + to]; }

  // Single campus, single room type, zero travel.
  static CampusLayout single(int rooms, std::string campus = "main", std::string type = "room") {
    return CampusLayout{{std::move(campus)}, {std::move(type)}, {rooms}, {0}};
  }

  bool operator==(const CampusLayout&) const = default;
};

// Immutable problem description. Construction validates every invariant and
// builds the reverse indexes used by the evaluator and the neighbourhoods.
class Instance {
 public:
  Instance() = default;
  Instance(std::string name, Calendar calendar, CampusLayout layout, std::vector<Lecture> lectures,
           std::vector<Curriculum> curricula, std::vector<Professor> professors)
      : name_(std::move(name)),
        calendar_(calendar),
        layout_(std::move(layout)),
        lectures_(std::move(lectures)),
        curricula_(std::move(curricula)),
        professors_(std::move(professors)) {
    validate();
    build_indexes();
  }

  const std::string& name() const { return name_; }
  const Calendar& calendar() const { return calendar_; }
  const CampusLayout& layout() const { return layout_; }
  const std::vector<Lecture>& lectures() const { return lectures_; }
  const std::vector<Curriculum>& curricula() const { return curricula_; }
  const std::vector<Professor>& professors() const { return professors_; }

  const Lecture& lecture(int i) const { return lectures_[i]; }
  const Curriculum& curriculum(int l) const { return curricula_[l]; }
  const Professor& professor(int p) const { return professors_[p]; }

  int lecture_count() const { return static_cast<int>(lectures_.size()); }
  int curriculum_count() const { return static_cast<int>(curricula_.size()); }
  int professor_count() const { return static_cast<int>(professors_.size()); }

  const std::vector<int>& curricula_of(int lecture) const { return curricula_of_[lecture]; }
  const std::vector<int>& professors_of(int lecture) const { return professors_of_[lecture]; }
  // Lectures that list `lecture` among their predecessors.
  const std::vector<int>& successors_of(int lecture) const { return successors_of_[lecture]; }
  const std::vector<int>& lectures_in_rooms(int campus, int type) const {
    return by_room_[campus * layout_.room_type_count() + type];
  }
  // Periods a lecture occupies.
  std::vector<int> periods_of(int lecture) const {
    const Lecture& l = lectures_[lecture];
    if (l.period != kBothPeriods) return {l.period};
    std::vector<int> all(calendar_.periods);
    for (int p = 0; p < calendar_.periods; ++p) all[p] = p;
    return all;
  }
  int longest_lecture(int curriculum) const {
    int longest = 1;
    for (int i : curricula_[curriculum].lectures) longest = std::max(longest, lectures_[i].duration);
    return longest;
  }

  std::optional<int> find_lecture(std::string_view id) const { return find(lecture_ids_, id); }
  std::optional<int> find_curriculum(std::string_view id) const { return find(curriculum_ids_, id); }
  std::optional<int> find_professor(std::string_view id) const { return find(professor_ids_, id); }

  // Structural equality on the problem data (names of the instance ignored).
  bool same_problem(const Instance& other) const {
    return calendar_ == other.calendar_ && layout_ == other.layout_ && lectures_ == other.lectures_ &&
           curricula_ == other.curricula_ && professors_ == other.professors_;
  }

 private:
  static std::optional<int> find(const std::unordered_map<std::string, int>& ids, std::string_view id) {
    auto it = ids.find(std::string(id));
    if (it == ids.end()) return std::nullopt;
    return it->second;
  }

  void validate() const {
    const Calendar& cal = calendar_;
    if (cal.days < 1) throw InvariantError("calendar: days must be >= 1");
    if (cal.slots_per_day < 1) throw InvariantError("calendar: slots_per_day must be >= 1");
    if (cal.periods != 1 && cal.periods != 2) throw InvariantError("calendar: periods must be 1 or 2");

    const int campi = layout_.campus_count();
    const int types = layout_.room_type_count();
    if (campi < 1) throw InvariantError("layout: at least one campus required");
    if (types < 1) throw InvariantError("layout: at least one room type required");
    if (static_cast<int>(layout_.room_counts.size()) != campi * types)
      throw InvariantError("layout: room count table has wrong size");
    if (static_cast<int>(layout_.travel.size()) != campi * campi)
      throw InvariantError("layout: travel matrix has wrong size");
    for (int c : layout_.room_counts)
      if (c < 0) throw InvariantError("layout: negative room count");
    for (int a = 0; a < campi; ++a) {
      if (layout_.travel_slots(a, a) != 0)
        throw InvariantError("layout: travel from campus '" + layout_.campi[a] + "' to itself must be 0");
      for (int b = 0; b < campi; ++b) {
        if (layout_.travel_slots(a, b) < 0) throw InvariantError("layout: negative travel time");
        if (layout_.travel_slots(a, b) != layout_.travel_slots(b, a))
          throw InvariantError("layout: travel matrix is not symmetric");
      }
    }
    unique_ids(layout_.campi, "campus");
    unique_ids(layout_.room_types, "room type");

    const int n = lecture_count();
    auto check_ref = [n](int i, const std::string& owner) {
      if (i < 0 || i >= n) throw ReferenceError(owner + " references an undefined lecture");
    };

    std::vector<std::string> ids;
    for (const Lecture& l : lectures_) ids.push_back(l.id);
    unique_ids(ids, "lecture");

    for (int i = 0; i < n; ++i) {
      const Lecture& l = lectures_[i];
      const std::string who = "lecture '" + l.id + "'";
      if (l.duration < 1 || l.duration > cal.slots_per_day)
        throw InvariantError(who + ": duration must be in [1, slots_per_day]");
      if (l.room_type < 0 || l.room_type >= types) throw ReferenceError(who + ": unknown room type");
      if (l.campus < 0 || l.campus >= campi) throw ReferenceError(who + ": unknown campus");
      if (l.period != kBothPeriods && (l.period < 0 || l.period >= cal.periods))
        throw InvariantError(who + ": period out of range");
      for (int d : l.different_day) {
        check_ref(d, who);
        if (d == i) throw InvariantError(who + ": listed in its own different-day set");
        const auto& back = lectures_[d].different_day;
        if (std::find(back.begin(), back.end(), i) == back.end())
          throw InvariantError(who + ": different-day relation with '" + lectures_[d].id + "' is not symmetric");
      }
      for (int e : l.predecessors) {
        check_ref(e, who);
        if (e == i) throw InvariantError(who + ": listed in its own predecessor set");
      }
      no_duplicates(l.different_day, who + " different-day set");
      no_duplicates(l.predecessors, who + " predecessor set");
    }

    ids.clear();
    std::vector<char> covered(n, 0);
    for (const Curriculum& c : curricula_) {
      ids.push_back(c.id);
      const std::string who = "curriculum '" + c.id + "'";
      if (c.lectures.empty()) throw InvariantError(who + ": empty lecture set");
      if (c.period < 0 || c.period >= cal.periods) throw InvariantError(who + ": period out of range");
      if (c.max_consecutive < 1) throw InvariantError(who + ": max_consecutive must be >= 1");
      if (c.max_consecutive > c.max_daily) throw InvariantError(who + ": max_consecutive exceeds max_daily");
      if (c.max_daily > cal.slot_count()) throw InvariantError(who + ": max_daily exceeds calendar size");
      for (int i : c.lectures) {
        check_ref(i, who);
        if (!lectures_[i].in_period(c.period))
          throw InvariantError(who + ": lecture '" + lectures_[i].id + "' belongs to another period");
        covered[i] = 1;
      }
      no_duplicates(c.lectures, who + " lecture set");
    }
    unique_ids(ids, "curriculum");

    ids.clear();
    for (const Professor& p : professors_) {
      ids.push_back(p.id);
      const std::string who = "professor '" + p.id + "'";
      if (p.max_consecutive < 1) throw InvariantError(who + ": max_consecutive must be >= 1");
      if (p.max_consecutive > p.max_daily) throw InvariantError(who + ": max_consecutive exceeds max_daily");
      for (int i : p.lectures) check_ref(i, who);
      no_duplicates(p.lectures, who + " lecture set");
    }
    unique_ids(ids, "professor");

    for (int i = 0; i < n; ++i)
      if (!covered[i]) throw InvariantError("lecture '" + lectures_[i].id + "' belongs to no curriculum");
  }

  static void unique_ids(const std::vector<std::string>& ids, const std::string& kind) {
    std::unordered_set<std::string> seen;
    for (const auto& id : ids) {
      if (id.empty()) throw InvariantError(kind + ": empty id");
      if (!seen.insert(id).second) throw InvariantError("duplicate " + kind + " id '" + id + "'");
    }
  }

  static void no_duplicates(std::vector<int> v, const std::string& what) {
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) throw InvariantError(what + " has duplicates");
  }

  void build_indexes() {
    const int n = lecture_count();
    curricula_of_.assign(n, {});
    professors_of_.assign(n, {});
    successors_of_.assign(n, {});
    by_room_.assign(layout_.campus_count() * layout_.room_type_count(), {});
    for (int l = 0; l < curriculum_count(); ++l)
      for (int i : curricula_[l].lectures) curricula_of_[i].push_back(l);
    for (int p = 0; p < professor_count(); ++p)
      for (int i : professors_[p].lectures) professors_of_[i].push_back(p);
    for (int i = 0; i < n; ++i) {
      for (int e : lectures_[i].predecessors) successors_of_[e].push_back(i);
      by_room_[lectures_[i].campus * layout_.room_type_count() + lectures_[i].room_type].push_back(i);
      lecture_ids_.emplace(lectures_[i].id, i);
    }
    for (int l = 0; l < curriculum_count(); ++l) curriculum_ids_.emplace(curricula_[l].id, l);
    for (int p = 0; p < professor_count(); ++p) professor_ids_.emplace(professors_[p].id, p);
  }

  std::string name_;
  Calendar calendar_;
  CampusLayout layout_;
  std::vector<Lecture> lectures_;
  std::vector<Curriculum> curricula_;
  std::vector<Professor> professors_;

  std::vector<std::vector<int>> curricula_of_;
  std::vector<std::vector<int>> professors_of_;
  std::vector<std::vector<int>> successors_of_;
  std::vector<std::vector<int>> by_room_;
  std::unordered_map<std::string, int> lecture_ids_;
  std::unordered_map<std::string, int> curriculum_ids_;
  std::unordered_map<std::string, int> professor_ids_;
};

}  // namespace cbtt
