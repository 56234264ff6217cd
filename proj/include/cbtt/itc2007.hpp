#pragma once

// ITC2007 curriculum-based course timetabling (CTT) reader and the adapter
// that hardens a competition instance into the extended model.

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cbtt/instance_io.hpp"
#include "cbtt/model.hpp"
#include "json.hpp"

namespace cbtt {

struct CttCourse {
  std::string id;
  std::string teacher;
  int lectures = 0;
  int min_working_days = 0;
  int students = 0;
};

struct CttRoom {
  std::string id;
  int capacity = 0;
};

struct CttCurriculum {
  std::string id;
  std::vector<std::string> courses;
};

struct CttUnavailability {
  std::string course;
  int day = 0;
  int period = 0;
};

struct CttInstance {
  std::string name;
  int days = 0;
  int periods_per_day = 0;
  std::vector<CttCourse> courses;
  std::vector<CttRoom> rooms;
  std::vector<CttCurriculum> curricula;
  std::vector<CttUnavailability> unavailability;
};

inline CttInstance parse_ctt(std::string_view text) {
  using detail::parse_count;
  CttInstance ctt;
  int n_courses = -1, n_rooms = -1, n_curricula = -1, n_constraints = -1;

  // The reader works on whitespace tokens; CTT lines are "Key: value" pairs
  // followed by sections headed by "SECTION:".
  struct Line {
    int number;
    std::vector<std::string> tokens;
  };
  std::vector<Line> lines;
  {
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      ++number;
      auto tokens = detail::split_ws(text.substr(pos, end - pos));
      if (!tokens.empty()) lines.push_back({number, std::move(tokens)});
      if (end == text.size()) break;
      pos = end + 1;
    }
  }
  std::size_t at = 0;
  auto need = [&](const char* what) -> const Line& {
    if (at >= lines.size()) throw ParseError(lines.empty() ? 0 : lines.back().number, std::string("unexpected end, expected ") + what);
    return lines[at++];
  };

  while (at < lines.size() && lines[at].tokens[0].back() == ':' && lines[at].tokens.size() == 2) {
    const Line& l = lines[at++];
    const std::string& key = l.tokens[0];
    const std::string& value = l.tokens[1];
    if (key == "Name:") ctt.name = value;
    else if (key == "Courses:") n_courses = parse_count(value, l.number, "Courses");
    else if (key == "Rooms:") n_rooms = parse_count(value, l.number, "Rooms");
    else if (key == "Days:") ctt.days = parse_count(value, l.number, "Days");
    else if (key == "Periods_per_day:") ctt.periods_per_day = parse_count(value, l.number, "Periods_per_day");
    else if (key == "Curricula:") n_curricula = parse_count(value, l.number, "Curricula");
    else if (key == "Constraints:") n_constraints = parse_count(value, l.number, "Constraints");
    else throw ParseError(l.number, "unknown header key '" + key + "'");
  }
  if (n_courses < 0 || n_rooms < 0 || n_curricula < 0 || n_constraints < 0 || ctt.days < 1 || ctt.periods_per_day < 1)
    throw ParseError(at < lines.size() ? lines[at].number : 0, "incomplete CTT header");

  auto section = [&](const char* name) {
    const Line& l = need(name);
    if (l.tokens.size() != 1 || l.tokens[0] != name)
      throw ParseError(l.number, std::string("expected section '") + name + "'");
  };

  section("COURSES:");
  std::unordered_map<std::string, int> course_ids;
  for (int c = 0; c < n_courses; ++c) {
    const Line& l = need("course");
    if (l.tokens.size() != 5) throw ParseError(l.number, "COURSES: expected 5 fields");
    CttCourse course{l.tokens[0], l.tokens[1], parse_count(l.tokens[2], l.number, "lectures"),
                     parse_count(l.tokens[3], l.number, "min_working_days"),
                     parse_count(l.tokens[4], l.number, "students")};
    if (!course_ids.emplace(course.id, c).second) throw ParseError(l.number, "duplicate course '" + course.id + "'");
    ctt.courses.push_back(std::move(course));
  }
  section("ROOMS:");
  for (int r = 0; r < n_rooms; ++r) {
    const Line& l = need("room");
    if (l.tokens.size() != 2) throw ParseError(l.number, "ROOMS: expected 2 fields");
    ctt.rooms.push_back({l.tokens[0], parse_count(l.tokens[1], l.number, "capacity")});
  }
  section("CURRICULA:");
  for (int q = 0; q < n_curricula; ++q) {
    const Line& l = need("curriculum");
    if (l.tokens.size() < 2) throw ParseError(l.number, "CURRICULA: too few fields");
    const int n = parse_count(l.tokens[1], l.number, "course count");
    if (static_cast<int>(l.tokens.size()) != 2 + n) throw ParseError(l.number, "CURRICULA: member list does not match its count");
    CttCurriculum cur{l.tokens[0], {l.tokens.begin() + 2, l.tokens.end()}};
    for (const auto& c : cur.courses)
      if (!course_ids.contains(c)) throw ParseError(l.number, "curriculum '" + cur.id + "' references unknown course '" + c + "'");
    ctt.curricula.push_back(std::move(cur));
  }
  section("UNAVAILABILITY_CONSTRAINTS:");
  for (int k = 0; k < n_constraints; ++k) {
    const Line& l = need("constraint");
    if (l.tokens.size() != 3) throw ParseError(l.number, "UNAVAILABILITY_CONSTRAINTS: expected 3 fields");
    if (!course_ids.contains(l.tokens[0])) throw ParseError(l.number, "constraint references unknown course '" + l.tokens[0] + "'");
    ctt.unavailability.push_back(
        {l.tokens[0], parse_count(l.tokens[1], l.number, "day"), parse_count(l.tokens[2], l.number, "period")});
  }
  const Line& end = need("END.");
  if (end.tokens.size() != 1 || end.tokens[0] != "END.") throw ParseError(end.number, "expected 'END.'");
  if (at != lines.size()) throw ParseError(lines[at].number, "content after END.");
  return ctt;
}

// How a competition instance is hardened. Serialised as JSON; every key is
// optional and falls back to the defaults below.
struct AdaptationPolicy {
  // Lectures of one course are pairwise on different days, for the first
  // min(lecture count, days) lectures of the course.
  bool different_day_within_course = true;
  // Curriculum and professor daily cap = ceil(fraction * periods_per_day),
  // unless max_daily is set explicitly.
  double max_daily_fraction = 0.7;
  int max_daily = 0;
  int max_consecutive = 4;
  // Explicit precedence pairs (before, after), as adapted lecture ids.
  std::vector<std::pair<std::string, std::string>> precedence;
  // Courses whose lectures must run in numbering order.
  std::vector<std::string> course_chains;

  int daily_cap(int periods_per_day) const {
    if (max_daily > 0) return max_daily;
    return static_cast<int>(std::ceil(max_daily_fraction * periods_per_day - 1e-9));
  }

  void check() const {
    if (max_consecutive < 1) throw InvariantError("adaptation policy: max_consecutive must be >= 1");
    if (max_daily < 0) throw InvariantError("adaptation policy: max_daily must be >= 0");
    if (max_daily == 0 && !(max_daily_fraction > 0.0 && max_daily_fraction <= 1.0))
      throw InvariantError("adaptation policy: max_daily_fraction must be in (0, 1]");
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["different_day_within_course"] = different_day_within_course;
    j["max_daily_fraction"] = max_daily_fraction;
    j["max_daily"] = max_daily;
    j["max_consecutive"] = max_consecutive;
    j["precedence"] = nlohmann::json::array();
    for (const auto& [a, b] : precedence) j["precedence"].push_back({a, b});
    j["course_chains"] = course_chains;
    return j;
  }

  static AdaptationPolicy from_json(const nlohmann::json& j) {
    static const char* known[] = {"different_day_within_course", "max_daily_fraction", "max_daily",
                                  "max_consecutive", "precedence", "course_chains"};
    for (auto it = j.begin(); it != j.end(); ++it) {
      bool ok = false;
      for (const char* k : known) ok = ok || it.key() == k;
      if (!ok) throw InvariantError("adaptation policy: unknown key '" + it.key() + "'");
    }
    AdaptationPolicy p;
    p.different_day_within_course = j.value("different_day_within_course", p.different_day_within_course);
    p.max_daily_fraction = j.value("max_daily_fraction", p.max_daily_fraction);
    p.max_daily = j.value("max_daily", p.max_daily);
    p.max_consecutive = j.value("max_consecutive", p.max_consecutive);
    if (j.contains("precedence"))
      for (const auto& pair : j.at("precedence")) p.precedence.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
    if (j.contains("course_chains")) p.course_chains = j.at("course_chains").get<std::vector<std::string>>();
    p.check();
    return p;
  }

  static AdaptationPolicy load(const std::string& path) {
    return from_json(nlohmann::json::parse(detail::read_text_file(path)));
  }
};

// FNV-1a over the canonical JSON dump; recorded in run reports.
inline std::uint64_t policy_hash(const AdaptationPolicy& policy) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : policy.to_json().dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string adapted_lecture_id(const std::string& course, int n) { return course + "-" + std::to_string(n); }

inline Instance adapt_itc2007(const CttInstance& ctt, const AdaptationPolicy& policy = {}) {
  policy.check();
  const int daily = std::min(policy.daily_cap(ctt.periods_per_day), ctt.days * ctt.periods_per_day);
  if (daily < 1) throw InvariantError("adaptation policy: daily cap rounds to zero");
  const int consecutive = std::min(policy.max_consecutive, daily);

  Calendar cal{ctt.days, ctt.periods_per_day, 1};
  CampusLayout layout = CampusLayout::single(static_cast<int>(ctt.rooms.size()));

  std::vector<Lecture> lectures;
  std::unordered_map<std::string, std::vector<int>> course_lectures;
  for (const CttCourse& c : ctt.courses) {
    auto& ids = course_lectures[c.id];
    for (int n = 1; n <= c.lectures; ++n) {
      ids.push_back(static_cast<int>(lectures.size()));
      Lecture l;
      l.id = adapted_lecture_id(c.id, n);
      lectures.push_back(std::move(l));
    }
    if (policy.different_day_within_course) {
      const int capped = std::min<int>(static_cast<int>(ids.size()), ctt.days);
      for (int a = 0; a < capped; ++a)
        for (int b = 0; b < capped; ++b)
          if (a != b) lectures[ids[a]].different_day.push_back(ids[b]);
    }
  }
  std::unordered_map<std::string, int> lecture_ids;
  for (int i = 0; i < static_cast<int>(lectures.size()); ++i) lecture_ids.emplace(lectures[i].id, i);
  auto add_precedence = [&](int before, int after) {
    auto& preds = lectures[after].predecessors;
    if (before != after && std::find(preds.begin(), preds.end(), before) == preds.end()) preds.push_back(before);
  };
  for (const auto& course : policy.course_chains) {
    auto it = course_lectures.find(course);
    if (it == course_lectures.end()) throw ReferenceError("adaptation policy: unknown course '" + course + "'");
    for (std::size_t k = 1; k < it->second.size(); ++k) add_precedence(it->second[k - 1], it->second[k]);
  }
  for (const auto& [before, after] : policy.precedence) {
    auto a = lecture_ids.find(before), b = lecture_ids.find(after);
    if (a == lecture_ids.end() || b == lecture_ids.end())
      throw ReferenceError("adaptation policy: precedence references unknown lecture '" +
                           (a == lecture_ids.end() ? before : after) + "'");
    add_precedence(a->second, b->second);
  }

  std::map<std::string, std::vector<int>> teachers;  // ordered for deterministic output
  std::vector<std::string> teacher_order;
  for (const CttCourse& c : ctt.courses) {
    if (!teachers.contains(c.teacher)) teacher_order.push_back(c.teacher);
    auto& list = teachers[c.teacher];
    for (int i : course_lectures[c.id]) list.push_back(i);
  }
  std::vector<Professor> professors;
  for (const auto& t : teacher_order) professors.push_back({t, daily, consecutive, teachers[t]});

  std::vector<Curriculum> curricula;
  std::unordered_map<std::string, bool> in_curriculum;
  for (const CttCurriculum& q : ctt.curricula) {
    Curriculum cur;
    cur.id = q.id;
    cur.max_daily = daily;
    cur.max_consecutive = consecutive;
    for (const auto& c : q.courses) {
      in_curriculum[c] = true;
      for (int i : course_lectures.at(c))
        if (std::find(cur.lectures.begin(), cur.lectures.end(), i) == cur.lectures.end()) cur.lectures.push_back(i);
    }
    if (!cur.lectures.empty()) curricula.push_back(std::move(cur));
  }
  // Courses outside every curriculum still must not clash with themselves.
  for (const CttCourse& c : ctt.courses) {
    if (in_curriculum.contains(c.id) || course_lectures[c.id].empty()) continue;
    Curriculum solo;
    solo.id = "solo-" + c.id;
    solo.max_daily = daily;
    solo.max_consecutive = consecutive;
    solo.lectures = course_lectures[c.id];
    curricula.push_back(std::move(solo));
  }

  return Instance(ctt.name.empty() ? "itc2007" : ctt.name, cal, std::move(layout), std::move(lectures),
                  std::move(curricula), std::move(professors));
}

inline Instance load_itc2007(const std::string& path, const AdaptationPolicy& policy = {}) {
  return adapt_itc2007(parse_ctt(detail::read_text_file(path)), policy);
}

}  // namespace cbtt
