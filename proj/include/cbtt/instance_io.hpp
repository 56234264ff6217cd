#pragma once

// Reader and writer for the extended instance format (see docs/FORMAT.md).

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cbtt/model.hpp"

namespace cbtt {

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Cursor over the non-empty, non-comment lines of a document.
class LineReader {
 public:
  explicit LineReader(std::string_view text) {
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      ++number;
      std::string_view line = text.substr(pos, end - pos);
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      auto tokens = split_ws(line);
      if (!tokens.empty()) lines_.push_back({number, std::move(tokens)});
      if (end == text.size()) break;
      pos = end + 1;
    }
  }

  bool done() const { return next_ >= lines_.size(); }
  int line_number() const { return done() ? last_line() : lines_[next_].number; }

  const std::vector<std::string>& next(const char* expected_keyword) {
    if (done()) throw ParseError(last_line(), std::string("unexpected end of document, expected ") + expected_keyword);
    const auto& line = lines_[next_++];
    current_ = line.number;
    if (line.tokens[0] != expected_keyword)
      throw ParseError(line.number, std::string("expected '") + expected_keyword + "', got '" + line.tokens[0] + "'");
    return line.tokens;
  }

  int current() const { return current_; }

 private:
  struct Line {
    int number;
    std::vector<std::string> tokens;
  };
  int last_line() const { return lines_.empty() ? 0 : lines_.back().number; }

  std::vector<Line> lines_;
  std::size_t next_ = 0;
  int current_ = 0;
};

inline int parse_count(const std::string& token, int line, const char* field) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value < 0)
    throw ParseError(line, std::string("field '") + field + "': expected a non-negative integer, got '" + token + "'");
  return value;
}

inline void expect_tokens(const std::vector<std::string>& tokens, std::size_t n, int line, const char* record) {
  if (tokens.size() != n)
    throw ParseError(line, std::string(record) + ": expected " + std::to_string(n) + " fields, got " +
                               std::to_string(tokens.size()));
}

inline std::string meta_in(const std::string& token) { return token == "-" ? std::string() : token; }
inline std::string meta_out(const std::string& value) { return value.empty() ? std::string("-") : value; }

}  // namespace detail

inline Instance parse_instance(std::string_view text) {
  using detail::expect_tokens;
  using detail::parse_count;
  detail::LineReader in(text);

  auto name_line = in.next("NAME");
  expect_tokens(name_line, 2, in.current(), "NAME");

  auto cal_line = in.next("CALENDAR");
  expect_tokens(cal_line, 4, in.current(), "CALENDAR");
  Calendar cal{parse_count(cal_line[1], in.current(), "days"), parse_count(cal_line[2], in.current(), "slots_per_day"),
               parse_count(cal_line[3], in.current(), "periods")};

  CampusLayout layout;
  auto types_line = in.next("ROOM_TYPES");
  if (types_line.size() < 2) throw ParseError(in.current(), "ROOM_TYPES: missing count");
  const int n_types = parse_count(types_line[1], in.current(), "room type count");
  expect_tokens(types_line, 2 + n_types, in.current(), "ROOM_TYPES");
  layout.room_types.assign(types_line.begin() + 2, types_line.end());

  auto campi_line = in.next("CAMPI");
  expect_tokens(campi_line, 2, in.current(), "CAMPI");
  const int n_campi = parse_count(campi_line[1], in.current(), "campus count");
  for (int c = 0; c < n_campi; ++c) {
    auto line = in.next("CAMPUS");
    expect_tokens(line, 2 + n_types, in.current(), "CAMPUS");
    layout.campi.push_back(line[1]);
    for (int t = 0; t < n_types; ++t) layout.room_counts.push_back(parse_count(line[2 + t], in.current(), "rooms"));
  }
  std::unordered_map<std::string, int> campus_ids, type_ids;
  for (int c = 0; c < n_campi; ++c) campus_ids.emplace(layout.campi[c], c);
  for (int t = 0; t < n_types; ++t) type_ids.emplace(layout.room_types[t], t);
  layout.travel.assign(n_campi * n_campi, 0);
  for (int c = 0; c < n_campi; ++c) {
    auto line = in.next("TRAVEL");
    expect_tokens(line, 2 + n_campi, in.current(), "TRAVEL");
    if (line[1] != layout.campi[c])
      throw ParseError(in.current(), "TRAVEL rows must follow CAMPUS order, expected '" + layout.campi[c] + "'");
    for (int d = 0; d < n_campi; ++d) layout.travel[c * n_campi + d] = parse_count(line[2 + d], in.current(), "travel");
  }

  // Lecture references may point forward, so resolve after reading the section.
  struct PendingRefs {
    int line;
    std::vector<std::string> different_day, predecessors;
  };
  auto lec_line = in.next("LECTURES");
  expect_tokens(lec_line, 2, in.current(), "LECTURES");
  const int n_lectures = parse_count(lec_line[1], in.current(), "lecture count");
  std::vector<Lecture> lectures;
  std::vector<PendingRefs> pending;
  std::unordered_map<std::string, int> lecture_ids;
  for (int i = 0; i < n_lectures; ++i) {
    const auto& t = in.next("LECTURE");
    const int ln = in.current();
    if (t.size() < 8) throw ParseError(ln, "LECTURE: too few fields");
    Lecture lec;
    lec.id = t[1];
    lec.duration = parse_count(t[2], ln, "duration");
    auto type = type_ids.find(t[3]);
    if (type == type_ids.end())
      throw ReferenceError("line " + std::to_string(ln) + ": lecture '" + lec.id + "' references unknown room type '" +
                           t[3] + "'");
    lec.room_type = type->second;
    auto campus = campus_ids.find(t[4]);
    if (campus == campus_ids.end())
      throw ReferenceError("line " + std::to_string(ln) + ": lecture '" + lec.id + "' references unknown campus '" +
                           t[4] + "'");
    lec.campus = campus->second;
    if (t[5] == "BOTH") {
      lec.period = kBothPeriods;
    } else {
      const int p = parse_count(t[5], ln, "period");
      if (p < 1) throw ParseError(ln, "field 'period': periods are numbered from 1");
      lec.period = p - 1;
    }
    PendingRefs refs{ln, {}, {}};
    std::size_t pos = 6;
    const int n_dd = parse_count(t[pos++], ln, "different-day count");
    if (t.size() < pos + n_dd + 1) throw ParseError(ln, "LECTURE: different-day list shorter than its count");
    refs.different_day.assign(t.begin() + pos, t.begin() + pos + n_dd);
    pos += n_dd;
    const int n_pred = parse_count(t[pos++], ln, "predecessor count");
    if (t.size() != pos + n_pred) throw ParseError(ln, "LECTURE: predecessor list does not match its count");
    refs.predecessors.assign(t.begin() + pos, t.end());
    if (!lecture_ids.emplace(lec.id, i).second) throw InvariantError("line " + std::to_string(ln) + ": duplicate lecture id '" + lec.id + "'");
    lectures.push_back(std::move(lec));
    pending.push_back(std::move(refs));
  }
  auto resolve = [&](const std::string& id, int line, const std::string& owner) {
    auto it = lecture_ids.find(id);
    if (it == lecture_ids.end())
      throw ReferenceError("line " + std::to_string(line) + ": " + owner + " references undefined lecture '" + id + "'");
    return it->second;
  };
  for (int i = 0; i < n_lectures; ++i) {
    const std::string owner = "lecture '" + lectures[i].id + "'";
    for (const auto& id : pending[i].different_day)
      lectures[i].different_day.push_back(resolve(id, pending[i].line, owner));
    for (const auto& id : pending[i].predecessors)
      lectures[i].predecessors.push_back(resolve(id, pending[i].line, owner));
  }

  auto read_list = [&](const std::vector<std::string>& t, std::size_t pos, int ln, const std::string& owner,
                       const char* record) {
    const int n = parse_count(t[pos], ln, "lecture count");
    if (t.size() != pos + 1 + n) throw ParseError(ln, std::string(record) + ": lecture list does not match its count");
    std::vector<int> out;
    for (std::size_t k = pos + 1; k < t.size(); ++k) out.push_back(resolve(t[k], ln, owner));
    return out;
  };

  auto prof_line = in.next("PROFESSORS");
  expect_tokens(prof_line, 2, in.current(), "PROFESSORS");
  const int n_profs = parse_count(prof_line[1], in.current(), "professor count");
  std::vector<Professor> professors;
  for (int p = 0; p < n_profs; ++p) {
    const auto& t = in.next("PROFESSOR");
    const int ln = in.current();
    if (t.size() < 5) throw ParseError(ln, "PROFESSOR: too few fields");
    Professor prof;
    prof.id = t[1];
    prof.max_daily = parse_count(t[2], ln, "max_daily");
    prof.max_consecutive = parse_count(t[3], ln, "max_consecutive");
    prof.lectures = read_list(t, 4, ln, "professor '" + prof.id + "'", "PROFESSOR");
    professors.push_back(std::move(prof));
  }

  auto cur_line = in.next("CURRICULA");
  expect_tokens(cur_line, 2, in.current(), "CURRICULA");
  const int n_curricula = parse_count(cur_line[1], in.current(), "curriculum count");
  std::vector<Curriculum> curricula;
  for (int l = 0; l < n_curricula; ++l) {
    const auto& t = in.next("CURRICULUM");
    const int ln = in.current();
    if (t.size() < 9) throw ParseError(ln, "CURRICULUM: too few fields");
    Curriculum cur;
    cur.id = t[1];
    cur.degree = detail::meta_in(t[2]);
    cur.year = t[3] == "-" ? kUnknownYear : parse_count(t[3], ln, "year");
    cur.class_id = detail::meta_in(t[4]);
    const int p = parse_count(t[5], ln, "period");
    if (p < 1) throw ParseError(ln, "field 'period': periods are numbered from 1");
    cur.period = p - 1;
    cur.max_daily = parse_count(t[6], ln, "max_daily");
    cur.max_consecutive = parse_count(t[7], ln, "max_consecutive");
    cur.lectures = read_list(t, 8, ln, "curriculum '" + cur.id + "'", "CURRICULUM");
    curricula.push_back(std::move(cur));
  }
  auto end_line = in.next("END");
  expect_tokens(end_line, 1, in.current(), "END");
  if (!in.done()) throw ParseError(in.line_number(), "content after END");

  return Instance(name_line[1], cal, std::move(layout), std::move(lectures), std::move(curricula),
                  std::move(professors));
}

inline Instance load_instance(const std::string& path) { return parse_instance(detail::read_text_file(path)); }

inline std::string serialise_instance(const Instance& inst) {
  std::ostringstream out;
  const Calendar& cal = inst.calendar();
  const CampusLayout& layout = inst.layout();
  auto lec_id = [&](int i) -> const std::string& { return inst.lecture(i).id; };
  out << "NAME " << (inst.name().empty() ? "unnamed" : inst.name()) << '\n';
  out << "CALENDAR " << cal.days << ' ' << cal.slots_per_day << ' ' << cal.periods << '\n';
  out << "ROOM_TYPES " << layout.room_type_count();
  for (const auto& t : layout.room_types) out << ' ' << t;
  out << "\nCAMPI " << layout.campus_count() << '\n';
  for (int c = 0; c < layout.campus_count(); ++c) {
    out << "CAMPUS " << layout.campi[c];
    for (int t = 0; t < layout.room_type_count(); ++t) out << ' ' << layout.rooms(c, t);
    out << '\n';
  }
  for (int c = 0; c < layout.campus_count(); ++c) {
    out << "TRAVEL " << layout.campi[c];
    for (int d = 0; d < layout.campus_count(); ++d) out << ' ' << layout.travel_slots(c, d);
    out << '\n';
  }
  out << "LECTURES " << inst.lecture_count() << '\n';
  for (const Lecture& l : inst.lectures()) {
    out << "LECTURE " << l.id << ' ' << l.duration << ' ' << layout.room_types[l.room_type] << ' '
        << layout.campi[l.campus] << ' ';
    if (l.period == kBothPeriods)
      out << "BOTH";
    else
      out << l.period + 1;
    out << ' ' << l.different_day.size();
    for (int d : l.different_day) out << ' ' << lec_id(d);
    out << ' ' << l.predecessors.size();
    for (int e : l.predecessors) out << ' ' << lec_id(e);
    out << '\n';
  }
  out << "PROFESSORS " << inst.professor_count() << '\n';
  for (const Professor& p : inst.professors()) {
    out << "PROFESSOR " << p.id << ' ' << p.max_daily << ' ' << p.max_consecutive << ' ' << p.lectures.size();
    for (int i : p.lectures) out << ' ' << lec_id(i);
    out << '\n';
  }
  out << "CURRICULA " << inst.curriculum_count() << '\n';
  for (const Curriculum& c : inst.curricula()) {
    out << "CURRICULUM " << c.id << ' ' << detail::meta_out(c.degree) << ' '
        << (c.year == kUnknownYear ? std::string("-") : std::to_string(c.year)) << ' ' << detail::meta_out(c.class_id)
        << ' ' << c.period + 1 << ' ' << c.max_daily << ' ' << c.max_consecutive << ' ' << c.lectures.size();
    for (int i : c.lectures) out << ' ' << lec_id(i);
    out << '\n';
  }
  out << "END\n";
  return out.str();
}

}  // namespace cbtt
