#pragma once

// Solution files: one line per assigned lecture, "<lecture id> <day> <slot>",
// both 1-based. Blank lines and '#' comments are ignored.

#include <sstream>
#include <string>
#include <string_view>

#include "cbtt/instance_io.hpp"
#include "cbtt/model.hpp"
#include "cbtt/schedule.hpp"

namespace cbtt {

inline std::string serialise_solution(const Instance& inst, const Schedule& s) {
  std::ostringstream out;
  for (int i = 0; i < inst.lecture_count(); ++i) {
    if (!s.is_added(i)) continue;
    out << inst.lecture(i).id << ' ' << s.at(i).day + 1 << ' ' << s.at(i).start + 1 << '\n';
  }
  return out.str();
}

inline Schedule parse_solution(const Instance& inst, std::string_view text) {
  Schedule s(inst);
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto tokens = detail::split_ws(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 3) throw ParseError(number, "expected '<lecture> <day> <slot>'");
    const auto i = inst.find_lecture(tokens[0]);
    if (!i) throw ReferenceError("line " + std::to_string(number) + ": unknown lecture '" + tokens[0] + "'");
    if (s.is_added(*i)) throw ParseError(number, "lecture '" + tokens[0] + "' assigned twice");
    const int day = detail::parse_count(tokens[1], number, "day") - 1;
    const int slot = detail::parse_count(tokens[2], number, "slot") - 1;
    const Slot at{day, slot};
    if (!fits_in_day(inst, *i, at)) throw ParseError(number, "lecture '" + tokens[0] + "' does not fit at that slot");
    s.assign(*i, at);
  }
  return s;
}

inline Schedule load_solution(const Instance& inst, const std::string& path) {
  return parse_solution(inst, detail::read_text_file(path));
}

}  // namespace cbtt
