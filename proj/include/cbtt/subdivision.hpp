#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cbtt/model.hpp"
#include "cbtt/rng.hpp"

namespace cbtt {

// Class key of a curriculum. Curricula without class metadata form their own class.
inline std::pair<std::string, std::string> class_key(const Curriculum& c) {
  if (c.class_id.empty()) return {"\x01" + c.degree, c.id};
  return {c.degree, c.class_id};
}

inline int class_count(const Instance& inst) {
  std::set<std::pair<std::string, std::string>> keys;
  for (const Curriculum& c : inst.curricula()) keys.insert(class_key(c));
  return static_cast<int>(keys.size());
}

// Scales a campus's per-type room counts to a new total, keeping proportions
// (largest remainder).
inline std::vector<int> scale_rooms(const std::vector<int>& counts, int total) {
  std::vector<int> out(counts.size(), 0);
  if (counts.empty()) return out;
  long sum = 0;
  for (int c : counts) sum += c;
  std::vector<std::pair<double, int>> remainders;
  int assigned = 0;
  for (std::size_t t = 0; t < counts.size(); ++t) {
    const double share = sum > 0 ? static_cast<double>(counts[t]) * total / static_cast<double>(sum)
                                 : static_cast<double>(total) / static_cast<double>(counts.size());
    out[t] = static_cast<int>(share);
    assigned += out[t];
    remainders.emplace_back(share - out[t], static_cast<int>(t));
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (int k = 0; assigned < total; ++k, ++assigned) ++out[remainders[k % remainders.size()].second];
  return out;
}

// Uniform sample of `classes` classes with their curricula, the lectures of
// those curricula and the professors teaching them. `room_totals` maps a
// campus id to its new total room count; campi not listed keep their counts.
inline Instance generate_subdivision(const Instance& inst, int classes, const std::map<std::string, int>& room_totals,
                                     std::uint64_t seed) {
  std::vector<std::pair<std::string, std::string>> keys;
  {
    std::set<std::pair<std::string, std::string>> unique;
    for (const Curriculum& c : inst.curricula()) unique.insert(class_key(c));
    keys.assign(unique.begin(), unique.end());
  }
  if (classes < 1 || classes > static_cast<int>(keys.size()))
    throw InvariantError("subdivision: class_count " + std::to_string(classes) + " not in [1, " +
                         std::to_string(keys.size()) + "]");
  Rng rng(seed);
  rng.shuffle(keys);
  std::set<std::pair<std::string, std::string>> kept_classes(keys.begin(), keys.begin() + classes);

  std::vector<char> keep_lecture(inst.lecture_count(), 0);
  std::vector<int> kept_curricula;
  for (int l = 0; l < inst.curriculum_count(); ++l) {
    if (!kept_classes.contains(class_key(inst.curriculum(l)))) continue;
    kept_curricula.push_back(l);
    for (int i : inst.curriculum(l).lectures) keep_lecture[i] = 1;
  }
  std::vector<int> new_index(inst.lecture_count(), -1);
  int n = 0;
  for (int i = 0; i < inst.lecture_count(); ++i)
    if (keep_lecture[i]) new_index[i] = n++;
  auto remap = [&](const std::vector<int>& ids) {
    std::vector<int> out;
    for (int i : ids)
      if (new_index[i] >= 0) out.push_back(new_index[i]);
    return out;
  };

  std::vector<Lecture> lectures;
  for (int i = 0; i < inst.lecture_count(); ++i) {
    if (!keep_lecture[i]) continue;
    Lecture l = inst.lecture(i);
    l.different_day = remap(l.different_day);
    l.predecessors = remap(l.predecessors);
    lectures.push_back(std::move(l));
  }
  std::vector<Curriculum> curricula;
  for (int l : kept_curricula) {
    Curriculum c = inst.curriculum(l);
    c.lectures = remap(c.lectures);
    curricula.push_back(std::move(c));
  }
  std::vector<Professor> professors;
  for (const Professor& p : inst.professors()) {
    Professor q = p;
    q.lectures = remap(p.lectures);
    if (!q.lectures.empty()) professors.push_back(std::move(q));
  }

  CampusLayout layout = inst.layout();
  for (const auto& [campus, total] : room_totals) {
    auto it = std::find(layout.campi.begin(), layout.campi.end(), campus);
    if (it == layout.campi.end()) throw ReferenceError("subdivision: unknown campus '" + campus + "'");
    if (total < 0) throw InvariantError("subdivision: negative room total for campus '" + campus + "'");
    const int c = static_cast<int>(it - layout.campi.begin());
    std::vector<int> counts(layout.room_type_count());
    for (int t = 0; t < layout.room_type_count(); ++t) counts[t] = layout.rooms(c, t);
    counts = scale_rooms(counts, total);
    for (int t = 0; t < layout.room_type_count(); ++t) layout.rooms(c, t) = counts[t];
  }

  return Instance(inst.name() + "-sub" + std::to_string(classes) + "-s" + std::to_string(seed), inst.calendar(),
                  std::move(layout), std::move(lectures), std::move(curricula), std::move(professors));
}

}  // namespace cbtt
