#pragma once

// Serialised views of a run: the trace as CSV and the residual ledger as JSON.

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "cbtt/ledger.hpp"
#include "cbtt/model.hpp"
#include "cbtt/search.hpp"
#include "json.hpp"

namespace cbtt {

inline std::string trace_csv_header() {
  std::string h = "sequence,increment,iteration,event,added_curricula,added_lectures,raw,augmented";
  for (int n = 0; n < kNeighbourhoodCount; ++n) {
    h += ",p_";
    h += neighbourhood_name(static_cast<NeighbourhoodFamily>(n));
  }
  return h;
}

inline std::string trace_csv(const std::vector<TraceRow>& rows) {
  std::string out = trace_csv_header() + "\n";
  char buf[64];
  for (const TraceRow& r : rows) {
    out += std::to_string(r.sequence) + "," + std::to_string(r.increment) + "," + std::to_string(r.iteration) + "," +
           std::string(trace_event_name(r.event)) + "," + std::to_string(r.added_curricula) + "," +
           std::to_string(r.added_lectures) + "," + std::to_string(r.raw) + "," + std::to_string(r.augmented);
    for (double p : r.probabilities) {
      std::snprintf(buf, sizeof buf, ",%.9f", p);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

namespace detail {

// Indices with a positive value, largest first, ties by index; at most `top`.
template <typename Value>
std::vector<int> top_entities(int n, int top, Value&& value) {
  std::vector<int> idx;
  for (int e = 0; e < n; ++e)
    if (value(e) > 0) idx.push_back(e);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return value(a) > value(b); });
  if (static_cast<int>(idx.size()) > top) idx.resize(top);
  return idx;
}

}  // namespace detail

inline nlohmann::ordered_json ledger_report(const Instance& inst, const ViolationLedger& ledger, int top = 10) {
  nlohmann::ordered_json j;
  j["grand_total"] = ledger.grand_total();
  j["feasible"] = ledger.feasible();
  nlohmann::ordered_json families = nlohmann::ordered_json::object();
  for (int f = 0; f < kFamilyCount; ++f)
    families[std::string(family_name(static_cast<Family>(f)))] = ledger.family_total(static_cast<Family>(f));
  j["families"] = families;

  const Calendar& cal = inst.calendar();
  auto slots = nlohmann::ordered_json::array();
  for (int s : detail::top_entities(cal.slot_count(), top, [&](int s) { return ledger.slot_total(s); }))
    slots.push_back({{"day", cal.day_of(s) + 1}, {"slot", cal.hour_of(s) + 1}, {"violations", ledger.slot_total(s)}});
  j["worst_slots"] = slots;

  auto curricula = nlohmann::ordered_json::array();
  for (int l : detail::top_entities(inst.curriculum_count(), top, [&](int l) { return ledger.curriculum_total(l); }))
    curricula.push_back({{"id", inst.curriculum(l).id}, {"violations", ledger.curriculum_total(l)}});
  j["worst_curricula"] = curricula;

  auto professors = nlohmann::ordered_json::array();
  for (int p : detail::top_entities(inst.professor_count(), top, [&](int p) { return ledger.professor_total(p); }))
    professors.push_back({{"id", inst.professor(p).id}, {"violations", ledger.professor_total(p)}});
  j["worst_professors"] = professors;

  const CampusLayout& layout = inst.layout();
  const int types = layout.room_type_count();
  auto rooms = nlohmann::ordered_json::array();
  for (int cell : detail::top_entities(layout.campus_count() * types, top,
                                       [&](int cell) { return ledger.room_cell_total(cell / types, cell % types); }))
    rooms.push_back({{"campus", layout.campi[cell / types]},
                     {"room_type", layout.room_types[cell % types]},
                     {"violations", ledger.room_cell_total(cell / types, cell % types)}});
  j["worst_room_types"] = rooms;
  return j;
}

}  // namespace cbtt
