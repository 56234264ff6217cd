#pragma once

// Command implementations behind tools/cbtt. Each returns the process exit
// status: 0 success/feasible, 1 infeasible, 2 usage or I/O error.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "cbtt/evaluator.hpp"
#include "cbtt/instance_io.hpp"
#include "cbtt/itc2007.hpp"
#include "cbtt/ordering.hpp"
#include "cbtt/report.hpp"
#include "cbtt/search.hpp"
#include "cbtt/solution_io.hpp"
#include "cbtt/subdivision.hpp"
#include "cbtt/synthetic.hpp"
#include "json.hpp"

namespace cbtt::cli {

inline constexpr int kExitFeasible = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitError = 2;
inline constexpr const char* kOutDirEnv = "CBTT_OUT_DIR";
inline constexpr double kDefaultRhoPercent = 50.0;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IncrementSetting {
  enum class Kind { percent, absolute, violations, none };
  Kind kind = Kind::percent;
  double value = kDefaultRhoPercent;

  IncrementPolicy resolve(int curricula) const {
    switch (kind) {
      case Kind::percent: return IncrementPolicy::fixed_fraction(value, curricula);
      case Kind::absolute: return IncrementPolicy::fixed(static_cast<int>(value));
      case Kind::violations: return IncrementPolicy::violations(static_cast<long>(value));
      case Kind::none: return IncrementPolicy::none();
    }
    return IncrementPolicy::none();
  }
};

enum class Order { ordered, random };

inline std::string_view order_name(Order o) { return o == Order::ordered ? "ordered" : "random"; }

inline Order parse_order(const std::string& s) {
  if (s == "ordered") return Order::ordered;
  if (s == "random") return Order::random;
  throw UsageError("unknown order '" + s + "' (expected ordered or random)");
}

struct RunConfig {
  std::string instance_path;
  std::optional<std::string> policy_path;
  Order order = Order::ordered;
  IncrementSetting increment;
  StoppingCriteria criteria;
  SearchOptions search;
  std::uint64_t seed = 1;
  std::optional<std::string> out_dir;
};

inline std::string default_out_dir() {
  const char* env = std::getenv(kOutDirEnv);
  return env && *env ? std::string(env) : std::string(".");
}

inline bool is_ctt(const std::string& path) { return std::filesystem::path(path).extension() == ".ctt"; }

struct LoadedInstance {
  Instance instance;
  std::string format;  // "cbtt" or "itc2007"
  std::optional<AdaptationPolicy> policy;
};

// ITC2007 files (.ctt) are adapted with the given or default policy; anything
// else is read as the extended format.
inline LoadedInstance load_any_instance(const std::string& path, const std::optional<std::string>& policy_path) {
  if (is_ctt(path)) {
    AdaptationPolicy policy = policy_path ? AdaptationPolicy::load(*policy_path) : AdaptationPolicy{};
    return {load_itc2007(path, policy), "itc2007", policy};
  }
  if (policy_path) throw UsageError("--policy only applies to ITC2007 (.ctt) instances");
  return {load_instance(path), "cbtt", std::nullopt};
}

inline std::vector<int> make_order(const Instance& inst, Order order, std::uint64_t seed) {
  return order == Order::ordered ? ordered_sort(inst) : random_sort(inst, seed);
}

inline nlohmann::ordered_json increment_json(const IncrementPolicy& p) {
  nlohmann::ordered_json j;
  switch (p.kind) {
    case IncrementKind::fixed: j["kind"] = "fixed"; j["rho"] = p.rho; break;
    case IncrementKind::violations_based: j["kind"] = "violations_based"; j["max_violations"] = p.max_violations; break;
    case IncrementKind::none: j["kind"] = "none"; break;
  }
  return j;
}

inline nlohmann::ordered_json config_json(const RunConfig& cfg, const LoadedInstance& loaded,
                                          const IncrementPolicy& increment) {
  nlohmann::ordered_json j;
  j["instance"] = cfg.instance_path;
  j["instance_name"] = loaded.instance.name();
  j["format"] = loaded.format;
  if (loaded.policy) {
    j["policy"] = loaded.policy->to_json();
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(policy_hash(*loaded.policy)));
    j["policy_hash"] = hash;
  }
  j["order"] = order_name(cfg.order);
  j["s1"] = cfg.criteria.s1;
  j["s2"] = cfg.criteria.s2;
  j["s3"] = cfg.criteria.s3;
  j["increment"] = increment_json(increment);
  j["seed"] = cfg.seed;
  j["iteration_limit"] = cfg.criteria.iteration_limit;
  j["time_limit"] = cfg.criteria.time_limit;
  j["swap_probability"] = cfg.search.swap_probability;
  j["s1_counts_non_improving"] = cfg.search.s1_counts_non_improving;
  j["max_redraws"] = cfg.search.max_redraws;
  return j;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw std::runtime_error("error writing '" + path.string() + "'");
}

inline std::string family_lines(const ViolationLedger& ledger) {
  std::ostringstream out;
  for (int f = 0; f < kFamilyCount; ++f)
    out << family_name(static_cast<Family>(f)) << ' ' << ledger.family_total(static_cast<Family>(f)) << '\n';
  out << "total " << ledger.grand_total() << '\n';
  return out.str();
}

inline SolveResult run(const RunConfig& cfg, const Instance& inst, const IncrementPolicy& increment) {
  const std::vector<int> order = make_order(inst, cfg.order, cfg.seed);
  SolveOptions options;
  options.search = cfg.search;
  return solve(inst, order, increment, cfg.criteria, cfg.seed, options);
}

inline int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.criteria.check();
    cfg.search.check();
    LoadedInstance loaded = load_any_instance(cfg.instance_path, cfg.policy_path);
    const Instance& inst = loaded.instance;
    const IncrementPolicy increment = cfg.increment.resolve(inst.curriculum_count());
    increment.check();
    SolveResult result = run(cfg, inst, increment);

    nlohmann::ordered_json report;
    report["config"] = config_json(cfg, loaded, increment);
    nlohmann::ordered_json stats;
    stats["feasible"] = result.feasible;
    stats["complete"] = result.complete;
    stats["stop_reason"] = result.stop_reason;
    stats["iterations"] = result.iterations;
    stats["phases"] = result.phases;
    stats["shakes"] = result.shakes;
    stats["increments"] = result.increments;
    stats["construction_fallbacks"] = result.fallbacks.size();
    stats["wall_seconds"] = result.seconds;
    report["result"] = stats;
    report["ledger"] = ledger_report(inst, result.ledger);

    const std::string solution = serialise_solution(inst, result.schedule);
    const std::string trace = trace_csv(result.trace);
    const std::string report_text = report.dump(2) + "\n";

    const std::filesystem::path dir = cfg.out_dir.value_or(default_out_dir());
    std::filesystem::create_directories(dir);
    const std::string stem = std::filesystem::path(cfg.instance_path).stem().string();
    write_file(dir / (stem + ".sol"), solution);
    write_file(dir / (stem + ".trace.csv"), trace);
    write_file(dir / (stem + ".report.json"), report_text);

    out << (result.feasible ? "feasible" : "infeasible") << " iterations " << result.iterations << " seconds "
        << result.seconds << '\n'
        << family_lines(result.ledger);
    return result.feasible ? kExitFeasible : kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

inline int cmd_check(const std::string& instance_path, const std::string& solution_path,
                     const std::optional<std::string>& policy_path, std::ostream& out, std::ostream& err) {
  try {
    LoadedInstance loaded = load_any_instance(instance_path, policy_path);
    const Instance& inst = loaded.instance;
    const Schedule schedule = load_solution(inst, solution_path);
    const ViolationLedger ledger = evaluate_full(inst, schedule);
    const int unassigned = inst.lecture_count() - schedule.added_count();
    out << family_lines(ledger) << "unassigned " << unassigned << '\n';
    return ledger.feasible() && unassigned == 0 ? kExitFeasible : kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

inline int cmd_convert(const std::string& ctt_path, const std::optional<std::string>& policy_path,
                       const std::string& out_path, std::ostream& out, std::ostream& err) {
  try {
    AdaptationPolicy policy = policy_path ? AdaptationPolicy::load(*policy_path) : AdaptationPolicy{};
    const Instance inst = load_itc2007(ctt_path, policy);
    write_file(out_path, serialise_instance(inst));
    out << inst.name() << ": " << inst.lecture_count() << " lectures, " << inst.curriculum_count() << " curricula\n";
    return kExitFeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

// Room totals are given as "campus=count".
inline std::map<std::string, int> parse_room_totals(const std::vector<std::string>& items) {
  std::map<std::string, int> totals;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("room total '" + item + "' is not campus=count");
    try {
      std::size_t used = 0;
      const int n = std::stoi(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1 || n < 0) throw std::invalid_argument("count");
      totals[item.substr(0, eq)] = n;
    } catch (const std::exception&) {
      throw UsageError("room total '" + item + "' has an invalid count");
    }
  }
  return totals;
}

inline int cmd_subdivide(const std::string& instance_path, int classes, std::uint64_t seed,
                         const std::vector<std::string>& room_totals, const std::string& out_path, std::ostream& out,
                         std::ostream& err) {
  try {
    const Instance inst = load_instance(instance_path);
    const Instance sub = generate_subdivision(inst, classes, parse_room_totals(room_totals), seed);
    write_file(out_path, serialise_instance(sub));
    out << sub.name() << ": " << sub.lecture_count() << " lectures, " << sub.curriculum_count() << " curricula\n";
    return kExitFeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

// SyntheticSpec <-> JSON; unknown keys are rejected.
inline nlohmann::ordered_json synthetic_spec_json(const SyntheticSpec& s) {
  return {{"name", s.name},
          {"degrees", s.degrees},
          {"years", s.years},
          {"classes", s.classes},
          {"days", s.days},
          {"slots_per_day", s.slots_per_day},
          {"campi", s.campi},
          {"travel", s.travel},
          {"room_types", s.room_types},
          {"semester_courses", s.semester_courses},
          {"shared_courses", s.shared_courses},
          {"own_courses", s.own_courses},
          {"elective_pool", s.elective_pool},
          {"electives_taken", s.electives_taken},
          {"min_lectures", s.min_lectures},
          {"max_lectures", s.max_lectures},
          {"min_duration", s.min_duration},
          {"max_duration", s.max_duration},
          {"max_daily", s.max_daily},
          {"max_consecutive", s.max_consecutive},
          {"degrees_per_department", s.degrees_per_department},
          {"professor_load", s.professor_load},
          {"room_candidates", s.room_candidates},
          {"room_slack", s.room_slack},
          {"different_day_probability", s.different_day_probability},
          {"precedence_probability", s.precedence_probability}};
}

inline SyntheticSpec synthetic_spec_from_json(const nlohmann::json& j) {
  SyntheticSpec s;
  const nlohmann::ordered_json defaults = synthetic_spec_json(s);
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!defaults.contains(it.key())) throw UsageError("unknown synthetic spec key '" + it.key() + "'");
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  get("name", s.name);
  get("degrees", s.degrees);
  get("years", s.years);
  get("classes", s.classes);
  get("days", s.days);
  get("slots_per_day", s.slots_per_day);
  get("campi", s.campi);
  get("travel", s.travel);
  get("room_types", s.room_types);
  get("semester_courses", s.semester_courses);
  get("shared_courses", s.shared_courses);
  get("own_courses", s.own_courses);
  get("elective_pool", s.elective_pool);
  get("electives_taken", s.electives_taken);
  get("min_lectures", s.min_lectures);
  get("max_lectures", s.max_lectures);
  get("min_duration", s.min_duration);
  get("max_duration", s.max_duration);
  get("max_daily", s.max_daily);
  get("max_consecutive", s.max_consecutive);
  get("degrees_per_department", s.degrees_per_department);
  get("professor_load", s.professor_load);
  get("room_candidates", s.room_candidates);
  get("room_slack", s.room_slack);
  get("different_day_probability", s.different_day_probability);
  get("precedence_probability", s.precedence_probability);
  s.check();
  return s;
}

inline int cmd_generate(const std::optional<std::string>& spec_path, std::uint64_t seed, const std::string& out_path,
                        const std::optional<std::string>& witness_path, std::ostream& out, std::ostream& err) {
  try {
    SyntheticSpec spec;
    if (spec_path) spec = synthetic_spec_from_json(nlohmann::json::parse(detail::read_text_file(*spec_path)));
    const SyntheticInstance syn = generate_synthetic(spec, seed);
    write_file(out_path, serialise_instance(syn.instance));
    if (witness_path) write_file(*witness_path, serialise_solution(syn.instance, syn.witness));
    out << syn.instance.name() << ": " << syn.instance.lecture_count() << " lectures, "
        << syn.instance.curriculum_count() << " curricula, " << syn.instance.professor_count() << " professors\n";
    return kExitFeasible;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

// ---- bench -------------------------------------------------------------

struct BenchRow {
  std::string instance;
  Order order = Order::ordered;
  int s1 = 0, s2 = 0, s3 = 0;
  IncrementKind increment_kind = IncrementKind::none;
  long increment_value = 0;  // rho, max violations, or the curriculum count for none
  std::uint64_t seed = 0;
  bool feasible = false;
  long iterations = 0;
  double seconds = 0;
  std::string status = "ok";

  auto key() const {
    return std::tuple(instance, static_cast<int>(order), s1, s2, s3, static_cast<int>(increment_kind), increment_value);
  }
};

inline std::string_view increment_kind_name(IncrementKind k) {
  switch (k) {
    case IncrementKind::fixed: return "fixed";
    case IncrementKind::violations_based: return "violations";
    case IncrementKind::none: return "none";
  }
  return "";
}

inline std::string bench_csv_header() {
  return "instance,order,s1,s2,s3,increment,increment_value,seed,feasible,iterations,wall_seconds,status";
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline std::vector<IncrementSetting> parse_bench_increments(const nlohmann::json& items) {
  std::vector<IncrementSetting> out;
  for (const auto& item : items) {
    if (!item.is_object() || item.size() != 1) throw UsageError("each increment must be an object with one key");
    const auto& [key, value] = *item.items().begin();
    IncrementSetting s;
    if (key == "rho") s = {IncrementSetting::Kind::absolute, value.get<double>()};
    else if (key == "rho_percent") s = {IncrementSetting::Kind::percent, value.get<double>()};
    else if (key == "max_violations") s = {IncrementSetting::Kind::violations, value.get<double>()};
    else if (key == "none") s = {IncrementSetting::Kind::none, 0};
    else throw UsageError("unknown increment key '" + key + "'");
    out.push_back(s);
  }
  return out;
}

// Matrix document:
// {"instances": [...], "policy": path?, "orders": [...], "criteria": [[s1,s2,s3]...],
//  "increments": [{"rho": n} | {"rho_percent": p} | {"max_violations": n} | {"none": true}],
//  "seeds": [...], "iteration_limit": n?, "time_limit": s?}
inline int cmd_bench(const std::string& matrix_path, const std::optional<std::string>& csv_path, std::ostream& out,
                     std::ostream& err) {
  nlohmann::json matrix;
  std::vector<std::string> instances;
  std::vector<Order> orders;
  std::vector<std::array<int, 3>> criteria;
  std::vector<IncrementSetting> increments;
  std::vector<std::uint64_t> seeds;
  std::optional<std::string> policy;
  long iteration_limit = 0;
  double time_limit = 0;
  try {
    matrix = nlohmann::json::parse(detail::read_text_file(matrix_path));
    static const char* known[] = {"instances", "policy", "orders", "criteria", "increments",
                                  "seeds", "iteration_limit", "time_limit"};
    for (auto it = matrix.begin(); it != matrix.end(); ++it)
      if (std::find(std::begin(known), std::end(known), it.key()) == std::end(known))
        throw UsageError("unknown matrix key '" + it.key() + "'");
    const auto base = std::filesystem::path(matrix_path).parent_path();
    auto resolve = [&](const std::string& p) {
      const std::filesystem::path path(p);
      return path.is_absolute() ? p : (base / path).string();
    };
    for (const auto& p : matrix.at("instances")) instances.push_back(resolve(p.get<std::string>()));
    if (matrix.contains("policy")) policy = resolve(matrix.at("policy").get<std::string>());
    for (const auto& o : matrix.value("orders", nlohmann::json::array({"ordered"}))) orders.push_back(parse_order(o.get<std::string>()));
    for (const auto& c : matrix.value("criteria", nlohmann::json::array({{25, 3, 1}})))
      criteria.push_back(c.get<std::array<int, 3>>());
    increments = parse_bench_increments(matrix.value("increments", nlohmann::json::array({{{"rho_percent", 50}}})));
    for (const auto& s : matrix.at("seeds")) seeds.push_back(s.get<std::uint64_t>());
    iteration_limit = matrix.value("iteration_limit", 0L);
    time_limit = matrix.value("time_limit", 0.0);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  std::vector<BenchRow> rows;
  for (const auto& path : instances) {
    std::optional<LoadedInstance> loaded;
    std::string load_error;
    try {
      loaded = load_any_instance(path, is_ctt(path) ? policy : std::nullopt);
    } catch (const std::exception& e) {
      load_error = e.what();
    }
    const std::string name = std::filesystem::path(path).stem().string();
    for (Order order : orders)
      for (const auto& c : criteria)
        for (const auto& inc : increments)
          for (std::uint64_t seed : seeds) {
            BenchRow row;
            row.instance = name;
            row.order = order;
            row.s1 = c[0], row.s2 = c[1], row.s3 = c[2];
            row.seed = seed;
            row.increment_kind = inc.kind == IncrementSetting::Kind::violations ? IncrementKind::violations_based
                                 : inc.kind == IncrementSetting::Kind::none     ? IncrementKind::none
                                                                                : IncrementKind::fixed;
            row.increment_value = static_cast<long>(inc.value);
            if (!loaded) {
              row.status = "error: " + load_error;
              rows.push_back(row);
              continue;
            }
            try {
              RunConfig cfg;
              cfg.instance_path = path;
              cfg.order = order;
              cfg.criteria = {c[0], c[1], c[2], iteration_limit, time_limit};
              cfg.seed = seed;
              const IncrementPolicy p = inc.resolve(loaded->instance.curriculum_count());
              p.check();
              row.increment_value = p.kind == IncrementKind::fixed             ? p.rho
                                    : p.kind == IncrementKind::violations_based ? p.max_violations
                                                                               : loaded->instance.curriculum_count();
              const SolveResult r = run(cfg, loaded->instance, p);
              row.feasible = r.feasible;
              row.iterations = r.iterations;
              row.seconds = r.seconds;
              if (!r.feasible) row.status = r.stop_reason;
            } catch (const std::exception& e) {
              row.status = std::string("error: ") + e.what();
            }
            rows.push_back(row);
          }
  }

  std::stable_sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    return std::tuple(a.key(), a.seed) < std::tuple(b.key(), b.seed);
  });

  std::ostringstream csv;
  csv << bench_csv_header() << '\n';
  char buf[64];
  auto emit = [&](const BenchRow& r, const std::string& seed, const std::string& feasible, const std::string& iterations,
                  double seconds, const std::string& status) {
    std::snprintf(buf, sizeof buf, "%.6f", seconds);
    csv << csv_field(r.instance) << ',' << order_name(r.order) << ',' << r.s1 << ',' << r.s2 << ',' << r.s3 << ','
        << increment_kind_name(r.increment_kind) << ',' << r.increment_value << ',' << seed << ',' << feasible << ','
        << iterations << ',' << buf << ',' << csv_field(status) << '\n';
  };
  for (const auto& r : rows)
    emit(r, std::to_string(r.seed), r.feasible ? "1" : "0", std::to_string(r.iterations), r.seconds, r.status);
  for (std::size_t a = 0; a < rows.size();) {
    std::size_t b = a;
    double feasible = 0, iterations = 0, seconds = 0;
    while (b < rows.size() && rows[b].key() == rows[a].key()) {
      feasible += rows[b].feasible;
      iterations += static_cast<double>(rows[b].iterations);
      seconds += rows[b].seconds;
      ++b;
    }
    const double n = static_cast<double>(b - a);
    char f[32], it[32];
    std::snprintf(f, sizeof f, "%.4f", feasible / n);
    std::snprintf(it, sizeof it, "%.2f", iterations / n);
    emit(rows[a], "mean", f, it, seconds / n, "aggregate n=" + std::to_string(b - a));
    a = b;
  }

  try {
    if (csv_path) {
      write_file(*csv_path, csv.str());
      out << rows.size() << " runs written to " << *csv_path << '\n';
    } else {
      out << csv.str();
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitFeasible;
}

}  // namespace cbtt::cli
