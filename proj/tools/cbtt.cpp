#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cbtt/cli.hpp"

namespace {

template <typename T>
std::optional<T> given(const CLI::Option* opt, const T& value) {
  return opt->count() ? std::optional<T>(value) : std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace cbtt::cli;
  CLI::App app{"Curriculum-based course timetabling solver"};
  app.require_subcommand(1);

  // solve
  RunConfig cfg;
  std::string order = "ordered", policy, out_dir;
  int rho = 0;
  double rho_percent = kDefaultRhoPercent;
  long max_violations = 0;
  auto* solve = app.add_subcommand("solve", "Find a feasible timetable");
  solve->add_option("instance", cfg.instance_path, "Instance file (.ctt files are adapted from ITC2007)")->required();
  auto* solve_policy = solve->add_option("--policy", policy, "Adaptation policy JSON for .ctt instances");
  solve->add_option("--order", order, "Curriculum order")->check(CLI::IsMember({"ordered", "random"}));
  solve->add_option("--s1", cfg.criteria.s1, "ALNS iterations per phase")->check(CLI::PositiveNumber);
  solve->add_option("--s2", cfg.criteria.s2, "Penalty updates without improvement before shaking")->check(CLI::PositiveNumber);
  solve->add_option("--s3", cfg.criteria.s3, "Shaking iterations")->check(CLI::PositiveNumber);
  auto* o_rho = solve->add_option("--rho", rho, "Curricula added per increment")->check(CLI::PositiveNumber);
  auto* o_pct = solve->add_option("--rho-percent", rho_percent, "Curricula per increment, percent of all")
                    ->check(CLI::Range(0.0, 100.0));
  auto* o_viol = solve->add_option("--max-violations", max_violations, "Add curricula until this many violations")
                     ->check(CLI::NonNegativeNumber);
  auto* o_none = solve->add_flag("--no-decomposition", "Add every curriculum at once");
  o_rho->excludes(o_pct)->excludes(o_viol)->excludes(o_none);
  o_pct->excludes(o_viol)->excludes(o_none);
  o_viol->excludes(o_none);
  solve->add_option("--seed", cfg.seed, "Random seed");
  solve->add_option("--iteration-limit", cfg.criteria.iteration_limit, "Stop after this many iterations (0: none)")
      ->check(CLI::NonNegativeNumber);
  solve->add_option("--time-limit", cfg.criteria.time_limit, "Stop after this many seconds (0: none)")
      ->check(CLI::NonNegativeNumber);
  solve->add_option("--swap-probability", cfg.search.swap_probability, "Probability of the swap sub-type")
      ->check(CLI::Range(0.0, 1.0));
  solve->add_flag("--s1-non-improving", cfg.search.s1_counts_non_improving,
                  "Count only non-improving iterations towards s1");
  auto* solve_out = solve->add_option("--out", out_dir, std::string("Output directory (default $") + kOutDirEnv + " or .)");

  // check
  std::string check_instance, check_solution, check_policy;
  auto* check = app.add_subcommand("check", "Count the violations of a solution");
  check->add_option("instance", check_instance)->required();
  check->add_option("solution", check_solution)->required();
  auto* check_policy_opt = check->add_option("--policy", check_policy);

  // bench
  std::string matrix, bench_csv;
  auto* bench = app.add_subcommand("bench", "Run a configuration matrix");
  bench->add_option("matrix", matrix, "Matrix JSON")->required();
  auto* bench_out = bench->add_option("--out", bench_csv, "CSV output file (default: stdout)");

  // convert
  std::string ctt, convert_policy, convert_out;
  auto* convert = app.add_subcommand("convert", "Adapt an ITC2007 instance to the extended format");
  convert->add_option("ctt", ctt)->required();
  auto* convert_policy_opt = convert->add_option("--policy", convert_policy);
  convert->add_option("--out", convert_out)->required();

  // subdivide
  std::string sub_instance, sub_out;
  int sub_classes = 0;
  std::uint64_t sub_seed = 1;
  std::vector<std::string> sub_rooms;
  auto* subdivide = app.add_subcommand("subdivide", "Random subdivision by classes");
  subdivide->add_option("instance", sub_instance)->required();
  subdivide->add_option("--classes", sub_classes)->required()->check(CLI::PositiveNumber);
  subdivide->add_option("--seed", sub_seed);
  subdivide->add_option("--rooms", sub_rooms, "Total rooms per campus, campus=count");
  subdivide->add_option("--out", sub_out)->required();

  // generate
  std::string gen_spec, gen_out, gen_witness;
  std::uint64_t gen_seed = 1;
  auto* generate = app.add_subcommand("generate", "Synthetic instance, feasible by construction");
  auto* gen_spec_opt = generate->add_option("--spec", gen_spec, "Generator parameters JSON");
  generate->add_option("--seed", gen_seed);
  generate->add_option("--out", gen_out)->required();
  auto* gen_witness_opt = generate->add_option("--witness", gen_witness, "Also write the planted solution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  if (solve->parsed()) {
    cfg.order = parse_order(order);
    cfg.policy_path = given(solve_policy, policy);
    cfg.out_dir = given(solve_out, out_dir);
    if (o_rho->count()) cfg.increment = {IncrementSetting::Kind::absolute, static_cast<double>(rho)};
    else if (o_viol->count()) cfg.increment = {IncrementSetting::Kind::violations, static_cast<double>(max_violations)};
    else if (o_none->count()) cfg.increment = {IncrementSetting::Kind::none, 0};
    else cfg.increment = {IncrementSetting::Kind::percent, rho_percent};
    return cmd_solve(cfg, std::cout, std::cerr);
  }
  if (check->parsed())
    return cmd_check(check_instance, check_solution, given(check_policy_opt, check_policy), std::cout, std::cerr);
  if (bench->parsed()) return cmd_bench(matrix, given(bench_out, bench_csv), std::cout, std::cerr);
  if (convert->parsed()) return cmd_convert(ctt, given(convert_policy_opt, convert_policy), convert_out, std::cout, std::cerr);
  if (subdivide->parsed()) return cmd_subdivide(sub_instance, sub_classes, sub_seed, sub_rooms, sub_out, std::cout, std::cerr);
  if (generate->parsed())
    return cmd_generate(given(gen_spec_opt, gen_spec), gen_seed, gen_out, given(gen_witness_opt, gen_witness), std::cout,
                        std::cerr);
  return kExitError;
}
