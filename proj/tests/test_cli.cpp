#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cbtt/cli.hpp"
#include "cbtt/instance_io.hpp"
#include "cbtt/solution_io.hpp"

namespace fs = std::filesystem;

namespace {

const char* kToyCtt = R"(Name: Toy
Courses: 3
Rooms: 2
Days: 5
Periods_per_day: 4
Curricula: 2
Constraints: 1

COURSES:
c1 t1 3 2 30
c2 t2 2 1 20
c3 t1 1 1 10

ROOMS:
r1 40
r2 25

CURRICULA:
q1 2 c1 c2
q2 2 c2 c3

UNAVAILABILITY_CONSTRAINTS:
c1 0 0

END.
)";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cbtt-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Runs the binary with its stdout captured; returns the exit status.
  int run(const std::string& args, std::string* out = nullptr) {
    const fs::path capture = dir_ / "stdout.txt";
    const std::string cmd =
        std::string("\"") + CBTT_CLI + "\" " + args + " > \"" + capture.string() + "\" 2> \"" + (dir_ / "stderr.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    if (out) *out = slurp(capture);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path at(const std::string& name) const { return dir_ / name; }

  std::string generate(std::uint64_t seed) {
    spit(at("spec.json"), R"({"name": "syn", "degrees": 2, "years": 2})");
    const fs::path inst = at("syn.txt");
    EXPECT_EQ(run("generate --spec " + at("spec.json").string() + " --seed " + std::to_string(seed) + " --out " +
                  inst.string() + " --witness " + at("witness.sol").string()),
              0);
    return inst.string();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, WitnessChecksClean) {
  const std::string inst = generate(3);
  std::string out;
  EXPECT_EQ(run("check " + inst + " " + at("witness.sol").string(), &out), 0);
  EXPECT_NE(out.find("total 0\n"), std::string::npos);
  EXPECT_NE(out.find("unassigned 0\n"), std::string::npos);
}

TEST_F(Cli, SolveThenCheckAgree) {
  const std::string inst = generate(4);
  std::string out;
  ASSERT_EQ(run("solve " + inst + " --seed 5 --out " + at("o").string(), &out), 0);
  EXPECT_EQ(out.rfind("feasible iterations", 0), 0u);
  for (const char* f : {"syn.sol", "syn.trace.csv", "syn.report.json"}) EXPECT_TRUE(fs::exists(at("o") / f)) << f;
  EXPECT_EQ(run("check " + inst + " " + (at("o") / "syn.sol").string(), &out), 0);
  EXPECT_NE(out.find("total 0\n"), std::string::npos);
  const std::string report = slurp(at("o") / "syn.report.json");
  EXPECT_NE(report.find("\"feasible\": true"), std::string::npos);
  EXPECT_NE(report.find("\"seed\": 5"), std::string::npos);
}

TEST_F(Cli, ReRunsAreByteIdentical) {
  const std::string inst = generate(6);
  const std::string flags = " --seed 9 --order random --rho 3 --out ";
  ASSERT_EQ(run("solve " + inst + flags + at("a").string()), 0);
  ASSERT_EQ(run("solve " + inst + flags + at("b").string()), 0);
  EXPECT_EQ(slurp(at("a") / "syn.sol"), slurp(at("b") / "syn.sol"));
  EXPECT_EQ(slurp(at("a") / "syn.trace.csv"), slurp(at("b") / "syn.trace.csv"));
  EXPECT_FALSE(slurp(at("a") / "syn.trace.csv").empty());
}

TEST_F(Cli, UnreadableInstanceFailsWithoutOutputs) {
  EXPECT_EQ(run("solve " + at("missing.txt").string() + " --out " + at("o").string()), 2);
  EXPECT_FALSE(fs::exists(at("o")));
  EXPECT_NE(slurp(at("stderr.txt")).find("error:"), std::string::npos);
  EXPECT_EQ(run("solve"), 2);
  EXPECT_EQ(run("solve x --rho 2 --max-violations 3"), 2);
  EXPECT_EQ(run("frobnicate"), 2);
}

TEST_F(Cli, CorruptedSolutionIsCaught) {
  const std::string inst_path = generate(7);
  const cbtt::Instance inst = cbtt::load_instance(inst_path);
  cbtt::Schedule s = cbtt::parse_solution(inst, slurp(at("witness.sol")));
  // Put a lecture on top of another lecture of the same curriculum.
  const auto& lectures = inst.curriculum(0).lectures;
  ASSERT_GE(lectures.size(), 2u);
  const int a = lectures[0], b = lectures[1];
  cbtt::Slot target = s.at(b);
  target.start = std::min(target.start, inst.calendar().slots_per_day - inst.lecture(a).duration);
  s.remove(a);
  s.assign(a, target);
  spit(at("bad.sol"), cbtt::serialise_solution(inst, s));
  std::string out;
  EXPECT_EQ(run("check " + inst_path + " " + at("bad.sol").string(), &out), 1);
  const auto pos = out.find("curriculum ");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_GE(std::stol(out.substr(pos + 11)), 1);
  EXPECT_EQ(out.find("total 0\n"), std::string::npos);
}

TEST_F(Cli, BenchEmitsRowsAndAggregate) {
  generate(8);
  spit(at("matrix.json"), R"({"instances": ["syn.txt"], "orders": ["ordered"], "criteria": [[25, 3, 1]],
      "increments": [{"rho_percent": 25}], "seeds": [1, 2, 3], "iteration_limit": 100000})");
  std::string out;
  ASSERT_EQ(run("bench " + at("matrix.json").string(), &out), 0);
  std::istringstream lines(out);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0].rfind("instance,order,s1,s2,s3,increment", 0), 0u);
  for (int k = 1; k <= 3; ++k) EXPECT_NE(rows[k].find(",ok"), std::string::npos) << rows[k];
  EXPECT_NE(rows[4].find(",mean,1.0000,"), std::string::npos) << rows[4];
  EXPECT_NE(rows[4].find("aggregate n=3"), std::string::npos);

  spit(at("bad.json"), R"({"instances": [], "seeds": [], "colour": 1})");
  EXPECT_EQ(run("bench " + at("bad.json").string()), 2);
}

TEST_F(Cli, ConvertRoundTrips) {
  spit(at("toy.ctt"), kToyCtt);
  ASSERT_EQ(run("convert " + at("toy.ctt").string() + " --out " + at("toy.txt").string()), 0);
  const cbtt::Instance converted = cbtt::load_instance(at("toy.txt").string());
  EXPECT_EQ(converted.lecture_count(), 6);
  ASSERT_EQ(run("convert " + at("toy.ctt").string() + " --out " + at("again.txt").string()), 0);
  EXPECT_EQ(slurp(at("toy.txt")), slurp(at("again.txt")));
  // A .ctt is adapted on the fly by solve as well.
  std::string out;
  EXPECT_LE(run("solve " + at("toy.ctt").string() + " --iteration-limit 5000 --out " + at("o").string(), &out), 1);
  EXPECT_TRUE(fs::exists(at("o") / "toy.sol"));
}

TEST_F(Cli, SubdivideIsDeterministic) {
  const std::string inst = generate(10);
  ASSERT_EQ(run("subdivide " + inst + " --classes 3 --seed 4 --out " + at("s1.txt").string()), 0);
  ASSERT_EQ(run("subdivide " + inst + " --classes 3 --seed 4 --out " + at("s2.txt").string()), 0);
  EXPECT_EQ(slurp(at("s1.txt")), slurp(at("s2.txt")));
  EXPECT_EQ(cbtt::load_instance(at("s1.txt").string()).curriculum_count(), 6);
  EXPECT_EQ(run("subdivide " + inst + " --classes 99 --out " + at("s3.txt").string()), 2);
}

TEST(SyntheticSpecJson, EveryFieldRoundTrips) {
  cbtt::SyntheticSpec spec;
  spec.name = "rt";
  spec.degrees = 3;
  spec.shared_courses = 4;
  spec.elective_pool = 4;
  spec.electives_taken = 2;
  spec.professor_load = 16;
  spec.room_candidates = 20;
  spec.room_slack = 0.25;
  const cbtt::SyntheticSpec back = cbtt::cli::synthetic_spec_from_json(cbtt::cli::synthetic_spec_json(spec));
  EXPECT_EQ(cbtt::cli::synthetic_spec_json(back), cbtt::cli::synthetic_spec_json(spec));
  EXPECT_EQ(cbtt::serialise_instance(cbtt::generate_synthetic(back, 3).instance),
            cbtt::serialise_instance(cbtt::generate_synthetic(spec, 3).instance));
  EXPECT_EQ(back.room_candidates, 20);
}
