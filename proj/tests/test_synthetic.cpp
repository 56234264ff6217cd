#include <gtest/gtest.h>

#include <set>

#include "cbtt/evaluator.hpp"
#include "cbtt/instance_io.hpp"
#include "cbtt/ordering.hpp"
#include "cbtt/subdivision.hpp"
#include "cbtt/synthetic.hpp"
#include "support.hpp"

using namespace cbtt;

namespace {

SyntheticSpec small_spec() {
  SyntheticSpec spec;
  spec.degrees = 3;
  spec.years = 2;
  return spec;
}

}  // namespace

TEST(Synthetic, WitnessIsFeasibleAcrossSeedsAndShapes) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SyntheticSpec spec = small_spec();
    spec.travel = static_cast<int>(seed % 3);
    spec.elective_pool = seed % 2 ? 3 : 0;
    spec.electives_taken = seed % 2 ? 2 : 0;
    spec.professor_load = seed % 4 ? 12 : 0;
    spec.room_candidates = 1 + static_cast<int>(seed % 3);
    spec.max_duration = 1 + static_cast<int>(seed % 3);
    const SyntheticInstance syn = generate_synthetic(spec, seed);
    ASSERT_EQ(syn.witness.added_count(), syn.instance.lecture_count());
    EXPECT_EQ(evaluate_full(syn.instance, syn.witness).grand_total(), 0) << seed;
    EXPECT_EQ(cbtt::testing::oracle_count(syn.instance, syn.witness).total(), 0) << seed;
  }
}

TEST(Synthetic, StructureFollowsTheSpec) {
  const SyntheticSpec spec = small_spec();
  const SyntheticInstance syn = generate_synthetic(spec, 3);
  const Instance& inst = syn.instance;
  // One curriculum per class and trimester.
  EXPECT_EQ(inst.curriculum_count(), spec.degrees * spec.years * spec.classes * 2);
  EXPECT_EQ(class_count(inst), spec.degrees * spec.years * spec.classes);
  EXPECT_EQ(inst.calendar().days, spec.days);
  EXPECT_EQ(inst.calendar().slots_per_day, spec.slots_per_day);
  EXPECT_EQ(inst.calendar().periods, 2);
  EXPECT_EQ(inst.layout().campus_count(), spec.campi);
  for (const Curriculum& c : inst.curricula()) {
    EXPECT_FALSE(c.degree.empty());
    EXPECT_NE(c.year, kUnknownYear);
    EXPECT_EQ(c.max_daily, spec.max_daily);
    EXPECT_EQ(c.max_consecutive, spec.max_consecutive);
  }
  for (const Lecture& l : inst.lectures()) {
    EXPECT_GE(l.duration, spec.min_duration);
    EXPECT_LE(l.duration, spec.max_duration);
  }
  // The ordered sort keeps each degree contiguous.
  std::vector<std::string> degrees;
  for (int l : ordered_sort(inst))
    if (degrees.empty() || degrees.back() != inst.curriculum(l).degree) degrees.push_back(inst.curriculum(l).degree);
  EXPECT_EQ(static_cast<int>(degrees.size()), spec.degrees);
}

TEST(Synthetic, DeterministicPerSeed) {
  const SyntheticInstance a = generate_synthetic(small_spec(), 11);
  const SyntheticInstance b = generate_synthetic(small_spec(), 11);
  EXPECT_EQ(serialise_instance(a.instance), serialise_instance(b.instance));
  EXPECT_EQ(a.witness, b.witness);
  const SyntheticInstance c = generate_synthetic(small_spec(), 12);
  EXPECT_NE(serialise_instance(a.instance), serialise_instance(c.instance));
}

TEST(Synthetic, SerialisedInstanceRoundTrips) {
  const SyntheticInstance syn = generate_synthetic(small_spec(), 5);
  EXPECT_TRUE(parse_instance(serialise_instance(syn.instance)).same_problem(syn.instance));
}

TEST(Synthetic, SpecChecks) {
  EXPECT_NO_THROW(SyntheticSpec{}.check());
  SyntheticSpec spec;
  spec.degrees = 0;
  EXPECT_THROW(spec.check(), std::invalid_argument);
  spec = {};
  spec.max_duration = 5;
  EXPECT_THROW(spec.check(), std::invalid_argument);
  spec = {};
  spec.electives_taken = 1;
  EXPECT_THROW(spec.check(), std::invalid_argument);
  spec = {};
  spec.max_consecutive = 7;
  EXPECT_THROW(spec.check(), std::invalid_argument);
  EXPECT_THROW(generate_synthetic(spec, 1), std::invalid_argument);
}
