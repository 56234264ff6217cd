#include <gtest/gtest.h>

#include <map>
#include <set>

#include "cbtt/model.hpp"
#include "cbtt/ordering.hpp"
#include "cbtt/subdivision.hpp"
#include "support.hpp"

using namespace cbtt;

namespace {

struct Parts {
  Calendar cal{5, 4, 1};
  CampusLayout layout = CampusLayout::single(2);
  std::vector<Lecture> lectures;
  std::vector<Curriculum> curricula;
  std::vector<Professor> professors;

  Parts() {
    lectures = {{"a", 2, 0, 0, 0, {}, {}}, {"b", 1, 0, 0, 0, {}, {}}};
    curricula = {{"c", "", kUnknownYear, "", 0, 3, 2, {0, 1}}};
    professors = {{"p", 3, 2, {0}}};
  }
  Instance build() const { return Instance("x", cal, layout, lectures, curricula, professors); }
};

Curriculum meta(std::string id, std::string degree, int year, std::string cls, int period, int lecture) {
  return {std::move(id), std::move(degree), year, std::move(cls), period, 4, 2, {lecture}};
}

Instance with_curricula(std::vector<Curriculum> cs, int periods = 2) {
  std::vector<Lecture> ls;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    Lecture l;
    l.id = "L" + std::to_string(i);
    l.period = kBothPeriods;
    ls.push_back(l);
  }
  return Instance("o", Calendar{5, 4, periods}, CampusLayout::single(1), ls, std::move(cs), {});
}

std::vector<std::string> ids(const Instance& inst, const std::vector<int>& order) {
  std::vector<std::string> out;
  for (int l : order) out.push_back(inst.curriculum(l).id);
  return out;
}

}  // namespace

TEST(Instance, ValidPartsBuildIndexes) {
  const Instance inst = Parts().build();
  EXPECT_EQ(inst.lecture_count(), 2);
  EXPECT_EQ(inst.curricula_of(1), std::vector<int>{0});
  EXPECT_EQ(inst.professors_of(0), std::vector<int>{0});
  EXPECT_TRUE(inst.professors_of(1).empty());
  EXPECT_EQ(inst.find_lecture("b"), 1);
  EXPECT_FALSE(inst.find_lecture("zz").has_value());
  EXPECT_EQ(inst.longest_lecture(0), 2);
}

TEST(Instance, RejectsDurationLongerThanDay) {
  Parts p;
  p.lectures[0].duration = 5;
  EXPECT_THROW(p.build(), InvariantError);
}

TEST(Instance, RejectsUnknownRoomTypeAndCampus) {
  Parts p;
  p.lectures[0].room_type = 1;
  EXPECT_THROW(p.build(), ReferenceError);
  p = Parts();
  p.lectures[1].campus = 3;
  EXPECT_THROW(p.build(), ReferenceError);
}

TEST(Instance, RejectsDanglingLectureReferences) {
  Parts p;
  p.curricula[0].lectures.push_back(7);
  EXPECT_THROW(p.build(), ReferenceError);
  p = Parts();
  p.professors[0].lectures = {-1};
  EXPECT_THROW(p.build(), ReferenceError);
  p = Parts();
  p.lectures[0].predecessors = {4};
  EXPECT_THROW(p.build(), ReferenceError);
}

TEST(Instance, RejectsLectureOutsideEveryCurriculum) {
  Parts p;
  p.curricula[0].lectures = {0};
  EXPECT_THROW(p.build(), InvariantError);
}

TEST(Instance, RejectsBadWorkloadLimits) {
  Parts p;
  p.curricula[0].max_consecutive = 4;
  EXPECT_THROW(p.build(), InvariantError);
  p = Parts();
  p.curricula[0].max_daily = 21;
  p.curricula[0].max_consecutive = 1;
  EXPECT_THROW(p.build(), InvariantError);
  p = Parts();
  p.professors[0].max_consecutive = 0;
  EXPECT_THROW(p.build(), InvariantError);
}

TEST(Instance, RejectsAsymmetricRelationsAndLayouts) {
  Parts p;
  p.lectures[0].different_day = {1};
  EXPECT_THROW(p.build(), InvariantError);
  p.lectures[1].different_day = {0};
  EXPECT_NO_THROW(p.build());

  p = Parts();
  p.layout = CampusLayout{{"a", "b"}, {"room"}, {1, 1}, {0, 1, 2, 0}};
  EXPECT_THROW(p.build(), InvariantError);
  p.layout.travel = {1, 1, 1, 0};
  EXPECT_THROW(p.build(), InvariantError);
  p.layout.travel = {0, 1, 1, 0};
  EXPECT_NO_THROW(p.build());
  p.layout.room_counts = {1, -1};
  EXPECT_THROW(p.build(), InvariantError);
}

TEST(Instance, RejectsDuplicateIdsAndPeriodMismatch) {
  Parts p;
  p.lectures[1].id = "a";
  EXPECT_THROW(p.build(), InvariantError);
  p = Parts();
  p.cal.periods = 2;
  p.lectures[1].period = 1;
  EXPECT_THROW(p.build(), InvariantError);
  p.lectures[1].period = kBothPeriods;
  EXPECT_NO_THROW(p.build());
}

TEST(OrderedSort, UnrollsDegreeYearClassPeriod) {
  const Instance inst = with_curricula({meta("y2t2", "D", 2, "c", 1, 0), meta("y1t2", "D", 1, "c", 1, 1),
                                        meta("y2t1", "D", 2, "c", 0, 2), meta("y1t1", "D", 1, "c", 0, 3)});
  EXPECT_EQ(ids(inst, ordered_sort(inst)), (std::vector<std::string>{"y1t1", "y1t2", "y2t1", "y2t2"}));
}

TEST(OrderedSort, DegreesAreContiguous) {
  const Instance inst = with_curricula({meta("b1", "B", 1, "x", 0, 0), meta("a2", "A", 2, "x", 0, 1),
                                        meta("b0", "B", 1, "x", 1, 2), meta("a1", "A", 1, "x", 1, 3)});
  EXPECT_EQ(ids(inst, ordered_sort(inst)), (std::vector<std::string>{"a1", "a2", "b1", "b0"}));
}

TEST(OrderedSort, MissingMetadataSortsLastByIdAndIgnoresStorageOrder) {
  std::vector<Curriculum> cs = {meta("z", "", kUnknownYear, "", 0, 0), meta("m", "A", kUnknownYear, "", 0, 1),
                                meta("k", "A", 1, "", 0, 2),           meta("b", "", kUnknownYear, "", 0, 3),
                                meta("q", "A", 1, "c1", 0, 4),         meta("a", "A", 1, "c1", 0, 5)};
  const Instance inst = with_curricula(cs);
  const auto expected = ids(inst, ordered_sort(inst));
  EXPECT_EQ(expected, (std::vector<std::string>{"a", "q", "k", "m", "b", "z"}));

  Rng rng(4);
  for (int n = 0; n < 20; ++n) {
    auto shuffled = cs;
    rng.shuffle(shuffled);
    // Lecture i is the only lecture of curriculum i; keep that pairing.
    for (std::size_t i = 0; i < shuffled.size(); ++i) shuffled[i].lectures = {static_cast<int>(i)};
    const Instance other = with_curricula(shuffled);
    EXPECT_EQ(ids(other, ordered_sort(other)), expected);
  }
}

TEST(RandomSort, IsAPermutationAndDeterministic) {
  Rng gen(5);
  const Instance inst = cbtt::testing::random_tiny_instance(gen);
  auto order = random_sort(inst, 9);
  EXPECT_EQ(order, random_sort(inst, 9));
  std::sort(order.begin(), order.end());
  for (int l = 0; l < inst.curriculum_count(); ++l) EXPECT_EQ(order[l], l);

  const Instance single = with_curricula({meta("only", "D", 1, "c", 0, 0)});
  EXPECT_EQ(random_sort(single, 3), std::vector<int>{0});
}

TEST(RandomSort, PermutationsOfThreeAreUniform) {
  const Instance inst = with_curricula({meta("a", "D", 1, "c", 0, 0), meta("b", "D", 1, "c", 0, 1),
                                        meta("c", "D", 1, "c", 0, 2)});
  std::map<std::vector<int>, int> counts;
  const int draws = 10000;
  for (int seed = 0; seed < draws; ++seed) ++counts[random_sort(inst, seed)];
  ASSERT_EQ(counts.size(), 6u);
  const double expected = draws / 6.0;
  const double sigma = std::sqrt(draws * (1.0 / 6) * (5.0 / 6));
  for (const auto& [perm, n] : counts) EXPECT_LT(std::abs(n - expected), 5 * sigma);
}

TEST(Subdivision, FullSampleKeepsProblem) {
  std::vector<Curriculum> cs;
  for (int k = 0; k < 6; ++k) cs.push_back(meta("c" + std::to_string(k), "D", 1 + k / 2, "k" + std::to_string(k), 0, k));
  const Instance inst = with_curricula(cs, 1);
  EXPECT_EQ(class_count(inst), 6);
  const Instance sub = generate_subdivision(inst, 6, {}, 3);
  EXPECT_TRUE(sub.same_problem(inst));
}

TEST(Subdivision, SamplesWholeClassesDeterministically) {
  // Two curricula (trimesters) per class; lectures shared inside a class.
  std::vector<Lecture> ls;
  std::vector<Curriculum> cs;
  std::vector<Professor> ps;
  for (int k = 0; k < 10; ++k) {
    Lecture shared;
    shared.id = "S" + std::to_string(k);
    shared.period = kBothPeriods;
    Lecture own;
    own.id = "O" + std::to_string(k);
    own.period = 1;
    const int s = static_cast<int>(ls.size());
    ls.push_back(shared);
    ls.push_back(own);
    cs.push_back({"K" + std::to_string(k) + "T1", "D", 1, "K" + std::to_string(k), 0, 4, 2, {s}});
    cs.push_back({"K" + std::to_string(k) + "T2", "D", 1, "K" + std::to_string(k), 1, 4, 2, {s, s + 1}});
    ps.push_back({"P" + std::to_string(k), 4, 2, {s, s + 1}});
  }
  const Instance inst("big", Calendar{5, 4, 2}, CampusLayout::single(10), ls, cs, ps);
  ASSERT_EQ(class_count(inst), 10);
  const Instance a = generate_subdivision(inst, 4, {{"main", 3}}, 21);
  const Instance b = generate_subdivision(inst, 4, {{"main", 3}}, 21);
  EXPECT_TRUE(a.same_problem(b));
  EXPECT_EQ(a.curriculum_count(), 8);
  EXPECT_EQ(a.lecture_count(), 8);
  EXPECT_EQ(a.professor_count(), 4);
  EXPECT_EQ(a.layout().rooms(0, 0), 3);
  EXPECT_EQ(class_count(a), 4);

  std::set<std::string> kept_lectures;
  for (const Lecture& l : a.lectures()) kept_lectures.insert(l.id);
  for (const Curriculum& c : a.curricula())
    for (int i : c.lectures) EXPECT_TRUE(kept_lectures.contains(a.lecture(i).id));

  bool differs = false;
  for (std::uint64_t seed = 22; seed < 30 && !differs; ++seed)
    differs = !generate_subdivision(inst, 4, {}, seed).same_problem(a);
  EXPECT_TRUE(differs);
  EXPECT_THROW(generate_subdivision(inst, 11, {}, 1), InvariantError);
  EXPECT_THROW(generate_subdivision(inst, 2, {{"nowhere", 3}}, 1), ReferenceError);
}

TEST(Subdivision, ScaleRoomsKeepsTotalAndProportions) {
  EXPECT_EQ(scale_rooms({10, 30}, 8), (std::vector<int>{2, 6}));
  EXPECT_EQ(scale_rooms({1, 1, 1}, 4), (std::vector<int>{2, 1, 1}));
  EXPECT_EQ(scale_rooms({0, 0}, 3), (std::vector<int>{2, 1}));
  const auto v = scale_rooms({7, 5, 3}, 29);
  EXPECT_EQ(v[0] + v[1] + v[2], 29);
}
