#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "tanfp/errors.hpp"
#include "tanfp/mapping_zoo.hpp"
#include "tanfp/scheme.hpp"

using namespace tanfp;

namespace {

IterationConfig example_run() {
  IterationConfig cfg;
  cfg.t_family = {make_s(0.5), make_s(0.3)};
  cfg.i_family = {make_identity(), make_identity()};
  cfg.alpha = make_schedule(ScheduleKind::Constant, 2, {});
  cfg.beta = make_schedule(ScheduleKind::Constant, 2, {});
  cfg.x0 = {0.7, {1.0}};
  cfg.fixed_set = derive_common_fixed_set(cfg.t_family, cfg.i_family, cfg.common_domain());
  return cfg;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::ValidationError;
}

}  // namespace

TEST(Schedule, ConstantIsUniform) {
  const auto s = make_schedule(ScheduleKind::Constant, 2, {});
  EXPECT_EQ(s.width(), 3);
  for (int n : {1, 50}) {
    for (int j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(s.value(j, n), 1.0 / 3.0);
  }
  EXPECT_EQ(make_schedule(ScheduleKind::Constant, 2, {}, {}, true).width(), 4);
}

TEST(Schedule, CustomRowsRepeatLastRow) {
  const auto s = make_schedule(ScheduleKind::Custom, 1, {}, {{0.5, 0.5}, {0.25, 0.75}});
  EXPECT_EQ(s.value(1, 1), 0.5);
  EXPECT_EQ(s.value(1, 2), 0.75);
  EXPECT_EQ(s.value(1, 99), 0.75);
  EXPECT_EQ(s.row(2), (std::vector<double>{0.25, 0.75}));
}

TEST(Schedule, SimplexViolationNamesRow) {
  try {
    make_schedule(ScheduleKind::Custom, 2, {}, {{0.3, 0.3, 0.4}, {0.3, 0.3, 0.3}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WeightSumViolation);
    EXPECT_NE(std::string(e.what()).find("row 1"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("simplex"), std::string::npos);
  }
}

TEST(Schedule, InfeasibleBounds) {
  EXPECT_EQ(kind_of([] { make_schedule(ScheduleKind::Constant, 2, {0.5, 0.9}); }), ErrorKind::InfeasibleSchedule);
  EXPECT_EQ(kind_of([] { make_schedule(ScheduleKind::Constant, 1, {0.6, 0.4}); }), ErrorKind::InfeasibleSchedule);
  EXPECT_EQ(kind_of([] { make_schedule(ScheduleKind::Custom, 1, {0.1, 0.9}, {{0.05, 0.95}}); }),
            ErrorKind::InfeasibleSchedule);
  EXPECT_EQ(kind_of([] { make_schedule(ScheduleKind::Custom, 2, {}, {{0.5, 0.5}}); }), ErrorKind::LengthMismatch);
}

TEST(Step, MatchesHandComputation) {
  const auto cfg = example_run();
  const auto r = step(cfg.x0, 1, cfg);
  EXPECT_EQ(r.y, cfg.x0);
  // x_2 = (0.7, (1/3, 1/3 (0.5 + 0.3), 0, ...)) since T_a(1) = (0, a).
  EXPECT_DOUBLE_EQ(r.next.scalar, 0.7);
  EXPECT_NEAR(r.next.vec[0], 1.0 / 3.0, 1e-16);
  EXPECT_NEAR(r.next.vec[1], (0.5 + 0.3) / 3.0, 1e-16);
}

TEST(Step, DomainViolationIsReported) {
  auto cfg = example_run();
  EXPECT_EQ(kind_of([&] { step(ProductPoint{0.5, {1.5}}, 1, cfg); }), ErrorKind::DomainViolation);
}

TEST(Run, ConvergesOnExampleFamily) {
  const auto trace = run(example_run());
  EXPECT_EQ(trace.terminated_by, Termination::Tolerance);
  EXPECT_LE(trace.records.size(), 200u);
  EXPECT_EQ(trace.records.front().n, 1);
  EXPECT_EQ(trace.records.front().x, (ProductPoint{0.7, {1.0}}));
  EXPECT_LT(l1_norm(trace.final_x.vec), 1e-6);
  EXPECT_EQ(trace.final_x.scalar, 0.7);
  ASSERT_TRUE(trace.min_dist_to_fixset().has_value());
  EXPECT_LT(*trace.min_dist_to_fixset(), 1e-6);
  for (std::size_t k = 0; k + 1 < trace.records.size(); ++k)
    EXPECT_EQ(trace.records[k + 1].n, trace.records[k].n + 1);
}

TEST(Run, MaxStepsTermination) {
  auto cfg = example_run();
  cfg.max_steps = 3;
  const auto trace = run(cfg);
  EXPECT_EQ(trace.terminated_by, Termination::MaxSteps);
  EXPECT_EQ(trace.records.size(), 3u);
}

TEST(Run, ValidationFailures) {
  auto cfg = example_run();
  cfg.x0 = {2.0, {}};
  EXPECT_THROW(run(cfg), Error);
  cfg = example_run();
  cfg.i_family.pop_back();
  EXPECT_EQ(kind_of([&] { run(cfg); }), ErrorKind::LengthMismatch);
  cfg = example_run();
  cfg.alpha = make_schedule(ScheduleKind::Constant, 3, {});
  EXPECT_THROW(run(cfg), Error);
}

TEST(Run, DeterministicAcrossCalls) {
  const auto a = run(example_run());
  const auto b = run(example_run());
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t k = 0; k < a.records.size(); ++k) EXPECT_EQ(a.records[k].x, b.records[k].x);
}

TEST(Run, WithErrorsAtFixedPointMatchesBaseRunDirection) {
  auto cfg = example_run();
  cfg.alpha = make_schedule(ScheduleKind::Constant, 2, {}, {}, true);
  cfg.beta = make_schedule(ScheduleKind::Constant, 2, {}, {}, true);
  const ProductPoint p{0.7, {}};
  cfg.error_terms = [p](int) { return ErrorTerms{p, p}; };
  const auto trace = run(cfg);
  EXPECT_EQ(trace.terminated_by, Termination::Tolerance);
  EXPECT_LT(distance(trace.final_x, p), 1e-6);
}

TEST(Run, SelfPairedFamilies) {
  auto cfg = example_run();
  const auto fam = self_paired_families(cfg.t_family);
  cfg.t_family = fam.t_family;
  cfg.i_family = fam.i_family;
  EXPECT_EQ(cfg.t_family[0].profile.phi(2.0), 2.0);
  EXPECT_EQ(cfg.i_family[0].profile.phi(4.0), 6.0);
  const auto r = step(cfg.x0, 1, cfg);
  // y_1 = (1/3) x + (1/3) S_0.5 x + (1/3) S_0.3 x.
  EXPECT_NEAR(r.y.vec[0], 1.0 / 3.0, 1e-16);
  EXPECT_NEAR(r.y.vec[1], 0.8 / 3.0, 1e-16);
  const auto trace = run(cfg);
  EXPECT_EQ(trace.terminated_by, Termination::Tolerance);
}

TEST(FixedSet, DerivedForSFamilyAndSF) {
  const auto cfg = example_run();
  ASSERT_TRUE(cfg.fixed_set.has_value());
  EXPECT_EQ(cfg.fixed_set->kind, FixedSetDescriptor::Kind::ScalarLine);
  EXPECT_DOUBLE_EQ(distance_to_fixset({0.7, {0.25, -0.25}}, *cfg.fixed_set), 0.5);
  EXPECT_DOUBLE_EQ(distance_to_fixset({1.5, {}}, *cfg.fixed_set), 0.5);

  const std::vector<Mapping> t{make_s_f(0.5, 0.5)};
  const std::vector<Mapping> i{make_identity()};
  const auto f = derive_common_fixed_set(t, i, t[0].domain);
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(f->kind, FixedSetDescriptor::Kind::SinglePoint);
  EXPECT_EQ(f->point, (ProductPoint{0.0, {}}));
}

TEST(FixedSet, ResolvedReference) {
  auto cfg = example_run();
  const auto p = cfg.resolved_reference();
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(*p, (ProductPoint{0.7, {}}));
  cfg.reference_point = ProductPoint{0.1, {}};
  EXPECT_EQ(*cfg.resolved_reference(), (ProductPoint{0.1, {}}));
}
