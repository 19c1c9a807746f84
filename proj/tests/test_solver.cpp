#include <doctest.h>

#include <cmath>

#include "crescent/errors.hpp"
#include "crescent/solver.hpp"
#include "testkit.hpp"

using namespace crescent;

namespace {

const IsoClass& class_of(const ClassificationReport& r, const LabelMatrix& m) {
  const auto key = distance_set(m);
  for (const auto& c : r.surviving_classes)
    if (c.key == key) return c;
  throw InvalidArgument("class not surviving");
}

double max_rel_gap(const DistanceAssignment& a, const std::vector<double>& expected) {
  double gap = 0.0;
  for (std::size_t k = 0; k < expected.size(); ++k)
    gap = std::max(gap, std::abs(a[static_cast<int>(k) + 2] - expected[k]) / expected[k]);
  return gap;
}

double max_distance_error(const LabelBlock& m, const DistanceAssignment& a, const Coordinates& p) {
  double err = 0.0;
  for (int i = 0; i < m.size(); ++i)
    for (int j = i + 1; j < m.size(); ++j) err = std::max(err, std::abs((p.row(i) - p.row(j)).norm() - a[m(i, j)]));
  return err;
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("config validation") {
  SolverConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.starts = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.residual_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.dist_min = 3.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}

TEST_CASE("problem shape") {
  const SolverProblem p4(LabelMatrix::from_upper(4, std::vector<Label>{1, 2, 3, 3, 2, 3}));
  CHECK(p4.variables() == 7);
  CHECK(p4.equations() == 6);
  const SolverProblem p5(testkit::table_matrix(7));
  CHECK(p5.variables() == 10);
  CHECK(p5.equations() == 10);
}

TEST_CASE("Jacobian matches central differences (property, 100+ cases)") {
  const auto r = testkit::jacobian_finite_difference(150);
  INFO(r.name << ": worst " << r.worst << ", first failure " << r.first_failure);
  CHECK(r.cases >= 100);
  CHECK(r.ok());
}

TEST_CASE("pack inverts coordinates and assignment") {
  const SolverProblem p(testkit::table_matrix(7));
  Eigen::VectorXd x(10);
  x << 0.9, 0.2, 0.8, -0.4, 1.1, 0.7, -0.3, 0.6, 0.8, 1.4;
  const auto back = p.pack(p.coordinates(x), p.assignment(x));
  CHECK((back - x).norm() < 1e-15);
}

TEST_CASE("gauge fixing") {
  Coordinates q(4, 2);
  q << 1, 1, 1, 3, 3, 2, -1, 0;
  const auto g = gauge_fix(q);
  CHECK(g(0, 0) == 0.0);
  CHECK(g(0, 1) == 0.0);
  CHECK(g(1, 1) == 0.0);
  CHECK(g(1, 0) == doctest::Approx(2.0));
  CHECK(g(2, 1) >= 0.0);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      CHECK((g.row(i) - g.row(j)).norm() == doctest::Approx((q.row(i) - q.row(j)).norm()).epsilon(1e-14));
  CHECK(std::signbit(gauge_fix(g)(1, 1)) == false);
}

TEST_CASE("local solve from an exact start stays put") {
  const auto m = testkit::table_matrix(27);
  const double s7 = std::sqrt(7.0);
  const std::vector<double> d{std::sqrt(2.0), std::sqrt(2 * (3 - s7)), std::sqrt(3 - s7)};
  const DistanceAssignment a(5, d);
  const SolverProblem p(m);
  const auto x0 = p.pack(embed_from_distances(m, a), a);
  const auto res = levenberg_marquardt(p, x0, 50);
  CHECK(res.finite);
  CHECK(res.cost < 1e-20);
  CHECK((res.x - x0).norm() < 1e-8);
}

TEST_CASE("realizing the class of table entry (7)") {
  const auto report = classify_pipeline(5);
  const auto& c = class_of(report, testkit::table_matrix(7));
  const auto real = solve_realization(c, SolverConfig{});
  REQUIRE(real.has_value());
  CHECK(real->residual <= 1e-10);
  CHECK(verify_realizable(real->matrix, real->assignment).ok);
  const std::vector<double> expected{1 / std::sqrt(3.0), std::sqrt(2.0 / 3), std::sqrt(1 + std::sqrt(2.0 / 3))};
  const double gap = max_rel_gap(real->assignment, expected);
  if (gap > 5e-4) {
    MESSAGE("solver found another witness; relative gap to the printed values " << gap);
    CHECK(verify_realizable(testkit::table_matrix(7), DistanceAssignment(5, expected)).ok);
  }
}

TEST_CASE("refinement of table entry (5) near its printed values") {
  const auto m = testkit::table_matrix(5);
  const auto real = refine_assignment(m, DistanceAssignment(5, std::vector<double>{1.2091, 0.5028, 0.8135}), {});
  REQUIRE(real.has_value());
  CHECK(max_rel_gap(real->assignment, {1.2091, 0.5028, 0.8135}) < 5e-4);
}

TEST_CASE("classical embedding") {
  const LabelBlock square(4, {1, 2, 1, 1, 2, 1});
  const DistanceAssignment sa(3, std::vector<double>{std::sqrt(2.0)});
  const auto sq = embed_from_distances(square, sa);
  CHECK(max_distance_error(square, sa, sq) < 1e-12);
  CHECK(sq(0, 0) == 0.0);
  CHECK(sq(1, 1) == 0.0);

  const LabelBlock tri(3, {1, 1, 1});
  const DistanceAssignment ta(2, std::vector<double>{});
  CHECK(max_distance_error(tri, ta, embed_from_distances(tri, ta)) < 1e-12);

  const auto m9 = testkit::table_matrix(9);
  const DistanceAssignment a9(5, std::vector<double>{std::sqrt(2 - std::sqrt(3.0)), std::sqrt((2 - std::sqrt(3.0)) / 2),
                                                     1 / std::sqrt(2.0)});
  CHECK(max_distance_error(m9, a9, embed_from_distances(m9, a9)) < 1e-9);

  const LabelBlock tetra(4, {1, 1, 1, 1, 1, 1});
  CHECK_THROWS_AS(embed_from_distances(tetra, ta), RankExceeded);
}

TEST_CASE("census for n = 3 and n = 4") {
  const auto c3 = realizable_census(3, SolverConfig{});
  CHECK(c3.classes.size() == 1);
  CHECK(c3.realizable_count() == 1);
  const auto c4 = realizable_census(4, SolverConfig{});
  CHECK(c4.classes.size() == 3);
  CHECK(c4.realizable_count() == 3);
  for (const auto& v : c4.classes) {
    REQUIRE(v.realizable());
    CHECK(v.realization->family);
    CHECK(v.realization->residual <= 1e-10);
  }
  CHECK(c4.find(2) != nullptr);
  CHECK(c4.find(99) == nullptr);
}

TEST_CASE("census does not depend on the thread count") {
  SolverConfig cfg;
  cfg.starts = 60;
  const auto one = realizable_census(5, cfg, 1);
  const auto two = realizable_census(5, cfg, 2);
  REQUIRE(one.classes.size() == two.classes.size());
  for (std::size_t i = 0; i < one.classes.size(); ++i) {
    const auto& a = one.classes[i];
    const auto& b = two.classes[i];
    CHECK(a.class_id == b.class_id);
    CHECK(a.starts_used == b.starts_used);
    REQUIRE(a.realizable() == b.realizable());
    if (a.realizable()) {
      CHECK(a.realization->coordinates == b.realization->coordinates);
      CHECK_FALSE(a.realization->family);
    }
  }
}

TEST_CASE("realize, embed, verify round trip (property, 100+ cases)") {
  const auto r = testkit::solver_round_trip(120);
  INFO(r.name << ": worst " << r.worst << ", first failure " << r.first_failure);
  CHECK(r.cases >= 100);
  CHECK(r.ok());
}

}  // TEST_SUITE
