#include <doctest.h>

#include <cmath>
#include <random>

#include "crescent/errors.hpp"
#include "crescent/geometry.hpp"
#include "testkit.hpp"

using namespace crescent;

namespace {

std::vector<std::vector<double>> to_rows(const Eigen::MatrixXd& m) {
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) rows[static_cast<std::size_t>(i)].push_back(m(i, j));
  return rows;
}

SquaredDistanceMatrix sqm(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd e(n, n);
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (const double v : r) e(i, j++) = v;
    ++i;
  }
  return SquaredDistanceMatrix(e);
}

const SquaredDistanceMatrix kUnitSquare = sqm({{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}});

// unit square: sides label 1, diagonals label 2
LabelBlock square_block() { return LabelBlock(4, {1, 2, 1, 1, 2, 1}); }

DistanceAssignment assignment(int n, std::vector<double> rest) { return DistanceAssignment(n, rest); }

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("subsets") {
  CHECK(subsets_of_size(4, 2).size() == 6);
  CHECK(subsets_of_size(5, 4).size() == 5);
  CHECK(subsets_of_size(5, 3).front() == Subset{0, 1, 2});
  CHECK(subsets_of_size(5, 3).back() == Subset{2, 3, 4});
  CHECK(subset_key({0, 1, 3, 4}) == "1,2,4,5");
}

TEST_CASE("distance assignment validation") {
  CHECK_THROWS_AS(assignment(4, {0.5}), InvalidArgument);
  CHECK_THROWS_AS(assignment(4, {0.5, -1.0}), InvalidArgument);
  CHECK_THROWS_AS(DistanceAssignment::from_map(3, {{1, 2.0}, {2, 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(DistanceAssignment::from_map(3, {{1, 1.0}}), InvalidArgument);
  const auto a = DistanceAssignment::from_map(3, {{1, 1.0}, {2, 0.8}});
  CHECK(a[1] == 1.0);
  CHECK(a[2] == 0.8);
  CHECK_THROWS_AS(a[3], InvalidArgument);
}

TEST_CASE("squared distances") {
  const auto tri = LabelMatrix::from_upper(3, std::vector<Label>{1, 2, 2});
  CHECK(squared_distances(tri, assignment(3, {2.0})).entries() == sqm({{0, 1, 4}, {1, 0, 4}, {4, 4, 0}}).entries());
  CHECK(squared_distances(square_block(), assignment(3, {std::sqrt(2.0)})).entries().isApprox(kUnitSquare.entries()));

  const auto m27 = testkit::table_matrix(27);
  const double s7 = std::sqrt(7.0);
  const auto a27 = assignment(5, {std::sqrt(2.0), std::sqrt(2 * (3 - s7)), std::sqrt(3 - s7)});
  const auto sq = squared_distances(m27, a27);
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) {
      const double expected[] = {0.0, 1.0, 2.0, 2 * (3 - s7), 3 - s7};
      CHECK(sq(i, j) == doctest::Approx(expected[m27(i, j)]).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(squared_distances(m27, assignment(4, {0.5, 0.7})), InvalidArgument);
  CHECK_THROWS_AS(SquaredDistanceMatrix(Eigen::MatrixXd::Ones(3, 3)), InvalidArgument);
}

TEST_CASE("Cayley-Menger determinant examples") {
  CHECK(cm_det(sqm({{0, 1, 4}, {1, 0, 1}, {4, 1, 0}})) == doctest::Approx(0.0));
  CHECK(cm_det(sqm({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}})) == doctest::Approx(-3.0));
  const double area = std::sqrt(3.0) / 4;
  CHECK(-16 * area * area == doctest::Approx(-3.0));
  CHECK(std::abs(cm_det(kUnitSquare)) < 1e-12);
}

TEST_CASE("EDM determinant examples") {
  CHECK(std::abs(edm_det(kUnitSquare)) < 1e-12);
  Coordinates p(4, 2);
  p << 0, 0, 1, 0, 0, 1, 2, 2;
  CHECK(std::abs(edm_det(SquaredDistanceMatrix::from_coordinates(p))) > 1.0);
  const SquaredDistanceMatrix scaled(Eigen::MatrixXd(3.0 * SquaredDistanceMatrix::from_coordinates(p).entries()));
  CHECK(edm_det(scaled) == doctest::Approx(81.0 * edm_det(SquaredDistanceMatrix::from_coordinates(p))));
}

TEST_CASE("floating and exact determinants match cofactor expansion") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> pick(-9, 9);
  for (int c = 0; c < 100; ++c) {
    const int k = 2 + c % 5;
    Eigen::MatrixXd m(k, k);
    RationalMatrix r(k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        const int v = pick(rng);
        m(i, j) = v;
        r(i, j) = v;
      }
    }
    const double oracle = testkit::cofactor_det(to_rows(m));
    CHECK(determinant(m) == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(static_cast<double>(determinant(r)) == oracle);  // integers: exact
  }
  RationalMatrix singular(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) singular(i, j) = Rational(i + 1) * Rational(j + 1, 7);
  CHECK(determinant(singular) == 0);
}

TEST_CASE("determinant properties (100+ randomized cases each)") {
  for (const auto& r : {testkit::cm_edm_permutation_invariance(200), testkit::cm_edm_homogeneity(200),
                        testkit::cm_heron_agreement(200), testkit::rational_float_agreement(200),
                        testkit::planar_rational_cm_zero(100)}) {
    INFO(r.name << ": worst " << r.worst << ", first failure " << r.first_failure);
    CHECK(r.cases >= 100);
    CHECK(r.ok());
  }
}

TEST_CASE("margins and verification for table entry (7)") {
  const auto m7 = testkit::table_matrix(7);
  const auto a7 = assignment(5, {1 / std::sqrt(3.0), std::sqrt(2.0 / 3), std::sqrt(1 + std::sqrt(2.0 / 3))});
  const auto margins = general_position_margins(m7, a7);
  CHECK(margins.planarity.size() == 5);
  CHECK(margins.collinearity.size() == 10);
  CHECK(margins.concyclicity.size() == 5);
  CHECK(margins.max_planarity() < 1e-9);
  CHECK(margins.min_collinearity() > 1e-6);
  CHECK(margins.min_concyclicity() > 1e-6);
  CHECK(verify_realizable(m7, a7).ok);

  const auto bent = assignment(5, {1 / std::sqrt(3.0), std::sqrt(2.0 / 3), std::sqrt(1 + std::sqrt(2.0 / 3)) + 0.1});
  const auto v = verify_realizable(m7, bent);
  CHECK_FALSE(v.ok);
  CHECK(v.reason == FailureReason::kPlanarity);
  REQUIRE(v.failing_subset.has_value());
  CHECK(v.failing_subset->size() == 4);
}

TEST_CASE("table entry (27) verifies") {
  const double s7 = std::sqrt(7.0);
  CHECK(verify_realizable(testkit::table_matrix(27),
                          assignment(5, {std::sqrt(2.0), std::sqrt(2 * (3 - s7)), std::sqrt(3 - s7)}))
            .ok);
}

TEST_CASE("degenerate assignments fail for the right reason") {
  // isosceles triangle flattened: 1 = 1/2 + 1/2
  const auto tri = LabelMatrix::from_upper(3, std::vector<Label>{1, 2, 2});
  const auto flat = verify_realizable(tri, assignment(3, {0.5}));
  CHECK(flat.reason == FailureReason::kCollinearity);
  CHECK(flat.value < 1e-12);
  CHECK(verify_realizable(tri, assignment(3, {0.8})).ok);

  // four collinear points 0, 1, 2, 3 on a line: three collinear points give a zero margin
  const auto line = LabelBlock(4, {1, 2, 3, 1, 2, 1});
  const auto margins = general_position_margins(line, assignment(4, {2.0, 3.0}));
  CHECK(margins.min_collinearity() < 1e-12);

  const auto square = general_position_margins(square_block(), assignment(3, {std::sqrt(2.0)}));
  CHECK(square.min_concyclicity() < 1e-12);
  CHECK(verify_realizable(square_block(), assignment(3, {std::sqrt(2.0)})).reason == FailureReason::kConcyclicity);
}

TEST_CASE("coincident distance values are rejected") {
  // equilateral triangle: d1 = d2
  const auto tri = LabelMatrix::from_upper(3, std::vector<Label>{1, 2, 2});
  const auto v = verify_realizable(tri, assignment(3, {1.0}));
  CHECK_FALSE(v.ok);
  CHECK(v.reason == FailureReason::kCoincidentDistances);
  REQUIRE(v.coincident_labels.has_value());
  CHECK(v.coincident_labels->first == 1);
  CHECK(v.coincident_labels->second == 2);
  CHECK(v.describe().find("coincident") != std::string::npos);
}

TEST_CASE("assignment from coordinates") {
  Coordinates p(3, 2);
  p << 0, 0, 2, 0, 1, 3;
  const auto tri = LabelMatrix::from_upper(3, std::vector<Label>{1, 2, 2});
  const auto a = assignment_from_coordinates(tri, p);
  CHECK(a[1] == 1.0);
  CHECK(a[2] == doctest::Approx(std::sqrt(10.0) / 2));
}

}  // TEST_SUITE
