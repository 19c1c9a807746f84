#pragma once

#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace crescent {

using Rational = boost::multiprecision::cpp_rational;

/// Dense square matrix of exact rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {}

  int size() const { return n_; }
  Rational& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * n_ + j)]; }
  const Rational& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * n_ + j)]; }

 private:
  int n_ = 0;
  std::vector<Rational> data_;
};

/// Fraction-free (Bareiss) elimination; exact for rational input.
Rational determinant(const RationalMatrix& m);

/// Gaussian elimination with full pivoting.
double determinant(const Eigen::MatrixXd& m);

}  // namespace crescent
