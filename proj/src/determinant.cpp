#include "crescent/determinant.hpp"

#include <utility>

#include "crescent/errors.hpp"

namespace crescent {

Rational determinant(const RationalMatrix& input) {
  const int n = input.size();
  if (n == 0) return Rational(1);
  RationalMatrix a = input;
  Rational sign(1);
  Rational previous(1);
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r) {
        if (a(r, k) != 0) {
          swap_row = r;
          break;
        }
      }
      if (swap_row < 0) return Rational(0);
      for (int c = 0; c < n; ++c) std::swap(a(k, c), a(swap_row, c));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / previous;
      }
    }
    previous = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

double determinant(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("determinant of a non-square matrix");
  if (m.rows() == 0) return 1.0;
  return m.fullPivLu().determinant();
}

}  // namespace crescent
