#pragma once

#include <stdexcept>
#include <string>

namespace crescent {

/// Raised for malformed inputs: bad point counts, out-of-range subsets,
/// missing labels, asymmetric matrices.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A count does not fit in 64 bits.
class Overflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// The requested point count is above the configured enumeration budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gram matrix of a supposedly planar assignment has a significant third
/// eigenvalue.
class RankExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace crescent
