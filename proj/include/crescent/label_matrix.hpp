#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace crescent {

/// Distance label. Label k names the distance that occurs exactly k times;
/// 0 is reserved for the diagonal.
using Label = std::uint8_t;

/// Number of unordered pairs on n points.
constexpr int edge_count(int n) { return n * (n - 1) / 2; }

/// Position of pair {i, j} (i != j, zero-based) in the row-major upper
/// triangle.
constexpr int upper_index(int n, int i, int j) {
  if (i > j) {
    const int t = i;
    i = j;
    j = t;
  }
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

/// Multiplicity table {1:1, 2:2, ..., n-1:n-1} of a crescent configuration.
class EdgeMultiset {
 public:
  explicit EdgeMultiset(int n);

  int points() const { return n_; }
  int count(int label) const;
  int total() const { return edge_count(n_); }
  int max_label() const { return n_ - 1; }

  /// Labels in ascending order with repetition: 1, 2, 2, 3, 3, 3, ...
  std::vector<Label> sorted_labels() const;

 private:
  int n_;
};

EdgeMultiset edge_multiset(int n);

/// Multinomial (n(n-1)/2)! / (1! 2! ... (n-1)!). Throws Overflow when the
/// value does not fit in 64 bits.
std::uint64_t count_matrices(int n);

/// Symmetric label block with zero diagonal and no multiplicity constraint.
/// Principal submatrices of a LabelMatrix are LabelBlocks.
class LabelBlock {
 public:
  LabelBlock() = default;
  LabelBlock(int n, std::vector<Label> upper);

  int size() const { return n_; }
  int operator()(int i, int j) const {
    return i == j ? 0 : upper_[static_cast<std::size_t>(upper_index(n_, i, j))];
  }
  std::span<const Label> upper() const { return upper_; }

  /// Full n x n rows, diagonal included.
  std::vector<std::vector<int>> rows() const;

  friend bool operator==(const LabelBlock&, const LabelBlock&) = default;
  friend auto operator<=>(const LabelBlock&, const LabelBlock&) = default;

 protected:
  int n_ = 0;
  std::vector<Label> upper_;
};

/// A candidate crescent configuration on n points: label k sits on exactly
/// k unordered pairs. Ordering is lexicographic on the flattened upper
/// triangle.
class LabelMatrix : public LabelBlock {
 public:
  LabelMatrix() = default;

  /// Validates label range and multiplicities.
  static LabelMatrix from_upper(int n, std::span<const Label> upper);
  /// Validates symmetry, zero diagonal and multiplicities.
  static LabelMatrix from_rows(const std::vector<std::vector<int>>& rows);
  /// Parses the canonical text form "n u_12 u_13 ... u_(n-1)n\n".
  static LabelMatrix parse(std::string_view text);

  /// Simultaneous row/column permutation: result(i, j) = this(perm[i], perm[j]).
  LabelMatrix permuted(std::span<const int> perm) const;

  /// Canonical text form: n, then the upper triangle row-major, space
  /// separated, newline terminated.
  std::string canonical_text() const;

 private:
  LabelMatrix(int n, std::vector<Label> upper) : LabelBlock(n, std::move(upper)) {}
  friend class MatrixEnumeration;
};

/// Rows and columns restricted to `subset` (zero-based, sorted, distinct).
LabelBlock principal_submatrix(const LabelBlock& m, std::span<const int> subset);

/// Lexicographic stream of every distinct threading of the edge multiset
/// through the upper triangle. Supports sub-ranges by rank so workers can
/// split the stream.
class MatrixEnumeration {
 public:
  explicit MatrixEnumeration(int n);
  /// Ranks [first, first + count) of the full stream.
  MatrixEnumeration(int n, std::uint64_t first, std::uint64_t count);

  int points() const { return n_; }
  std::uint64_t first() const { return first_; }
  std::uint64_t size() const { return count_; }

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = LabelMatrix;
    using difference_type = std::ptrdiff_t;
    using pointer = const LabelMatrix*;
    using reference = const LabelMatrix&;

    iterator() = default;
    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.remaining_ == b.remaining_;
    }

   private:
    friend class MatrixEnumeration;
    iterator(LabelMatrix start, std::uint64_t remaining)
        : current_(std::move(start)), remaining_(remaining) {}
    LabelMatrix current_;
    std::uint64_t remaining_ = 0;
  };

  iterator begin() const;
  iterator end() const { return iterator{}; }

  /// Split the full stream into `parts` contiguous rank ranges.
  static std::vector<MatrixEnumeration> partition(int n, int parts);

 private:
  int n_;
  std::uint64_t first_;
  std::uint64_t count_;
};

/// Upper triangle of the matrix at lexicographic rank `rank`.
std::vector<Label> unrank_matrix(int n, std::uint64_t rank);

}  // namespace crescent
