#include "crescent/label_matrix.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "crescent/errors.hpp"

namespace crescent {
namespace {

constexpr int kMaxPoints = 64;

void require_points(int n) {
  if (n < 3) {
    throw InvalidArgument("point count must be at least 3, got " + std::to_string(n));
  }
  if (n > kMaxPoints) {
    throw InvalidArgument("point count above supported maximum: " + std::to_string(n));
  }
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw Overflow("multinomial count overflows 64 bits");
  return out;
}

// C(total, k) without intermediate overflow for the sizes we care about;
// throws Overflow if the result itself does not fit.
std::uint64_t binomial(std::uint64_t total, std::uint64_t k) {
  k = std::min(k, total - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (total - k + i) is divisible by i; divide out the gcd first
    // so the product stays small.
    std::uint64_t num = total - k + i;
    std::uint64_t den = i;
    const std::uint64_t g1 = std::gcd(result, den);
    result /= g1;
    den /= g1;
    num /= den;
    result = checked_mul(result, num);
  }
  return result;
}

// Number of distinct arrangements of a multiset with the given counts.
std::uint64_t multinomial(std::span<const int> counts) {
  std::uint64_t result = 1;
  std::uint64_t placed = 0;
  for (const int c : counts) {
    placed += static_cast<std::uint64_t>(c);
    result = checked_mul(result, binomial(placed, static_cast<std::uint64_t>(c)));
  }
  return result;
}

void check_multiplicities(int n, std::span<const Label> upper) {
  if (static_cast<int>(upper.size()) != edge_count(n)) {
    throw InvalidArgument("upper triangle has " + std::to_string(upper.size()) +
                          " entries, expected " + std::to_string(edge_count(n)));
  }
  std::vector<int> counts(static_cast<std::size_t>(n), 0);
  for (const Label l : upper) {
    if (l < 1 || l > n - 1) {
      throw InvalidArgument("label " + std::to_string(l) + " outside [1, " +
                            std::to_string(n - 1) + "]");
    }
    ++counts[l];
  }
  for (int k = 1; k < n; ++k) {
    if (counts[static_cast<std::size_t>(k)] != k) {
      throw InvalidArgument("label " + std::to_string(k) + " occurs " +
                            std::to_string(counts[static_cast<std::size_t>(k)]) +
                            " times, expected " + std::to_string(k));
    }
  }
}

}  // namespace

EdgeMultiset::EdgeMultiset(int n) : n_(n) { require_points(n); }

int EdgeMultiset::count(int label) const {
  return (label >= 1 && label < n_) ? label : 0;
}

std::vector<Label> EdgeMultiset::sorted_labels() const {
  std::vector<Label> out;
  out.reserve(static_cast<std::size_t>(total()));
  for (int k = 1; k < n_; ++k) out.insert(out.end(), static_cast<std::size_t>(k), static_cast<Label>(k));
  return out;
}

EdgeMultiset edge_multiset(int n) { return EdgeMultiset(n); }

std::uint64_t count_matrices(int n) {
  require_points(n);
  std::vector<int> counts;
  for (int k = 1; k < n; ++k) counts.push_back(k);
  return multinomial(counts);
}

LabelBlock::LabelBlock(int n, std::vector<Label> upper) : n_(n), upper_(std::move(upper)) {
  if (n < 1) throw InvalidArgument("block size must be positive");
  if (static_cast<int>(upper_.size()) != edge_count(n)) {
    throw InvalidArgument("upper triangle size does not match block size");
  }
}

std::vector<std::vector<int>> LabelBlock::rows() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n_), std::vector<int>(static_cast<std::size_t>(n_), 0));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (*this)(i, j);
  return out;
}

LabelMatrix LabelMatrix::from_upper(int n, std::span<const Label> upper) {
  require_points(n);
  check_multiplicities(n, upper);
  return LabelMatrix(n, std::vector<Label>(upper.begin(), upper.end()));
}

LabelMatrix LabelMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  const int n = static_cast<int>(rows.size());
  require_points(n);
  std::vector<Label> upper;
  upper.reserve(static_cast<std::size_t>(edge_count(n)));
  for (int i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<int>(row.size()) != n) throw InvalidArgument("label matrix is not square");
    if (row[static_cast<std::size_t>(i)] != 0) throw InvalidArgument("label matrix diagonal must be zero");
    for (int j = i + 1; j < n; ++j) {
      const int a = row[static_cast<std::size_t>(j)];
      const int b = rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      if (a != b) {
        throw InvalidArgument("label matrix not symmetric at (" + std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + ")");
      }
      if (a < 0 || a > 255) throw InvalidArgument("label out of range");
      upper.push_back(static_cast<Label>(a));
    }
  }
  check_multiplicities(n, upper);
  return LabelMatrix(n, std::move(upper));
}

LabelMatrix LabelMatrix::parse(std::string_view text) {
  std::vector<int> values;
  const char* p = text.data();
  const char* end = text.data() + text.size();
  while (p < end) {
    while (p < end && (*p == ' ' || *p == '\n' || *p == '\t' || *p == '\r' || *p == ',')) ++p;
    if (p == end) break;
    int v = 0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc{}) throw InvalidArgument("malformed label matrix text");
    values.push_back(v);
    p = next;
  }
  if (values.empty()) throw InvalidArgument("empty label matrix text");
  const int n = values.front();
  require_points(n);
  if (static_cast<int>(values.size()) != 1 + edge_count(n)) {
    throw InvalidArgument("label matrix text has wrong number of entries");
  }
  std::vector<Label> upper;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < 0 || values[i] > 255) throw InvalidArgument("label out of range");
    upper.push_back(static_cast<Label>(values[i]));
  }
  return from_upper(n, upper);
}

LabelMatrix LabelMatrix::permuted(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != n_) throw InvalidArgument("permutation has wrong length");
  std::vector<bool> seen(static_cast<std::size_t>(n_), false);
  for (const int p : perm) {
    if (p < 0 || p >= n_ || seen[static_cast<std::size_t>(p)]) throw InvalidArgument("not a permutation");
    seen[static_cast<std::size_t>(p)] = true;
  }
  std::vector<Label> upper(upper_.size());
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      upper[static_cast<std::size_t>(upper_index(n_, i, j))] =
          static_cast<Label>((*this)(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]));
  return LabelMatrix(n_, std::move(upper));
}

std::string LabelMatrix::canonical_text() const {
  std::string out = std::to_string(n_);
  for (const Label l : upper_) {
    out += ' ';
    out += std::to_string(l);
  }
  out += '\n';
  return out;
}

LabelBlock principal_submatrix(const LabelBlock& m, std::span<const int> subset) {
  const int k = static_cast<int>(subset.size());
  if (k < 1) throw InvalidArgument("empty subset");
  for (int a = 0; a < k; ++a) {
    const int idx = subset[static_cast<std::size_t>(a)];
    if (idx < 0 || idx >= m.size()) throw InvalidArgument("subset index out of range");
    if (a > 0 && subset[static_cast<std::size_t>(a - 1)] >= idx) {
      throw InvalidArgument("subset indices must be sorted and distinct");
    }
  }
  std::vector<Label> upper;
  upper.reserve(static_cast<std::size_t>(edge_count(k)));
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      upper.push_back(static_cast<Label>(m(subset[static_cast<std::size_t>(a)], subset[static_cast<std::size_t>(b)])));
  return LabelBlock(k, std::move(upper));
}

std::vector<Label> unrank_matrix(int n, std::uint64_t rank) {
  require_points(n);
  if (rank >= count_matrices(n)) throw InvalidArgument("rank beyond end of enumeration");
  std::vector<int> counts(static_cast<std::size_t>(n), 0);
  for (int k = 1; k < n; ++k) counts[static_cast<std::size_t>(k)] = k;
  std::vector<Label> out;
  const int total = edge_count(n);
  out.reserve(static_cast<std::size_t>(total));
  for (int pos = 0; pos < total; ++pos) {
    for (int v = 1; v < n; ++v) {
      auto& c = counts[static_cast<std::size_t>(v)];
      if (c == 0) continue;
      --c;
      const std::uint64_t block = multinomial(std::span<const int>(counts).subspan(1));
      if (rank < block) {
        out.push_back(static_cast<Label>(v));
        break;
      }
      rank -= block;
      ++c;
    }
  }
  return out;
}

MatrixEnumeration::MatrixEnumeration(int n) : n_(n), first_(0), count_(count_matrices(n)) {}

MatrixEnumeration::MatrixEnumeration(int n, std::uint64_t first, std::uint64_t count)
    : n_(n), first_(first), count_(count) {
  const std::uint64_t total = count_matrices(n);
  if (first > total || count > total - first) throw InvalidArgument("enumeration range out of bounds");
}

MatrixEnumeration::iterator MatrixEnumeration::begin() const {
  if (count_ == 0) return end();
  return iterator(LabelMatrix(n_, unrank_matrix(n_, first_)), count_);
}

MatrixEnumeration::iterator& MatrixEnumeration::iterator::operator++() {
  if (remaining_ == 0) return *this;
  --remaining_;
  if (remaining_ > 0) std::next_permutation(current_.upper_.begin(), current_.upper_.end());
  return *this;
}

std::vector<MatrixEnumeration> MatrixEnumeration::partition(int n, int parts) {
  if (parts < 1) throw InvalidArgument("partition count must be positive");
  const std::uint64_t total = count_matrices(n);
  std::vector<MatrixEnumeration> out;
  std::uint64_t start = 0;
  for (int p = 0; p < parts; ++p) {
    const std::uint64_t end = total * static_cast<std::uint64_t>(p + 1) / static_cast<std::uint64_t>(parts);
    out.emplace_back(n, start, end - start);
    start = end;
  }
  return out;
}

}  // namespace crescent
