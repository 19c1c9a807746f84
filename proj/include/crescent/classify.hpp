#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crescent/label_matrix.hpp"

namespace crescent {

/// Sorted multiset of the n-1 labels in one row.
using DistanceCoordinate = std::vector<Label>;

/// Sorted list of the n distance coordinates of a label matrix. Equal
/// distance sets are the isomorphism criterion used for grouping.
class DistanceSet {
 public:
  DistanceSet() = default;
  explicit DistanceSet(std::vector<DistanceCoordinate> coordinates);

  const std::vector<DistanceCoordinate>& coordinates() const { return coordinates_; }
  std::size_t size() const { return coordinates_.size(); }

  friend bool operator==(const DistanceSet&, const DistanceSet&) = default;
  friend auto operator<=>(const DistanceSet&, const DistanceSet&) = default;

 private:
  std::vector<DistanceCoordinate> coordinates_;
};

DistanceSet distance_set(const LabelBlock& m);

struct IsoClass {
  DistanceSet key;
  LabelMatrix representative;  // lexicographically least member
  std::uint64_t member_count = 0;
  int class_id = 0;            // 1-based position in the class ordering
};

/// Grouping state that can be filled from several sub-streams and merged.
class ClassAccumulator {
 public:
  void add(const LabelMatrix& m);
  void merge(ClassAccumulator&& other);
  std::uint64_t matrices_seen() const { return seen_; }
  std::size_t class_count() const { return classes_.size(); }

  /// Classes ordered by representative, numbered from 1.
  std::vector<IsoClass> finish() &&;

 private:
  struct Entry {
    LabelMatrix representative;
    std::uint64_t members = 0;
  };
  std::map<DistanceSet, Entry> classes_;
  std::uint64_t seen_ = 0;
};

std::vector<IsoClass> group_by_distance_set(const MatrixEnumeration& stream);

/// Some point has four or more neighbours at one distance.
bool filter_star(const IsoClass& c);
bool filter_star(const DistanceSet& key);

/// Some base {i, j} has three or more apexes k with m(k, i) == m(k, j).
bool filter_shared_base(const IsoClass& c);
bool filter_shared_base(const LabelBlock& m);

enum class TrapezoidPattern {
  kNone,
  kOneRowTwoLabels,    // 1a
  kOneRowThreeLabels,  // 1b
  kTwoRowsThreeLabels, // 2a
  kTwoRowsFourLabels,  // 2b
};

/// Label pattern of a 4x4 block that forces an isosceles trapezoid.
TrapezoidPattern trapezoid_pattern(const LabelBlock& block4);

bool filter_trapezoid(const IsoClass& c);
bool filter_trapezoid(const LabelBlock& m);

enum class Rejection { kNone, kStar, kSharedBase, kTrapezoid };

std::string to_string(Rejection r);
std::string to_string(TrapezoidPattern p);

/// First filter that fires, in the order star, shared base, trapezoid.
Rejection first_rejection(const IsoClass& c);

struct ClassificationReport {
  int n = 0;
  std::uint64_t total_matrices = 0;
  std::uint64_t class_count = 0;
  std::uint64_t star_rejected = 0;
  std::uint64_t shared_base_rejected = 0;
  std::uint64_t trapezoid_rejected = 0;
  std::vector<IsoClass> surviving_classes;  // renumbered 1..k
  /// Rejected classes with the filter that removed them, in class order.
  std::vector<std::pair<IsoClass, Rejection>> rejected_classes;

  const IsoClass* find(int class_id) const;
};

struct PipelineOptions {
  int jobs = 1;
  int max_points = 6;
  bool allow_large = false;
};

/// Enumerate, group by distance set and filter. Throws BudgetExceeded above
/// `max_points` unless `allow_large` is set.
ClassificationReport classify_pipeline(int n, const PipelineOptions& options = {});

}  // namespace crescent
