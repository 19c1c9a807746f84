#include "crescent/classify.hpp"

#include <algorithm>
#include <array>
#include <thread>

#include "crescent/errors.hpp"

namespace crescent {

DistanceSet::DistanceSet(std::vector<DistanceCoordinate> coordinates)
    : coordinates_(std::move(coordinates)) {
  for (auto& c : coordinates_) std::sort(c.begin(), c.end());
  std::sort(coordinates_.begin(), coordinates_.end());
}

DistanceSet distance_set(const LabelBlock& m) {
  const int n = m.size();
  std::vector<DistanceCoordinate> coords(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& row = coords[static_cast<std::size_t>(i)];
    row.reserve(static_cast<std::size_t>(n - 1));
    for (int j = 0; j < n; ++j)
      if (j != i) row.push_back(static_cast<Label>(m(i, j)));
  }
  return DistanceSet(std::move(coords));
}

void ClassAccumulator::add(const LabelMatrix& m) {
  ++seen_;
  auto [it, inserted] = classes_.try_emplace(distance_set(m), Entry{m, 0});
  auto& entry = it->second;
  ++entry.members;
  if (!inserted && m < entry.representative) entry.representative = m;
}

void ClassAccumulator::merge(ClassAccumulator&& other) {
  seen_ += other.seen_;
  for (auto& [key, entry] : other.classes_) {
    auto [it, inserted] = classes_.try_emplace(key, entry);
    if (inserted) continue;
    it->second.members += entry.members;
    if (entry.representative < it->second.representative) it->second.representative = entry.representative;
  }
  other.classes_.clear();
  other.seen_ = 0;
}

std::vector<IsoClass> ClassAccumulator::finish() && {
  std::vector<IsoClass> out;
  out.reserve(classes_.size());
  for (auto& [key, entry] : classes_) out.push_back(IsoClass{key, std::move(entry.representative), entry.members, 0});
  std::sort(out.begin(), out.end(),
            [](const IsoClass& a, const IsoClass& b) { return a.representative < b.representative; });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].class_id = static_cast<int>(i + 1);
  classes_.clear();
  return out;
}

std::vector<IsoClass> group_by_distance_set(const MatrixEnumeration& stream) {
  ClassAccumulator acc;
  for (const auto& m : stream) acc.add(m);
  return std::move(acc).finish();
}

bool filter_star(const DistanceSet& key) {
  for (const auto& coord : key.coordinates()) {
    // coordinates are sorted, so equal labels are adjacent
    for (std::size_t i = 0; i + 3 < coord.size(); ++i)
      if (coord[i] == coord[i + 3]) return true;
  }
  return false;
}

bool filter_star(const IsoClass& c) { return filter_star(c.key); }

bool filter_shared_base(const LabelBlock& m) {
  const int n = m.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      int apexes = 0;
      for (int k = 0; k < n; ++k)
        if (k != i && k != j && m(k, i) == m(k, j)) ++apexes;
      if (apexes >= 3) return true;
    }
  }
  return false;
}

bool filter_shared_base(const IsoClass& c) { return filter_shared_base(c.representative); }

TrapezoidPattern trapezoid_pattern(const LabelBlock& b) {
  if (b.size() != 4) throw InvalidArgument("trapezoid pattern needs a 4x4 block");

  std::array<std::array<int, 3>, 4> rows{};
  for (int i = 0; i < 4; ++i) {
    int c = 0;
    for (int j = 0; j < 4; ++j)
      if (j != i) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c++)] = b(i, j);
    std::sort(rows[static_cast<std::size_t>(i)].begin(), rows[static_cast<std::size_t>(i)].end());
  }

  // label -> edge multiplicity inside the block
  std::map<int, int> multiplicity;
  for (const Label l : b.upper()) ++multiplicity[l];
  const int labels = static_cast<int>(multiplicity.size());
  int max_mult = 0;
  for (const auto& [label, count] : multiplicity) max_mult = std::max(max_mult, count);

  auto sorted_rows = rows;
  std::sort(sorted_rows.begin(), sorted_rows.end());
  const bool one_row = sorted_rows[0] == sorted_rows[3];
  const bool two_rows_twice = sorted_rows[0] == sorted_rows[1] && sorted_rows[2] == sorted_rows[3] &&
                              sorted_rows[1] != sorted_rows[2];

  if (one_row) {
    if (labels == 2) return TrapezoidPattern::kOneRowTwoLabels;
    if (labels == 3) return TrapezoidPattern::kOneRowThreeLabels;
  }
  if (two_rows_twice) {
    if (labels == 3 && max_mult <= 3) return TrapezoidPattern::kTwoRowsThreeLabels;
    if (labels == 4 && max_mult <= 2) return TrapezoidPattern::kTwoRowsFourLabels;
  }
  return TrapezoidPattern::kNone;
}

bool filter_trapezoid(const LabelBlock& m) {
  const int n = m.size();
  if (n < 4) return false;
  std::array<int, 4> s{};
  for (s[0] = 0; s[0] < n; ++s[0])
    for (s[1] = s[0] + 1; s[1] < n; ++s[1])
      for (s[2] = s[1] + 1; s[2] < n; ++s[2])
        for (s[3] = s[2] + 1; s[3] < n; ++s[3])
          if (trapezoid_pattern(principal_submatrix(m, s)) != TrapezoidPattern::kNone) return true;
  return false;
}

bool filter_trapezoid(const IsoClass& c) { return filter_trapezoid(c.representative); }

Rejection first_rejection(const IsoClass& c) {
  if (filter_star(c)) return Rejection::kStar;
  if (filter_shared_base(c)) return Rejection::kSharedBase;
  if (filter_trapezoid(c)) return Rejection::kTrapezoid;
  return Rejection::kNone;
}

std::string to_string(Rejection r) {
  switch (r) {
    case Rejection::kNone: return "none";
    case Rejection::kStar: return "star";
    case Rejection::kSharedBase: return "shared_base";
    case Rejection::kTrapezoid: return "trapezoid";
  }
  return "unknown";
}

std::string to_string(TrapezoidPattern p) {
  switch (p) {
    case TrapezoidPattern::kNone: return "none";
    case TrapezoidPattern::kOneRowTwoLabels: return "1a";
    case TrapezoidPattern::kOneRowThreeLabels: return "1b";
    case TrapezoidPattern::kTwoRowsThreeLabels: return "2a";
    case TrapezoidPattern::kTwoRowsFourLabels: return "2b";
  }
  return "unknown";
}

const IsoClass* ClassificationReport::find(int class_id) const {
  for (const auto& c : surviving_classes)
    if (c.class_id == class_id) return &c;
  return nullptr;
}

ClassificationReport classify_pipeline(int n, const PipelineOptions& options) {
  if (n > options.max_points && !options.allow_large) {
    throw BudgetExceeded("n=" + std::to_string(n) + " exceeds the enumeration budget (max " +
                         std::to_string(options.max_points) + "); pass --allow-large to override");
  }

  const int jobs = std::max(1, options.jobs);
  std::vector<IsoClass> classes;
  std::uint64_t total = 0;
  if (jobs == 1) {
    ClassAccumulator acc;
    for (const auto& m : MatrixEnumeration(n)) acc.add(m);
    total = acc.matrices_seen();
    classes = std::move(acc).finish();
  } else {
    auto parts = MatrixEnumeration::partition(n, jobs);
    std::vector<ClassAccumulator> partial(parts.size());
    {
      std::vector<std::jthread> workers;
      for (std::size_t p = 0; p < parts.size(); ++p) {
        workers.emplace_back([&, p] {
          for (const auto& m : parts[p]) partial[p].add(m);
        });
      }
    }
    ClassAccumulator acc;
    for (auto& part : partial) acc.merge(std::move(part));
    total = acc.matrices_seen();
    classes = std::move(acc).finish();
  }

  ClassificationReport report;
  report.n = n;
  report.total_matrices = total;
  report.class_count = classes.size();
  for (auto& c : classes) {
    const Rejection r = first_rejection(c);
    switch (r) {
      case Rejection::kStar: ++report.star_rejected; break;
      case Rejection::kSharedBase: ++report.shared_base_rejected; break;
      case Rejection::kTrapezoid: ++report.trapezoid_rejected; break;
      case Rejection::kNone: break;
    }
    if (r == Rejection::kNone) {
      report.surviving_classes.push_back(std::move(c));
    } else {
      report.rejected_classes.emplace_back(std::move(c), r);
    }
  }
  for (std::size_t i = 0; i < report.surviving_classes.size(); ++i)
    report.surviving_classes[i].class_id = static_cast<int>(i + 1);
  return report;
}

}  // namespace crescent
