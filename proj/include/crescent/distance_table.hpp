#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crescent/geometry.hpp"
#include "crescent/report.hpp"
#include "crescent/solver.hpp"

namespace crescent {

/// One (matrix, assignment) pair of a distance table file.
struct TableRow {
  int position = 0;
  std::string printed_label;
  LabelMatrix matrix;
  DistanceAssignment assignment;
  bool closed_form = true;
  std::string note;
};

/// Reads {"rows": [{"position", "matrix", "assignment", "kind", ...}]}.
/// Missing "kind" means closed form.
std::vector<TableRow> table_rows_from_json(const json& j);

enum class CheckPath { kFailed, kStrict, kWidened, kRefined };

std::string to_string(CheckPath p);

struct RowCheck {
  int position = 0;
  bool closed_form = true;
  CheckPath path = CheckPath::kFailed;
  Verdict strict;
  std::optional<Verdict> widened;
  /// Largest |refined - printed| over d_2.., when the refinement verified.
  std::optional<double> refine_gap;
  std::optional<DistanceAssignment> refined;

  bool pass() const { return path != CheckPath::kFailed; }
};

struct RowCheckOptions {
  Tolerances strict{};
  /// Planarity bound for rounded four-decimal rows.
  double widened_zero = 1e-3;
  /// Agreement required between a refined solution and the printed values.
  double refine_match = 5e-4;
  SolverConfig solver{};
};

/// Closed-form rows must verify at the strict tolerances. Rounded rows pass
/// on the first of: strict verification, widened planarity bound, or a local
/// refinement that verifies strictly and stays within refine_match of the
/// printed values.
RowCheck check_row(const TableRow& row, const RowCheckOptions& options = {});

}  // namespace crescent
