#include "crescent/distance_table.hpp"

#include <algorithm>
#include <cmath>

#include "crescent/errors.hpp"

namespace crescent {

std::vector<TableRow> table_rows_from_json(const json& j) {
  std::vector<TableRow> out;
  if (!j.contains("rows")) return out;
  for (const auto& e : j.at("rows")) {
    TableRow row;
    row.position = e.value("position", static_cast<int>(out.size()) + 1);
    row.printed_label = e.value("printed_label", "");
    row.matrix = label_matrix_from_json(e.at("matrix"));
    row.assignment = assignment_from_json(row.matrix.size(), e.at("assignment"));
    row.closed_form = e.value("kind", "closed_form") == "closed_form";
    row.note = e.value("note", "");
    out.push_back(std::move(row));
  }
  return out;
}

std::string to_string(CheckPath p) {
  switch (p) {
    case CheckPath::kFailed: return "failed";
    case CheckPath::kStrict: return "strict";
    case CheckPath::kWidened: return "widened";
    case CheckPath::kRefined: return "refined";
  }
  return "unknown";
}

RowCheck check_row(const TableRow& row, const RowCheckOptions& options) {
  RowCheck out;
  out.position = row.position;
  out.closed_form = row.closed_form;
  out.strict = verify_realizable(row.matrix, row.assignment, options.strict);
  if (out.strict.ok) {
    out.path = CheckPath::kStrict;
    return out;
  }
  if (row.closed_form) return out;

  Tolerances widened = options.strict;
  widened.zero = options.widened_zero;
  out.widened = verify_realizable(row.matrix, row.assignment, widened);
  if (out.widened->ok) {
    out.path = CheckPath::kWidened;
    return out;
  }

  SolverConfig cfg = options.solver;
  cfg.zero_tol = options.strict.zero;
  cfg.margin_tol = options.strict.margin;
  cfg.distinct_tol = options.strict.distinct;
  if (auto refined = refine_assignment(row.matrix, row.assignment, cfg)) {
    double gap = 0.0;
    for (int k = 2; k <= row.assignment.labels(); ++k)
      gap = std::max(gap, std::abs(refined->assignment[k] - row.assignment[k]));
    out.refine_gap = gap;
    out.refined = refined->assignment;
    if (gap <= options.refine_match) out.path = CheckPath::kRefined;
  }
  return out;
}

}  // namespace crescent
