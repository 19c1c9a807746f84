#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crescent/classify.hpp"
#include "crescent/errors.hpp"
#include "crescent/geometry.hpp"
#include "crescent/report.hpp"
#include "crescent/rigidity.hpp"
#include "crescent/solver.hpp"

namespace py = pybind11;
using namespace crescent;

namespace {

std::string classify_json(int n, int jobs) {
  PipelineOptions opts;
  opts.jobs = jobs;
  return dump(to_json(classify_pipeline(n, opts)));
}

std::string realize_json(int n, std::uint64_t seed, int starts, int jobs) {
  SolverConfig cfg;
  cfg.seed = seed;
  cfg.starts = starts;
  cfg.validate();
  return dump(to_json(realizable_census(n, cfg, jobs)));
}

std::string rigidity_json(const std::string& census) {
  return dump(to_json(census_rigidity(census_from_json(json::parse(census)))));
}

py::dict verify(const std::vector<std::vector<int>>& rows, const std::map<int, double>& values) {
  const auto m = LabelMatrix::from_rows(rows);
  const auto v = verify_realizable(m, DistanceAssignment::from_map(m.size(), values));
  py::dict out;
  out["ok"] = v.ok;
  out["reason"] = to_string(v.reason);
  out["detail"] = v.describe();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Crescent configuration search: label matrices, classification, planar witnesses, rigidity.";
  m.attr("__version__") = CRESCENT_VERSION;

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<Overflow>(m, "Overflow", PyExc_OverflowError);

  m.def("count_matrices", &count_matrices, py::arg("n"), "Number of label matrices on n points.");
  m.def("classify_json", &classify_json, py::arg("n"), py::arg("jobs") = 1,
        "Classification report for n points as JSON text.");
  m.def("realize_json", &realize_json, py::arg("n"), py::arg("seed") = 42, py::arg("starts") = 200,
        py::arg("jobs") = 1, "Realizable census for n points as JSON text.", py::call_guard<py::gil_scoped_release>());
  m.def("rigidity_json", &rigidity_json, py::arg("census"), "Rigidity reports for a census JSON text.");
  m.def("verify", &verify, py::arg("rows"), py::arg("values"),
        "Check a label matrix and distance values {label: d} at the default tolerances.");
  m.def("s_allowed", &s_allowed, py::arg("n"), py::arg("d") = 2, "Largest rigidity-matrix rank.");
}
