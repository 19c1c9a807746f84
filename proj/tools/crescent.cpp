#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "crescent/cache.hpp"
#include "crescent/classify.hpp"
#include "crescent/distance_table.hpp"
#include "crescent/errors.hpp"
#include "crescent/label_matrix.hpp"
#include "crescent/report.hpp"
#include "crescent/rigidity.hpp"
#include "crescent/solver.hpp"
#include "crescent/svg.hpp"

namespace {

using namespace crescent;

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kIo = 3 };

struct Options {
  int n = 0;
  int class_id = 0;
  std::uint64_t seed = 42;
  int starts = 200;
  double residual_tol = 1e-10;
  double margin_tol = 1e-6;
  double zero_tol = 1e-9;
  double distinct_tol = 1e-3;
  double rank_tol = 1e-8;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string out;
  std::string cache_dir;
  std::string format = "json";
  std::string census;
  std::string table;
  bool allow_large = false;
  bool stream = false;
  bool no_cache = false;
};

PipelineOptions pipeline(const Options& o) {
  PipelineOptions p;
  p.jobs = o.jobs;
  p.allow_large = o.allow_large;
  return p;
}

SolverConfig solver_config(const Options& o) {
  SolverConfig cfg;
  cfg.seed = o.seed;
  cfg.starts = o.starts;
  cfg.residual_tol = o.residual_tol;
  cfg.margin_tol = o.margin_tol;
  cfg.zero_tol = o.zero_tol;
  cfg.distinct_tol = o.distinct_tol;
  cfg.validate();
  return cfg;
}

RunManifest manifest(const std::string& command, const Options& o) {
  RunManifest m;
  m.command = command;
  m.n = o.n;
  m.seed = o.seed;
  if (!o.out.empty()) m.outputs.push_back(o.out);
  return m;
}

ClassificationReport classification(const Options& o) {
  if (o.no_cache) return classify_pipeline(o.n, pipeline(o));
  const ClassificationCache cache(o.cache_dir.empty() ? ClassificationCache::default_dir()
                                                      : std::filesystem::path(o.cache_dir));
  return classify_cached(o.n, pipeline(o), cache);
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
  } else {
    write_text_file(o.out, text);
  }
}

json with_manifest(const RunManifest& m, json body) {
  json out{{"manifest", to_json(m)}};
  for (auto& [k, v] : body.items()) out[k] = std::move(v);
  return out;
}

int cmd_count(const Options& o) {
  if (o.stream) {
    if (o.n > PipelineOptions{}.max_points && !o.allow_large) {
      throw BudgetExceeded("n=" + std::to_string(o.n) + " exceeds the enumeration budget; pass --allow-large");
    }
    std::uint64_t count = 0;
    for (const auto& m : MatrixEnumeration(o.n)) {
      (void)m;
      ++count;
    }
    std::cout << count << '\n';
  } else {
    std::cout << count_matrices(o.n) << '\n';
  }
  return kOk;
}

int cmd_classify(const Options& o) {
  const auto report = classification(o);
  if (!o.out.empty()) {
    if (o.format == "csv") {
      emit(o, classification_csv(report));
    } else {
      emit(o, dump(with_manifest(manifest("classify", o), to_json(report))));
    }
  }
  std::cout << "n=" << report.n << ": " << report.total_matrices << " matrices, " << report.class_count
            << (report.class_count == 1 ? " class, " : " classes, ") << report.surviving_classes.size()
            << " surviving\n";
  return kOk;
}

std::string assignment_text(const DistanceAssignment& a) {
  std::string out;
  char buf[48];
  for (int k = 2; k <= a.labels(); ++k) {
    std::snprintf(buf, sizeof buf, "%sd%d=%.6f", out.empty() ? "" : " ", k, a[k]);
    out += buf;
  }
  return out;
}

int cmd_realize(const Options& o) {
  const auto cfg = solver_config(o);
  auto report = classification(o);
  if (o.class_id != 0) {
    const IsoClass* c = report.find(o.class_id);
    if (!c) {
      std::cerr << "error: no surviving class with id " << o.class_id << " for n=" << o.n << " (valid ids 1.."
                << report.surviving_classes.size() << ")\n";
      return kUsage;
    }
    report.surviving_classes = {*c};
  }
  const auto census = realizable_census(report, cfg, o.jobs);
  auto m = manifest("realize", o);
  m.tolerances = {{"residual", cfg.residual_tol},
                  {"margin", cfg.margin_tol},
                  {"zero", cfg.zero_tol},
                  {"distinct", cfg.distinct_tol}};
  if (!o.out.empty()) {
    if (o.format == "csv") {
      emit(o, census_csv(census));
    } else {
      emit(o, dump(with_manifest(m, to_json(census))));
    }
  }
  if (o.class_id != 0) {
    const auto& v = census.classes.front();
    std::cout << "n=" << o.n << " class " << v.class_id << ": ";
    if (v.realization) {
      std::cout << "realizable " << assignment_text(v.realization->assignment) << '\n';
    } else {
      std::cout << "no witness found under budget (" << cfg.starts << " starts)\n";
    }
  } else {
    std::cout << "n=" << census.n << ": " << census.realizable_count() << '/' << census.classes.size()
              << " realizable\n";
  }
  return kOk;
}

int cmd_verify(const Options& o) {
  const auto rows = table_rows_from_json(json::parse(read_text_file(o.table)));
  RowCheckOptions opts;
  opts.strict = Tolerances{o.zero_tol, o.margin_tol, o.distinct_tol};
  opts.solver.seed = o.seed;
  int closed_failures = 0;
  int passed = 0;
  json results = json::array();
  for (const auto& row : rows) {
    const auto check = check_row(row, opts);
    std::cout << "row " << row.position;
    if (!row.printed_label.empty()) std::cout << ' ' << row.printed_label;
    std::cout << (row.closed_form ? " closed-form: " : " numeric: ");
    if (check.pass()) {
      ++passed;
      std::cout << "pass [" << to_string(check.path) << "]";
      if (check.refine_gap) std::cout << " max deviation " << *check.refine_gap;
    } else {
      if (row.closed_form) ++closed_failures;
      std::cout << "FAIL " << check.strict.describe();
    }
    std::cout << '\n';
    json entry{{"position", row.position},
               {"closed_form", row.closed_form},
               {"pass", check.pass()},
               {"path", to_string(check.path)},
               {"strict", check.strict.describe()}};
    if (check.refine_gap) entry["refine_gap"] = *check.refine_gap;
    results.push_back(std::move(entry));
  }
  std::cout << "verified " << passed << '/' << rows.size() << " rows";
  if (closed_failures) std::cout << ", " << closed_failures << " closed-form failure" << (closed_failures == 1 ? "" : "s");
  std::cout << '\n';
  if (!o.out.empty()) {
    auto m = manifest("verify", o);
    m.inputs.push_back(o.table);
    m.tolerances = {{"zero", o.zero_tol}, {"margin", o.margin_tol}, {"distinct", o.distinct_tol}};
    emit(o, dump(with_manifest(m, json{{"rows", results}})));
  }
  return closed_failures ? kVerifyFailed : kOk;
}

Census load_census(const std::string& path) { return census_from_json(json::parse(read_text_file(path))); }

int cmd_rigidity(const Options& o) {
  const auto census = load_census(o.census);
  const auto reports = census_rigidity(census, o.rank_tol);
  for (const auto& r : reports) {
    std::cout << "class " << r.class_id << ": rank " << r.rank << '/' << r.s_allowed
              << (r.rigid ? " rigid" : " not rigid")
              << (r.redundantly_rigid ? ", redundantly rigid" : ", not redundantly rigid") << ", connectivity "
              << r.connectivity << (r.unique_realization ? ", unique realization" : "") << '\n';
  }
  std::cout << reports.size() << " rigidity report" << (reports.size() == 1 ? "" : "s") << '\n';
  if (!o.out.empty()) {
    if (o.format == "csv") {
      emit(o, rigidity_csv(reports));
    } else {
      Options named = o;
      named.n = census.n;
      named.seed = census.config.seed;
      auto m = manifest("rigidity", named);
      m.inputs.push_back(o.census);
      m.tolerances = {{"rank", o.rank_tol}};
      emit(o, dump(with_manifest(m, json{{"reports", to_json(reports)}})));
    }
  }
  return kOk;
}

int cmd_render(const Options& o) {
  const auto census = load_census(o.census);
  const std::filesystem::path dir = o.out.empty() ? std::filesystem::path(".") : std::filesystem::path(o.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  int written = 0;
  for (const auto& v : census.classes) {
    if (!v.realization) continue;
    Options named = o;
    named.n = census.n;
    named.seed = census.config.seed;
    named.out = (dir / svg_file_name(v.class_id)).string();
    auto m = manifest("render", named);
    m.inputs.push_back(o.census);
    write_text_file(named.out, render_svg(*v.realization, to_json(m).dump()));
    ++written;
  }
  std::cout << "wrote " << written << " SVG file" << (written == 1 ? "" : "s") << " to " << dir.string() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify, realize and analyse crescent configurations"};
  app.set_version_flag("--version", std::string(CRESCENT_VERSION));
  app.require_subcommand(1);
  Options o;

  auto add_n = [&](CLI::App* sub) { sub->add_option("--n", o.n, "number of points")->required()->check(CLI::Range(3, 64)); };
  auto add_jobs = [&](CLI::App* sub) { sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber); };
  auto add_out = [&](CLI::App* sub, const std::string& what) { sub->add_option("--out", o.out, what); };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "artifact format")->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_cache = [&](CLI::App* sub) {
    sub->add_option("--cache-dir", o.cache_dir, "classification cache directory (default $CRESCENT_CACHE_DIR)");
    sub->add_flag("--no-cache", o.no_cache, "always recompute the classification");
    sub->add_flag("--allow-large", o.allow_large, "lift the n <= 6 enumeration budget");
  };
  auto add_margins = [&](CLI::App* sub) {
    sub->add_option("--margin-tol", o.margin_tol, "general-position margin")->check(CLI::PositiveNumber);
    sub->add_option("--zero-tol", o.zero_tol, "planarity residual bound")->check(CLI::PositiveNumber);
    sub->add_option("--distinct-tol", o.distinct_tol, "relative gap between distance values")
        ->check(CLI::PositiveNumber);
  };

  auto* count = app.add_subcommand("count", "number of label matrices on n points");
  add_n(count);
  count->add_flag("--stream", o.stream, "count by enumerating every matrix");
  count->add_flag("--allow-large", o.allow_large, "lift the n <= 6 budget for --stream");

  auto* classify = app.add_subcommand("classify", "group matrices by distance set and filter degenerate classes");
  add_n(classify);
  add_jobs(classify);
  add_out(classify, "classification report path");
  add_format(classify);
  add_cache(classify);

  auto* realize = app.add_subcommand("realize", "search for planar witnesses of the surviving classes");
  add_n(realize);
  realize->add_option("--class-id", o.class_id, "solve one surviving class")->check(CLI::PositiveNumber);
  realize->add_option("--seed", o.seed, "random seed");
  realize->add_option("--starts", o.starts, "starts per class")->check(CLI::PositiveNumber);
  realize->add_option("--residual-tol", o.residual_tol, "bound on the sum of squared violations")
      ->check(CLI::PositiveNumber);
  add_margins(realize);
  add_jobs(realize);
  add_out(realize, "census path");
  add_format(realize);
  add_cache(realize);

  auto* verify = app.add_subcommand("verify", "check (matrix, assignment) rows of a table file");
  verify->add_option("table", o.table, "table JSON")->required()->check(CLI::ExistingFile);
  add_margins(verify);
  verify->add_option("--seed", o.seed, "random seed for refinement");
  add_out(verify, "results path");

  auto* rigidity = app.add_subcommand("rigidity", "rigidity reports for the witnesses of a census");
  rigidity->add_option("census", o.census, "census JSON")->required()->check(CLI::ExistingFile);
  rigidity->add_option("--rank-tol", o.rank_tol, "relative singular value threshold")->check(CLI::PositiveNumber);
  add_out(rigidity, "report path");
  add_format(rigidity);

  auto* render = app.add_subcommand("render", "one SVG per witness of a census");
  render->add_option("census", o.census, "census JSON")->required()->check(CLI::ExistingFile);
  add_out(render, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const auto started = std::chrono::steady_clock::now();
  int code = kOk;
  try {
    if (*count) code = cmd_count(o);
    if (*classify) code = cmd_classify(o);
    if (*realize) code = cmd_realize(o);
    if (*verify) code = cmd_verify(o);
    if (*rigidity) code = cmd_rigidity(o);
    if (*render) code = cmd_render(o);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Overflow& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << '\n';
    return kUsage;
  }
  std::cout.flush();
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
  std::fprintf(stderr, "elapsed %.3f s\n", elapsed.count());
  return code;
}
