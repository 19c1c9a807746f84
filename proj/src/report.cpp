#include "crescent/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "crescent/errors.hpp"

namespace crescent {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string upper_text(const LabelBlock& m) {
  std::string out;
  for (const Label l : m.upper()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(static_cast<int>(l));
  }
  return out;
}

json class_json(const IsoClass& c) {
  json coords = json::array();
  for (const auto& coord : c.key.coordinates()) {
    json row = json::array();
    for (const Label l : coord) row.push_back(static_cast<int>(l));
    coords.push_back(std::move(row));
  }
  return json{{"class_id", c.class_id},
              {"member_count", c.member_count},
              {"representative", label_matrix_json(c.representative)},
              {"distance_set", std::move(coords)}};
}

IsoClass class_from_json(const json& j) {
  IsoClass c;
  c.representative = label_matrix_from_json(j.at("representative"));
  c.key = distance_set(c.representative);
  c.member_count = j.at("member_count").get<std::uint64_t>();
  c.class_id = j.at("class_id").get<int>();
  return c;
}

Rejection rejection_from_string(const std::string& s) {
  for (const auto r : {Rejection::kNone, Rejection::kStar, Rejection::kSharedBase, Rejection::kTrapezoid})
    if (to_string(r) == s) return r;
  throw InvalidArgument("unknown rejection '" + s + "'");
}

json margin_map(const std::map<Subset, double>& values) {
  json out = json::object();
  for (const auto& [s, v] : values) out[subset_key(s)] = v;
  return out;
}

json margins_json(const PositionMargins& m) {
  return json{{"max_planarity", m.max_planarity()},
              {"min_collinearity", m.min_collinearity()},
              {"min_concyclicity", m.min_concyclicity()},
              {"planarity", margin_map(m.planarity)},
              {"collinearity", margin_map(m.collinearity)},
              {"concyclicity", margin_map(m.concyclicity)}};
}

}  // namespace

json to_json(const RunManifest& m) {
  json tol = json::object();
  for (const auto& [k, v] : m.tolerances) tol[k] = v;
  return json{{"command", m.command}, {"n", m.n},           {"seed", m.seed},          {"tolerances", tol},
              {"version", m.version}, {"inputs", m.inputs}, {"outputs", m.outputs}};
}

json label_matrix_json(const LabelBlock& m) {
  json upper = json::array();
  for (const Label l : m.upper()) upper.push_back(static_cast<int>(l));
  std::string text = std::to_string(m.size());
  for (const Label l : m.upper()) text += " " + std::to_string(static_cast<int>(l));
  return json{{"n", m.size()}, {"upper", std::move(upper)}, {"canonical", std::move(text)}};
}

LabelMatrix label_matrix_from_json(const json& j) {
  if (j.contains("rows")) return LabelMatrix::from_rows(j.at("rows").get<std::vector<std::vector<int>>>());
  const int n = j.at("n").get<int>();
  std::vector<Label> upper;
  for (const auto& v : j.at("upper")) {
    const int l = v.get<int>();
    if (l < 0 || l > 255) throw InvalidArgument("label out of range");
    upper.push_back(static_cast<Label>(l));
  }
  return LabelMatrix::from_upper(n, upper);
}

json to_json(const ClassificationReport& r) {
  json surviving = json::array();
  for (const auto& c : r.surviving_classes) surviving.push_back(class_json(c));
  json rejected = json::array();
  for (const auto& [c, why] : r.rejected_classes) {
    auto entry = class_json(c);
    entry.erase("class_id");
    entry["rejection"] = to_string(why);
    rejected.push_back(std::move(entry));
  }
  return json{{"n", r.n},
              {"total_matrices", r.total_matrices},
              {"class_count", r.class_count},
              {"star_rejected", r.star_rejected},
              {"shared_base_rejected", r.shared_base_rejected},
              {"trapezoid_rejected", r.trapezoid_rejected},
              {"surviving_count", r.surviving_classes.size()},
              {"surviving", std::move(surviving)},
              {"rejected", std::move(rejected)}};
}

ClassificationReport classification_from_json(const json& j) {
  ClassificationReport r;
  r.n = j.at("n").get<int>();
  r.total_matrices = j.at("total_matrices").get<std::uint64_t>();
  r.class_count = j.at("class_count").get<std::uint64_t>();
  r.star_rejected = j.at("star_rejected").get<std::uint64_t>();
  r.shared_base_rejected = j.at("shared_base_rejected").get<std::uint64_t>();
  r.trapezoid_rejected = j.at("trapezoid_rejected").get<std::uint64_t>();
  for (const auto& c : j.at("surviving")) r.surviving_classes.push_back(class_from_json(c));
  for (const auto& c : j.at("rejected")) {
    json entry = c;
    entry["class_id"] = 0;
    r.rejected_classes.emplace_back(class_from_json(entry), rejection_from_string(c.at("rejection")));
  }
  return r;
}

std::string classification_csv(const ClassificationReport& r) {
  std::ostringstream out;
  out << "class_id,status,rejection,member_count,upper\n";
  for (const auto& c : r.surviving_classes)
    out << c.class_id << ",surviving,none," << c.member_count << ',' << upper_text(c.representative) << '\n';
  for (const auto& [c, why] : r.rejected_classes)
    out << ",rejected," << to_string(why) << ',' << c.member_count << ',' << upper_text(c.representative) << '\n';
  return out.str();
}

json to_json(const DistanceAssignment& a) {
  json out = json::object();
  for (const auto& [k, v] : a.as_map()) out[std::to_string(k)] = v;
  return out;
}

DistanceAssignment assignment_from_json(int n, const json& j) {
  std::map<int, double> values;
  for (const auto& [k, v] : j.items()) values[std::stoi(k)] = v.get<double>();
  return DistanceAssignment::from_map(n, values);
}

json to_json(const Census& c) {
  json classes = json::array();
  for (const auto& v : c.classes) {
    json entry{{"class_id", v.class_id},
               {"representative", label_matrix_json(v.representative)},
               {"realizable", v.realizable()},
               {"starts_used", v.starts_used}};
    if (v.realization) {
      const auto& r = *v.realization;
      json coords = json::array();
      for (Eigen::Index k = 0; k < r.coordinates.rows(); ++k) coords.push_back({r.coordinates(k, 0), r.coordinates(k, 1)});
      entry["assignment"] = to_json(r.assignment);
      entry["coordinates"] = std::move(coords);
      entry["residual"] = r.residual;
      entry["margins"] = margins_json(r.margins);
      entry["family"] = r.family;
    }
    classes.push_back(std::move(entry));
  }
  const auto& cfg = c.config;
  return json{{"n", c.n},
              {"seed", cfg.seed},
              {"config",
               {{"starts", cfg.starts},
                {"max_iters", cfg.max_iters},
                {"residual_tol", cfg.residual_tol},
                {"margin_tol", cfg.margin_tol},
                {"zero_tol", cfg.zero_tol},
                {"distinct_tol", cfg.distinct_tol},
                {"coord_box", cfg.coord_box},
                {"dist_range", {cfg.dist_min, cfg.dist_max}}}},
              {"surviving_count", c.classes.size()},
              {"realizable_count", c.realizable_count()},
              {"classes", std::move(classes)}};
}

Census census_from_json(const json& j) {
  Census c;
  c.n = j.at("n").get<int>();
  auto& cfg = c.config;
  cfg.seed = j.at("seed").get<std::uint64_t>();
  const auto& jc = j.at("config");
  cfg.starts = jc.at("starts").get<int>();
  cfg.max_iters = jc.at("max_iters").get<int>();
  cfg.residual_tol = jc.at("residual_tol").get<double>();
  cfg.margin_tol = jc.at("margin_tol").get<double>();
  cfg.zero_tol = jc.at("zero_tol").get<double>();
  cfg.distinct_tol = jc.at("distinct_tol").get<double>();
  cfg.coord_box = jc.at("coord_box").get<double>();
  cfg.dist_min = jc.at("dist_range").at(0).get<double>();
  cfg.dist_max = jc.at("dist_range").at(1).get<double>();
  for (const auto& e : j.at("classes")) {
    ClassVerdict v;
    v.class_id = e.at("class_id").get<int>();
    v.representative = label_matrix_from_json(e.at("representative"));
    v.starts_used = e.at("starts_used").get<int>();
    if (e.at("realizable").get<bool>()) {
      Realization r;
      r.class_id = v.class_id;
      r.matrix = v.representative;
      r.assignment = assignment_from_json(c.n, e.at("assignment"));
      const auto& coords = e.at("coordinates");
      r.coordinates = Coordinates(static_cast<Eigen::Index>(coords.size()), 2);
      for (std::size_t k = 0; k < coords.size(); ++k) {
        r.coordinates(static_cast<Eigen::Index>(k), 0) = coords[k].at(0).get<double>();
        r.coordinates(static_cast<Eigen::Index>(k), 1) = coords[k].at(1).get<double>();
      }
      if (r.coordinates.rows() != c.n) throw InvalidArgument("census coordinates do not match n");
      r.residual = e.at("residual").get<double>();
      r.margins = general_position_margins(r.matrix, r.assignment);
      r.family = e.value("family", false);
      r.starts_used = v.starts_used;
      v.realization = std::move(r);
    }
    c.classes.push_back(std::move(v));
  }
  return c;
}

std::string census_csv(const Census& c) {
  std::ostringstream out;
  out << "class_id,realizable,starts_used,residual";
  for (int k = 1; k < c.n; ++k) out << ",d" << k;
  out << ",max_planarity,min_collinearity,min_concyclicity,upper\n";
  for (const auto& v : c.classes) {
    out << v.class_id << ',' << (v.realizable() ? "true" : "false") << ',' << v.starts_used << ',';
    if (v.realization) {
      const auto& r = *v.realization;
      out << fmt(r.residual);
      for (int k = 1; k < c.n; ++k) out << ',' << fmt(r.assignment[k]);
      out << ',' << fmt(r.margins.max_planarity()) << ',' << fmt(r.margins.min_collinearity()) << ','
          << fmt(r.margins.min_concyclicity());
    } else {
      for (int k = 1; k < c.n + 3; ++k) out << ',';
    }
    out << ',' << upper_text(v.representative) << '\n';
  }
  return out.str();
}

json to_json(const RigidityReport& r) {
  return json{{"class_id", r.class_id},
              {"n", r.n},
              {"dim", r.dim},
              {"rank", r.rank},
              {"s_allowed", r.s_allowed},
              {"rigid", r.rigid},
              {"deletion_ranks", r.deletion_ranks},
              {"redundantly_rigid", r.redundantly_rigid},
              {"connectivity", r.connectivity},
              {"connectivity_ok", r.connectivity_ok},
              {"unique_realization", r.unique_realization},
              {"level", "witness"}};
}

json to_json(const std::vector<RigidityReport>& reports) {
  json out = json::array();
  for (const auto& r : reports) out.push_back(to_json(r));
  return out;
}

std::string rigidity_csv(const std::vector<RigidityReport>& reports) {
  std::ostringstream out;
  out << "class_id,n,dim,rank,s_allowed,rigid,redundantly_rigid,connectivity,unique_realization,deletion_ranks\n";
  for (const auto& r : reports) {
    out << r.class_id << ',' << r.n << ',' << r.dim << ',' << r.rank << ',' << r.s_allowed << ','
        << (r.rigid ? "true" : "false") << ',' << (r.redundantly_rigid ? "true" : "false") << ',' << r.connectivity
        << ',' << (r.unique_realization ? "true" : "false") << ',';
    for (std::size_t k = 0; k < r.deletion_ranks.size(); ++k) out << (k ? " " : "") << r.deletion_ranks[k];
    out << '\n';
  }
  return out.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  out.close();
  if (!out) throw IoError("error writing " + path);
}

}  // namespace crescent
