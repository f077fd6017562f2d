#include "devperf/report.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "devperf/csv.hpp"
#include "devperf/edp.hpp"
#include "devperf/errors.hpp"
#include "devperf/hash.hpp"
#include "devperf/svg_render.hpp"

namespace fs = std::filesystem;

namespace devperf {

std::string fnv1a64_hex(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

bool RunConfig::wants(const std::string& fmt) const {
  return std::find(formats.begin(), formats.end(), fmt) != formats.end();
}

namespace {

struct Artifact {
  std::string path;  // relative to out_dir
  size_t bytes = 0;
  std::string hash;
};

struct Pipeline {
  Dataset dataset;
  PredictionSet preds;
  Diagnostics diag;
  std::string dataset_hash;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const RunConfig& cfg, const std::string& name, const std::string& bytes,
                std::vector<Artifact>* artifacts) {
  fs::create_directories(cfg.out_dir);
  fs::path p = fs::path(cfg.out_dir) / name;
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + p.string());
  out << bytes;
  if (!out) throw DataError("write failed: " + p.string());
  if (artifacts) artifacts->push_back({name, bytes.size(), fnv1a64_hex(bytes)});
}

void validate_common(const RunConfig& cfg) {
  if (cfg.data_path.empty()) throw ConfigError("--data is required");
  if (cfg.target.empty()) throw ConfigError("--target is required");
}

Pipeline run_pipeline(const RunConfig& cfg) {
  validate_common(cfg);
  Pipeline p;
  std::string raw = read_file(cfg.data_path);
  p.dataset_hash = fnv1a64_hex(raw);
  std::istringstream in(raw);
  p.dataset = load_csv_stream(in, cfg.target, {}, &p.diag);
  if (cfg.import_mode()) {
    p.preds = import_predictions(cfg.predictions_path, p.dataset);
  } else {
    if (cfg.k < 2) throw ConfigError("--k must be >= 2");
    auto learner = make_learner(cfg.learner);
    p.preds = cross_val_predict(p.dataset, *learner, cfg.k, cfg.seed, &p.diag);
  }
  return p;
}

std::vector<BinScheme> resolve_schemes(const Dataset& ds, const RunConfig& cfg) {
  std::map<std::string, std::vector<double>> edge_overrides;
  std::vector<BinScheme> pinned;
  if (!cfg.bins_path.empty()) edge_overrides = load_bin_overrides(cfg.bins_path, &pinned);

  auto is_predictor = [&](const std::string& name) {
    for (size_t c : ds.predictor_indices())
      if (ds.columns[c].name == name) return true;
    return false;
  };
  for (const auto& [name, _] : edge_overrides)
    if (!is_predictor(name)) throw ConfigError("bins file names unknown predictor '" + name + "'");
  for (const auto& s : pinned)
    if (!is_predictor(s.predictor))
      throw ConfigError("bins file names unknown predictor '" + s.predictor + "'");

  std::vector<BinScheme> schemes = default_schemes(ds, edge_overrides);
  for (const auto& s : pinned)
    for (auto& base : schemes)
      if (base.predictor == s.predictor) base = s;
  return schemes;
}

std::vector<std::string> resolve_predictors(const Dataset& ds, const RunConfig& cfg) {
  std::vector<std::string> all;
  for (size_t c : ds.predictor_indices()) all.push_back(ds.columns[c].name);
  if (cfg.predictors.empty() || (cfg.predictors.size() == 1 && cfg.predictors[0] == "all"))
    return all;
  for (const auto& name : cfg.predictors) {
    if (name == cfg.target) throw DataError("predictor '" + name + "' is the target column");
    if (std::find(all.begin(), all.end(), name) == all.end())
      throw DataError("unknown predictor '" + name + "'");
  }
  return cfg.predictors;
}

std::string safe_name(const std::string& s) {
  std::string o;
  for (char c : s)
    o += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_')
             ? c
             : '_';
  return o;
}

std::string global_cm_line(const PredictionSet& preds) {
  OutcomeColumn oc = encode_outcomes(preds);
  ConfusionDistribution global = count_outcomes(oc.ids, oc.universe);
  return cm_string(global, oc.universe);
}

void emit_diagnostics(const Diagnostics& diag, std::ostream& out) {
  for (const auto& w : diag.warnings) out << "warning: " << w << '\n';
}

void write_prediction_files(const RunConfig& cfg, const Pipeline& p,
                            std::vector<Artifact>* artifacts) {
  write_file(cfg, "predictions.csv", export_predictions_csv(p.preds), artifacts);
  nlohmann::ordered_json side;
  side["k"] = p.preds.k;
  side["seed"] = p.preds.seed;
  side["learner"] = p.preds.learner;
  side["n_rows"] = p.preds.n();
  side["accuracy"] = p.preds.accuracy();
  side["labels"] = p.preds.labels;
  side["dataset_hash"] = p.dataset_hash;
  write_file(cfg, "predictions.json", side.dump(2) + "\n", artifacts);
}

void write_edp_files(const RunConfig& cfg, const Pipeline& p, const std::vector<BinScheme>& schemes,
                     const std::string& predictor, std::vector<Artifact>* artifacts) {
  std::optional<BinScheme> scheme;
  for (const auto& s : schemes)
    if (s.predictor == predictor) scheme = s;
  Diagnostics diag;
  EDPResult edp = compute_edp(p.dataset, p.preds, predictor, scheme, &diag);
  ErrorZoom zoom = error_zoom(edp);
  std::string base = "edp_" + safe_name(predictor);
  if (cfg.wants("svg")) {
    write_file(cfg, base + ".svg", render_edp_svg(edp), artifacts);
    write_file(cfg, base + "_zoom.svg", render_edp_svg(edp, &zoom), artifacts);
  }
  if (cfg.wants("json")) write_file(cfg, base + ".json", edp_to_json(edp, &zoom) + "\n", artifacts);
  if (cfg.wants("csv")) write_file(cfg, base + ".csv", edp_to_csv(edp), artifacts);
}

struct RulesOutput {
  MiningTable table;
  std::vector<DistributionRule> rules;
};

RulesOutput run_rules(const RunConfig& cfg, const Pipeline& p) {
  RulesOutput out;
  out.table = build_mining_table(p.dataset, p.preds, resolve_schemes(p.dataset, cfg), nullptr);
  out.rules = mine_rules(out.table, cfg.mining);
  return out;
}

void write_rules_files(const RunConfig& cfg, const RulesOutput& r,
                       std::vector<Artifact>* artifacts) {
  if (cfg.wants("txt"))
    write_file(cfg, "rules.txt", format_rules(r.rules, r.table.universe), artifacts);
  if (cfg.wants("json"))
    write_file(cfg, "rules.json", rules_to_json(r.rules, r.table.universe) + "\n", artifacts);
}

void print_query(const RunConfig& cfg, const MiningTable& table, std::ostream& out) {
  std::vector<Item> ant = parse_antecedent(cfg.query);
  SubgroupResult q = query_subgroup(table, ant, cfg.mining.pool_min_expected);
  out << "query: " << (ant.empty() ? "(all rows)" : cfg.query) << '\n';
  if (q.empty) {
    out << "empty subgroup (0 cases)\n";
    return;
  }
  char line[96];
  std::snprintf(line, sizeof line, "n = %zu  Ant sup = %.5f  pvalue = %.22f", q.size, q.support,
                q.p_value);
  out << line << '\n' << cm_string(q.distribution, table.universe) << '\n';
}

}  // namespace

int cmd_predict(const RunConfig& cfg, std::ostream& out) {
  if (cfg.import_mode()) throw ConfigError("predict runs built-in CV; --predictions not allowed");
  Pipeline p = run_pipeline(cfg);
  write_prediction_files(cfg, p, nullptr);
  emit_diagnostics(p.diag, out);
  out << global_cm_line(p.preds) << '\n';
  char acc[64];
  std::snprintf(acc, sizeof acc, "accuracy = %.4f  (n = %zu)", p.preds.accuracy(), p.preds.n());
  out << acc << '\n';
  return 0;
}

int cmd_edp(const RunConfig& cfg, std::ostream& out) {
  Pipeline p = run_pipeline(cfg);
  std::vector<BinScheme> schemes = resolve_schemes(p.dataset, cfg);
  std::vector<std::string> preds = resolve_predictors(p.dataset, cfg);
  for (const auto& name : preds) write_edp_files(cfg, p, schemes, name, nullptr);
  emit_diagnostics(p.diag, out);
  out << "wrote EDPs for " << preds.size() << " predictor" << (preds.size() == 1 ? "" : "s")
      << " to " << cfg.out_dir << '\n';
  return 0;
}

int cmd_rules(const RunConfig& cfg, std::ostream& out) {
  Pipeline p = run_pipeline(cfg);
  RulesOutput r = run_rules(cfg, p);
  write_rules_files(cfg, r, nullptr);
  emit_diagnostics(p.diag, out);
  out << cm_string(r.table.global, r.table.universe) << '\n';
  if (!cfg.query.empty()) {
    out << '\n';
    print_query(cfg, r.table, out);
  }
  out << '\n';
  if (r.rules.empty())
    out << "0 rules\n";
  else
    out << format_rules(r.rules, r.table.universe);
  return 0;
}

int cmd_report(const RunConfig& cfg, std::ostream& out) {
  Pipeline p = run_pipeline(cfg);
  std::vector<Artifact> artifacts;
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  bool failed = false;

  auto step = [&](const std::string& name, auto&& fn) {
    nlohmann::ordered_json s;
    s["name"] = name;
    try {
      fn();
      s["status"] = "ok";
    } catch (const std::exception& e) {
      s["status"] = "error";
      s["message"] = e.what();
      failed = true;
    }
    steps.push_back(std::move(s));
  };

  step("predict", [&] { write_prediction_files(cfg, p, &artifacts); });

  std::vector<BinScheme> schemes = resolve_schemes(p.dataset, cfg);
  for (const auto& name : resolve_predictors(p.dataset, cfg))
    step("edp:" + name, [&] { write_edp_files(cfg, p, schemes, name, &artifacts); });

  step("rules", [&] {
    RulesOutput r = run_rules(cfg, p);
    write_rules_files(cfg, r, &artifacts);
  });

  nlohmann::ordered_json manifest;
  manifest["tool"] = "devperf";
  manifest["dataset"] = cfg.data_path;
  manifest["dataset_hash"] = p.dataset_hash;
  manifest["target"] = cfg.target;
  manifest["mode"] = cfg.import_mode() ? "import" : "builtin-cv";
  manifest["learner"] = cfg.import_mode() ? "imported" : cfg.learner;
  manifest["k"] = p.preds.k;
  manifest["seed"] = p.preds.seed;
  manifest["steps"] = std::move(steps);
  nlohmann::ordered_json arts = nlohmann::ordered_json::array();
  for (const auto& a : artifacts)
    arts.push_back({{"path", a.path}, {"bytes", a.bytes}, {"fnv1a64", a.hash}});
  manifest["artifacts"] = std::move(arts);
  write_file(cfg, "manifest.json", manifest.dump(2) + "\n", nullptr);

  emit_diagnostics(p.diag, out);
  out << "report written to " << cfg.out_dir << " (" << artifacts.size() << " artifacts)\n";
  if (failed) out << "some steps failed; see manifest.json\n";
  return failed ? 1 : 0;
}

}  // namespace devperf
