#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "devperf/errors.hpp"
#include "devperf/report.hpp"

#include "../support/temp_dir.hpp"

using namespace devperf;

namespace {

// Numeric x separates the classes except for two planted errors; y is noise.
const char* kCsv =
    "x,y,cls\n"
    "1,a,neg\n"
    "2,a,neg\n"
    "1,b,neg\n"
    "3,b,neg\n"
    "2,b,neg\n"
    "1,a,neg\n"
    "3,a,neg\n"
    "2,a,neg\n"
    "9,b,pos\n"
    "8,a,pos\n"
    "9,a,pos\n"
    "7,b,pos\n"
    "8,b,pos\n"
    "9,b,pos\n"
    "2,b,pos\n"
    "8,a,neg\n";

RunConfig base_config(const TempDir& tmp) {
  tmp.write("data.csv", kCsv);
  RunConfig cfg;
  cfg.data_path = tmp.file("data.csv");
  cfg.target = "cls";
  cfg.k = 4;
  cfg.seed = 9;
  cfg.out_dir = (tmp.path / "out").string();
  return cfg;
}

}  // namespace

TEST_CASE("cmd_predict writes the prediction pair and prints the summary") {
  TempDir tmp("devperf_report");
  RunConfig cfg = base_config(tmp);
  std::ostringstream out;
  CHECK(cmd_predict(cfg, out) == 0);

  std::string text = out.str();
  CHECK(text.find("CM={ ") != std::string::npos);
  CHECK(text.find("accuracy = ") != std::string::npos);
  CHECK(text.find("(n = 16)") != std::string::npos);

  std::string csv = tmp.read("out/predictions.csv");
  CHECK(csv.rfind("row_id,true,pred", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 17);

  nlohmann::json side = nlohmann::json::parse(tmp.read("out/predictions.json"));
  CHECK(side["k"] == 4);
  CHECK(side["seed"] == 9);
  CHECK(side["learner"] == "nb");
  CHECK(side["n_rows"] == 16);
  CHECK(side["labels"] == nlohmann::json({"neg", "pos"}));
  CHECK(side["dataset_hash"].get<std::string>().size() == 16);
}

TEST_CASE("cmd_predict refuses import mode") {
  TempDir tmp("devperf_report");
  RunConfig cfg = base_config(tmp);
  cfg.predictions_path = tmp.file("preds.csv");
  std::ostringstream out;
  CHECK_THROWS_AS(cmd_predict(cfg, out), ConfigError);
}

TEST_CASE("cmd_edp writes the selected formats per predictor") {
  TempDir tmp("devperf_report");
  RunConfig cfg = base_config(tmp);
  std::ostringstream out;
  CHECK(cmd_edp(cfg, out) == 0);
  CHECK(out.str().find("wrote EDPs for 2 predictors to " + cfg.out_dir) != std::string::npos);
  for (const char* name : {"edp_x.svg", "edp_x_zoom.svg", "edp_x.json", "edp_x.csv",
                           "edp_y.svg", "edp_y_zoom.svg", "edp_y.json", "edp_y.csv"})
    CHECK(tmp.exists(std::string("out/") + name));

  SUBCASE("format filter") {
    RunConfig lean = cfg;
    lean.out_dir = (tmp.path / "lean").string();
    lean.formats = {"csv"};
    lean.predictors = {"x"};
    std::ostringstream out2;
    CHECK(cmd_edp(lean, out2) == 0);
    CHECK(tmp.exists("lean/edp_x.csv"));
    CHECK_FALSE(tmp.exists("lean/edp_x.svg"));
    CHECK_FALSE(tmp.exists("lean/edp_x.json"));
    CHECK_FALSE(tmp.exists("lean/edp_y.csv"));
  }
  SUBCASE("unknown predictor") {
    cfg.predictors = {"nope"};
    std::ostringstream out2;
    CHECK_THROWS_AS(cmd_edp(cfg, out2), DataError);
  }
  SUBCASE("target as predictor") {
    cfg.predictors = {"cls"};
    std::ostringstream out2;
    CHECK_THROWS_AS(cmd_edp(cfg, out2), DataError);
  }
}

TEST_CASE("cmd_edp honors a bins override file") {
  TempDir tmp("devperf_report");
  RunConfig cfg = base_config(tmp);
  tmp.write("bins.json", R"({"x": [0, 5, 10]})");
  cfg.bins_path = tmp.file("bins.json");
  cfg.predictors = {"x"};
  cfg.formats = {"csv"};
  std::ostringstream out;
  CHECK(cmd_edp(cfg, out) == 0);
  std::string csv = tmp.read("out/edp_x.csv");
  CHECK(csv.find("[0 : 5]") != std::string::npos);
  CHECK(csv.find("]5 : 10]") != std::string::npos);

  tmp.write("bad_bins.json", R"({"ghost": [0, 1]})");
  cfg.bins_path = tmp.file("bad_bins.json");
  std::ostringstream out2;
  CHECK_THROWS_AS(cmd_edp(cfg, out2), ConfigError);
}

TEST_CASE("cmd_rules prints the global CM, query block and rules") {
  TempDir tmp("devperf_report");
  RunConfig cfg = base_config(tmp);
  cfg.mining.minsup = 0.1;
  cfg.mining.alpha = 1.0;
  cfg.query = "y=a";
  std::ostringstream out;
  CHECK(cmd_rules(cfg, out) == 0);
  std::string text = out.str();

  CHECK(text.rfind("CM={ ", 0) == 0);
  CHECK(text.find("query: y=a") != std::string::npos);
  CHECK(text.find("n = ") != std::string::npos);
  CHECK(text.find("Ant sup = ") != std::string::npos);
  CHECK(text.find("pvalue = ") != std::string::npos);
  CHECK(text.find("  <--  ") != std::string::npos);
  CHECK(tmp.exists("out/rules.txt"));
  CHECK(tmp.exists("out/rules.json"));

  SUBCASE("unknown query condition") {
    cfg.query = "ghost=1";
    std::ostringstream out2;
    CHECK_THROWS_AS(cmd_rules(cfg, out2), ConfigError);
  }
  SUBCASE("no rules under a strict alpha") {
    cfg.query.clear();
    cfg.mining.alpha = 1e-12;
    cfg.out_dir = (tmp.path / "strict").string();
    std::ostringstream out2;
    CHECK(cmd_rules(cfg, out2) == 0);
    CHECK(out2.str().find("0 rules") != std::string::npos);
    CHECK(tmp.read("strict/rules.txt").empty());
  }
}

TEST_CASE("cmd_report writes a manifest that matches the artifacts") {
  TempDir tmp("devperf_report");
  RunConfig cfg = base_config(tmp);
  cfg.mining.alpha = 1.0;
  cfg.mining.minsup = 0.1;
  std::ostringstream out;
  CHECK(cmd_report(cfg, out) == 0);
  CHECK(out.str().find("report written to ") != std::string::npos);

  nlohmann::json manifest = nlohmann::json::parse(tmp.read("out/manifest.json"));
  CHECK(manifest["tool"] == "devperf");
  CHECK(manifest["target"] == "cls");
  CHECK(manifest["mode"] == "builtin-cv");
  CHECK(manifest["learner"] == "nb");
  CHECK(manifest["k"] == 4);
  CHECK(manifest["seed"] == 9);
  CHECK(manifest["dataset_hash"].get<std::string>().size() == 16);

  // every step ok: predict + 2 EDPs + rules
  REQUIRE(manifest["steps"].size() == 4);
  for (const auto& s : manifest["steps"]) CHECK(s["status"] == "ok");

  // 2 prediction files + 2 predictors x 4 files + rules.txt/json
  REQUIRE(manifest["artifacts"].size() == 12);
  for (const auto& a : manifest["artifacts"]) {
    std::string rel = a["path"].get<std::string>();
    std::string bytes = tmp.read("out/" + rel);
    CHECK(bytes.size() == a["bytes"].get<size_t>());
    CHECK(a["fnv1a64"].get<std::string>().size() == 16);
  }
}

TEST_CASE("report runs are byte-identical under the same seed") {
  TempDir tmp("devperf_report");
  RunConfig cfg = base_config(tmp);
  cfg.mining.alpha = 1.0;
  std::ostringstream out1;
  CHECK(cmd_report(cfg, out1) == 0);
  nlohmann::json first = nlohmann::json::parse(tmp.read("out/manifest.json"));
  std::string first_rules = tmp.read("out/rules.txt");
  std::string first_svg = tmp.read("out/edp_x.svg");

  std::ostringstream out2;
  CHECK(cmd_report(cfg, out2) == 0);
  nlohmann::json second = nlohmann::json::parse(tmp.read("out/manifest.json"));
  CHECK(first == second);
  CHECK(tmp.read("out/rules.txt") == first_rules);
  CHECK(tmp.read("out/edp_x.svg") == first_svg);

  SUBCASE("a different seed changes the predictions") {
    RunConfig other = cfg;
    other.seed = 123;
    other.out_dir = (tmp.path / "other").string();
    std::ostringstream out3;
    CHECK(cmd_report(other, out3) == 0);
    nlohmann::json third = nlohmann::json::parse(tmp.read("other/manifest.json"));
    CHECK(third["seed"] == 123);
  }
}

TEST_CASE("import mode flows through the whole report") {
  TempDir tmp("devperf_report");
  RunConfig cfg = base_config(tmp);
  cfg.mining.alpha = 1.0;

  // derive a prediction file from a predict run, then re-import it
  std::ostringstream out;
  CHECK(cmd_predict(cfg, out) == 0);
  RunConfig imp = cfg;
  imp.predictions_path = tmp.file("out/predictions.csv");
  imp.out_dir = (tmp.path / "imported").string();
  std::ostringstream out2;
  CHECK(cmd_report(imp, out2) == 0);

  nlohmann::json manifest = nlohmann::json::parse(tmp.read("imported/manifest.json"));
  CHECK(manifest["mode"] == "import");
  CHECK(manifest["learner"] == "imported");
  CHECK(manifest["k"] == 0);

  nlohmann::json side = nlohmann::json::parse(tmp.read("imported/predictions.json"));
  CHECK(side["learner"] == "imported");
  CHECK(side["accuracy"] == nlohmann::json::parse(tmp.read("out/predictions.json"))["accuracy"]);
}

TEST_CASE("missing inputs map to config errors") {
  TempDir tmp("devperf_report");
  RunConfig cfg = base_config(tmp);
  std::ostringstream out;

  SUBCASE("no data path") {
    cfg.data_path.clear();
    CHECK_THROWS_AS(cmd_predict(cfg, out), ConfigError);
  }
  SUBCASE("no target") {
    cfg.target.clear();
    CHECK_THROWS_AS(cmd_predict(cfg, out), ConfigError);
  }
  SUBCASE("unreadable data file") {
    cfg.data_path = tmp.file("ghost.csv");
    CHECK_THROWS_AS(cmd_predict(cfg, out), ConfigError);
  }
  SUBCASE("k too small") {
    cfg.k = 1;
    CHECK_THROWS_AS(cmd_predict(cfg, out), ConfigError);
  }
  SUBCASE("absent target column") {
    cfg.target = "ghost";
    CHECK_THROWS_AS(cmd_predict(cfg, out), DataError);
  }
}
