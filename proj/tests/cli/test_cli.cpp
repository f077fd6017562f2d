#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include <doctest.h>

#include "../support/temp_dir.hpp"

// End-to-end runs of the installed binary. DEVPERF_CLI_PATH and
// DEVPERF_TEST_DATA_DIR come from the build.

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr interleaved
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + std::string(DEVPERF_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string iris_csv() { return std::string(DEVPERF_TEST_DATA_DIR) + "/iris.csv"; }

}  // namespace

TEST_CASE("predict prints a CM line and an accuracy line") {
  TempDir tmp("devperf_cli");
  RunResult r = run_cli("predict --data " + iris_csv() + " --target Species --k 10 --seed 1 --out " +
                        tmp.file("out"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("CM={ 0/") != std::string::npos);
  CHECK(r.output.find("accuracy = 0.9") != std::string::npos);
  CHECK(r.output.find("(n = 150)") != std::string::npos);
  CHECK(tmp.exists("out/predictions.csv"));
  CHECK(tmp.exists("out/predictions.json"));
}

TEST_CASE("the seed falls back to the environment") {
  TempDir tmp("devperf_cli");
  std::string base = "predict --data " + iris_csv() + " --target Species --k 10 --out ";
  RunResult via_flag = run_cli(base + tmp.file("a") + " --seed 77");
  RunResult via_env = run_cli(base + tmp.file("b"), "DEVPERF_SEED=77");
  CHECK(via_flag.exit_code == 0);
  CHECK(via_env.exit_code == 0);
  CHECK(tmp.read("a/predictions.csv") == tmp.read("b/predictions.csv"));
}

TEST_CASE("rules supports ad hoc subgroup queries") {
  TempDir tmp("devperf_cli");
  std::string data = std::string(DEVPERF_TEST_DATA_DIR) + "/breastcancer.csv";
  RunResult r = run_cli("rules --data " + data + " --target Class --k 10 --seed 1 --out " +
                        tmp.file("out") + " --query \"Bare.nuclei=1 & Normal.nucleoli=1\"");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("query: Bare.nuclei=1 & Normal.nucleoli=1") != std::string::npos);
  CHECK(r.output.find("n = 360  Ant sup = 0.51502  pvalue = ") != std::string::npos);
  CHECK(r.output.find("CM={ 0/1.000 }") != std::string::npos);
  CHECK(tmp.exists("out/rules.txt"));
  CHECK(tmp.exists("out/rules.json"));
}

TEST_CASE("report is reproducible and its exit code reflects step status") {
  TempDir tmp("devperf_cli");
  std::string args = "report --data " + iris_csv() +
                     " --target Species --k 10 --seed 5 --alpha 0.05 --out ";
  RunResult r1 = run_cli(args + tmp.file("a"));
  RunResult r2 = run_cli(args + tmp.file("b"));
  CHECK(r1.exit_code == 0);
  CHECK(r2.exit_code == 0);
  CHECK(tmp.read("a/manifest.json") == tmp.read("b/manifest.json"));
  CHECK(tmp.read("a/rules.txt") == tmp.read("b/rules.txt"));
  CHECK(tmp.read("a/edp_Petal.Width.svg") == tmp.read("b/edp_Petal.Width.svg"));
}

TEST_CASE("config problems exit with code 2") {
  TempDir tmp("devperf_cli");

  SUBCASE("k below 2") {
    RunResult r = run_cli("predict --data " + iris_csv() + " --target Species --k 1 --out " +
                          tmp.file("out"));
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("k must be") != std::string::npos);
  }
  SUBCASE("unknown learner is rejected at parse time") {
    RunResult r = run_cli("predict --data " + iris_csv() +
                          " --target Species --learner svm --out " + tmp.file("out"));
    CHECK(r.exit_code == 2);
  }
  SUBCASE("missing dataset file") {
    RunResult r = run_cli("predict --data /nonexistent.csv --target Species --out " +
                          tmp.file("out"));
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("config error:") != std::string::npos);
  }
  SUBCASE("unknown flag") {
    RunResult r = run_cli("predict --data " + iris_csv() + " --target Species --frobnicate");
    CHECK(r.exit_code == 2);
  }
  SUBCASE("no subcommand") {
    RunResult r = run_cli("--data " + iris_csv());
    CHECK(r.exit_code == 2);
  }
}

TEST_CASE("data problems exit with code 3") {
  TempDir tmp("devperf_cli");

  SUBCASE("unknown predictor") {
    RunResult r = run_cli("edp --data " + iris_csv() +
                          " --target Species --predictors Ghost --out " + tmp.file("out"));
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("data error:") != std::string::npos);
  }
  SUBCASE("target used as predictor") {
    RunResult r = run_cli("edp --data " + iris_csv() +
                          " --target Species --predictors Species --out " + tmp.file("out"));
    CHECK(r.exit_code == 3);
  }
  SUBCASE("absent target column") {
    RunResult r = run_cli("predict --data " + iris_csv() + " --target Ghost --out " +
                          tmp.file("out"));
    CHECK(r.exit_code == 3);
  }
}

TEST_CASE("help exits cleanly") {
  RunResult r = run_cli("--help");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("report") != std::string::npos);
}
