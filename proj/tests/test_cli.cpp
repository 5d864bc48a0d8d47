#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string kCli = FIRECAL_CLI_PATH;
const fs::path kData = FIRECAL_TEST_DATA;

struct RunResult {
  int code = -1;
  std::string output;
};

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("firecal-cli-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

RunResult run(const std::string& args, const fs::path& capture) {
  const std::string cmd = kCli + " " + args + " > " + capture.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = WEXITSTATUS(raw);
  std::ifstream in(capture);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.output = buf.str();
  return r;
}

std::string five_inputs() {
  return "--grid " + (kData / "five" / "fuel_grid.asc").string() +
         " --fuels " + (kData / "five" / "fuels.csv").string() +
         " --weather " + (kData / "five" / "weather.csv").string() +
         " --ignition " + (kData / "five" / "ignition.csv").string();
}

std::string multi8_inputs() {
  return "--grid " + (kData / "multi8" / "fuel_grid.asc").string() +
         " --fuels " + (kData / "multi8" / "fuels.csv").string() +
         " --weather " + (kData / "multi8" / "weather.csv").string() +
         " --ignition " + (kData / "multi8" / "ignition.csv").string();
}

}  // namespace

TEST_CASE("simulate writes one grid per report period plus a manifest") {
  TempDir tmp;
  const fs::path out = tmp.path / "sim";
  const RunResult r = run("simulate " + five_inputs() +
                              " --horizon 7 --report-every 1 --out " + out.string(),
                          tmp.path / "log.txt");
  REQUIRE(r.code == 0);
  for (int t = 1; t <= 7; ++t) {
    char name[32];
    std::snprintf(name, sizeof(name), "scar_%04d.asc", t);
    CHECK(fs::exists(out / name));
  }
  REQUIRE(fs::exists(out / "manifest.json"));
  const json manifest = json::parse(std::ifstream(out / "manifest.json"));
  CHECK(manifest.at("command") == "simulate");
  CHECK(manifest.at("outputs").size() == 7);
  CHECK(manifest.at("parameters").at("dt") == 1.0);
}

TEST_CASE("simulate --render also writes graymaps") {
  TempDir tmp;
  const fs::path out = tmp.path / "sim";
  const RunResult r = run("simulate " + five_inputs() +
                              " --horizon 3 --report-every 1 --render --out " + out.string(),
                          tmp.path / "log.txt");
  REQUIRE(r.code == 0);
  CHECK(fs::exists(out / "scar_0001.pgm"));
  CHECK(fs::exists(out / "scar_0003.pgm"));
}

TEST_CASE("compare of a grid with itself reports zero error and ssim 1") {
  TempDir tmp;
  const fs::path out = tmp.path / "sim";
  REQUIRE(run("simulate " + five_inputs() + " --horizon 2 --report-every 1 --out " +
                  out.string(),
              tmp.path / "log.txt")
              .code == 0);

  const RunResult r = run("compare --a " + (out / "scar_0002.asc").string() + " --b " +
                              (out / "scar_0002.asc").string() + " --format json",
                          tmp.path / "cmp.txt");
  REQUIRE(r.code == 0);
  const json metrics = json::parse(r.output);
  CHECK(metrics.at("mse") == 0.0);
  CHECK(metrics.at("ssim") == 1.0);
  CHECK(metrics.at("frobenius") == 0.0);
  CHECK(metrics.at("hamming") == 0);
}

TEST_CASE("compare supports csv output and the windowed ssim flag") {
  TempDir tmp;
  const fs::path out = tmp.path / "sim";
  REQUIRE(run("simulate " + five_inputs() + " --horizon 2 --report-every 1 --out " +
                  out.string(),
              tmp.path / "log.txt")
              .code == 0);
  const RunResult r = run("compare --a " + (out / "scar_0001.asc").string() + " --b " +
                              (out / "scar_0002.asc").string() + " --windowed-ssim",
                          tmp.path / "cmp.txt");
  REQUIRE(r.code == 0);
  CHECK(r.output.find("frobenius") != std::string::npos);
  CHECK(r.output.find("ssim_windowed") != std::string::npos);
}

TEST_CASE("fms calibration emits 32 fitted values on the eight-fuel fixture") {
  TempDir tmp;
  const fs::path target = tmp.path / "target";
  // build observed scars with a known factor file, then calibrate against them
  std::ofstream factors(tmp.path / "hidden.json");
  factors << R"({"mode": "global", "factors": [1.3, 1.0, 1.2, 1.1]})";
  factors.close();
  REQUIRE(run("simulate " + multi8_inputs() + " --horizon 420 --report-every 60" +
                  " --factors-file " + (tmp.path / "hidden.json").string() + " --out " +
                  target.string(),
              tmp.path / "log.txt")
              .code == 0);

  const fs::path out = tmp.path / "cal";
  const RunResult r = run("calibrate " + multi8_inputs() + " --observed " + target.string() +
                              " --mode fms --algorithm pattern-search --max-evals 40 --out " +
                              out.string(),
                          tmp.path / "cal.txt");
  REQUIRE(r.code == 0);
  const json result = json::parse(std::ifstream(out / "result.json"));
  CHECK(result.at("x_star").at("mode") == "fms");
  const auto& per_fuel = result.at("x_star").at("per_fuel");
  CHECK(per_fuel.size() == 8);
  int values = 0;
  for (const auto& [_, tuple] : per_fuel.items()) {
    values += static_cast<int>(tuple.size());
  }
  CHECK(values == 32);
  CHECK(result.at("final_error").get<double>() <= result.at("initial_error").get<double>());
  CHECK(fs::exists(out / "trace.csv"));
  CHECK(fs::exists(out / "manifest.json"));
}

TEST_CASE("realtime emits per-step results") {
  TempDir tmp;
  const fs::path target = tmp.path / "target";
  REQUIRE(run("simulate " + five_inputs() +
                  " --horizon 3 --report-every 1 --factors 1.5,1,1,1 --out " + target.string(),
              tmp.path / "log.txt")
              .code == 0);
  const fs::path out = tmp.path / "rt";
  const RunResult r = run("realtime " + five_inputs() + " --observed " + target.string() +
                              " --algorithm pattern-search --max-evals 15 --dt 1 --out " +
                              out.string(),
                          tmp.path / "rt.txt");
  REQUIRE(r.code == 0);
  const json rt = json::parse(std::ifstream(out / "realtime.json"));
  REQUIRE(rt.at("steps").size() == 3);
  for (const auto& step : rt.at("steps")) {
    CHECK(step.at("final_error").get<double>() <=
          step.at("initial_error").get<double>() + 1e-12);
  }
}

TEST_CASE("benchmark writes the NEVAL/RUNTIME/MinValue table") {
  TempDir tmp;
  const fs::path target = tmp.path / "target";
  REQUIRE(run("simulate " + five_inputs() +
                  " --horizon 3 --report-every 1 --factors 1.5,1,1,1 --out " + target.string(),
              tmp.path / "log.txt")
              .code == 0);
  const fs::path out = tmp.path / "bench";
  const RunResult r = run("benchmark " + five_inputs() + " --observed " + target.string() +
                              " --max-evals 25 --dt 1 --out " + out.string(),
                          tmp.path / "bench.txt");
  REQUIRE(r.code == 0);
  std::ifstream csv(out / "benchmark.csv");
  std::string line;
  std::getline(csv, line);
  CHECK(line == "algorithm,neval,runtime_min,min_value,initial_value");
  int rows = 0;
  while (std::getline(csv, line)) {
    rows += !line.empty();
  }
  CHECK(rows == 3);
}

TEST_CASE("validation failures exit with code 1") {
  TempDir tmp;
  SECTION("missing input file") {
    const RunResult r = run("simulate --grid nope.asc --fuels nope.csv --weather nope.csv" +
                                std::string(" --ign-row 0 --ign-col 0 --out ") +
                                (tmp.path / "out").string(),
                            tmp.path / "log.txt");
    CHECK(r.code == 1);
  }
  SECTION("unknown flag") {
    const RunResult r = run("simulate --definitely-not-a-flag", tmp.path / "log.txt");
    CHECK(r.code == 1);
  }
  SECTION("unknown subcommand") {
    const RunResult r = run("frobnicate", tmp.path / "log.txt");
    CHECK(r.code == 1);
  }
  SECTION("incompatible grid dimensions") {
    // observed scars from the 5x5 fixture against the 24x24 landscape
    const fs::path target = tmp.path / "target";
    REQUIRE(run("simulate " + five_inputs() + " --horizon 3 --report-every 1 --out " +
                    target.string(),
                tmp.path / "log.txt")
                .code == 0);
    const RunResult r = run("calibrate " + multi8_inputs() + " --observed " +
                                target.string() + " --max-evals 5 --out " +
                                (tmp.path / "cal").string(),
                            tmp.path / "cal.txt");
    CHECK(r.code == 1);
  }
}

TEST_CASE("help exits cleanly") {
  TempDir tmp;
  CHECK(run("--help", tmp.path / "help.txt").code == 0);
  CHECK(run("simulate --help", tmp.path / "help.txt").code == 0);
}
