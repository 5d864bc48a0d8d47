#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "firecal/raster_io.hpp"

using namespace firecal;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("firecal-io-" + std::to_string(Catch::rngSeed()) + "-" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_CASE("load_landscape reads the smallest valid input") {
  TempDir dir;
  write_file(dir.path / "grid.asc",
             "ncols 2\nnrows 2\ncellsize 100\nNODATA_value -9999\n1 1\n1 1\n");
  write_file(dir.path / "fuels.csv", "id,name,hros_ref,bros_ref,lb_ref\n1,grass,10,2,2.0\n");
  const Landscape land = load_landscape(dir.path / "grid.asc", dir.path / "fuels.csv");
  CHECK(land.rows() == 2);
  CHECK(land.cols() == 2);
  CHECK(land.cell_size == 100.0);
  CHECK(land.fuel_table.at(1).hros_ref == 10.0);
  CHECK(land.fuel_ids() == std::vector<int>{1});
}

TEST_CASE("load_landscape maps NODATA to non-fuel and validates codes") {
  TempDir dir;
  write_file(dir.path / "grid.asc",
             "ncols 3\nnrows 1\ncellsize 50\nNODATA_value -9999\n1 -9999 0\n");
  write_file(dir.path / "fuels.csv", "id,name,hros_ref,bros_ref,lb_ref\n1,grass,10,2,2.0\n");
  const Landscape land = load_landscape(dir.path / "grid.asc", dir.path / "fuels.csv");
  CHECK(land.fuel_codes(0, 0) == 1);
  CHECK(land.fuel_codes(0, 1) == 0);
  CHECK(land.fuel_codes(0, 2) == 0);

  SECTION("unknown fuel code") {
    write_file(dir.path / "bad.asc",
               "ncols 1\nnrows 1\ncellsize 50\nNODATA_value -9999\n7\n");
    CHECK_THROWS_WITH(load_landscape(dir.path / "bad.asc", dir.path / "fuels.csv"),
                      Catch::Matchers::ContainsSubstring("unknown fuel code"));
  }
  SECTION("dimension mismatch between header and body") {
    write_file(dir.path / "short.asc",
               "ncols 3\nnrows 2\ncellsize 50\nNODATA_value -9999\n1 1 1\n");
    CHECK_THROWS_AS(load_landscape(dir.path / "short.asc", dir.path / "fuels.csv"), IoError);
  }
  SECTION("missing file") {
    CHECK_THROWS_AS(load_landscape(dir.path / "nope.asc", dir.path / "fuels.csv"), IoError);
  }
  SECTION("lb_ref below one") {
    write_file(dir.path / "badfuel.csv", "id,name,hros_ref,bros_ref,lb_ref\n1,g,10,2,0.5\n");
    CHECK_THROWS(load_landscape(dir.path / "grid.asc", dir.path / "badfuel.csv"));
  }
}

TEST_CASE("load_landscape counts a 20x20 homogeneous grid") {
  TempDir dir;
  std::string body;
  for (int r = 0; r < 20; ++r) {
    for (int c = 0; c < 20; ++c) {
      body += c + 1 == 20 ? "1\n" : "1 ";
    }
  }
  write_file(dir.path / "grid.asc",
             "ncols 20\nnrows 20\ncellsize 100\nNODATA_value -9999\n" + body);
  write_file(dir.path / "fuels.csv", "id,name,hros_ref,bros_ref,lb_ref\n1,grass,10,2,2.0\n");
  const Landscape land = load_landscape(dir.path / "grid.asc", dir.path / "fuels.csv");
  CHECK(land.fuel_codes.size() == 400);
}

TEST_CASE("landscape raster round-trips bit-exactly") {
  TempDir dir;
  Landscape land;
  land.fuel_codes = FuelGrid(3, 4, 0);
  land.fuel_codes(0, 0) = 1;
  land.fuel_codes(1, 2) = 2;
  land.fuel_codes(2, 3) = 1;
  land.cell_size = 25.0;
  land.fuel_table[1] = FuelParams{"a", 5.0, 1.0, 1.5};
  land.fuel_table[2] = FuelParams{"b", 8.0, 2.0, 2.0};
  write_landscape_grid(land, dir.path / "grid.asc");
  const AsciiGrid raw = read_ascii_grid(dir.path / "grid.asc");
  CHECK(raw.rows == 3);
  CHECK(raw.cols == 4);
  CHECK(raw.cellsize == 25.0);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 4; ++c) {
      CHECK(raw.values[r * 4 + c] == land.fuel_codes(r, c));
    }
  }
}

TEST_CASE("load_weather parses records and the reference wind directive") {
  TempDir dir;
  SECTION("single record") {
    write_file(dir.path / "w.csv", "wind_speed,wind_heading,duration\n10,90,420\n");
    const WeatherStream w = load_weather(dir.path / "w.csv");
    REQUIRE(w.records.size() == 1);
    CHECK(w.records[0].wind_speed == 10.0);
    CHECK(w.records[0].wind_heading == 90.0);
    CHECK(w.records[0].duration == 420.0);
    CHECK(w.reference_wind == 10.0);
    CHECK(w.total_duration() == 420.0);
  }
  SECTION("seven hourly records with a reference directive") {
    std::string text = "# reference_wind 12.5\nwind_speed,wind_heading,duration\n";
    for (int i = 0; i < 7; ++i) {
      text += std::to_string(8 + i) + ",45,60\n";
    }
    write_file(dir.path / "w.csv", text);
    const WeatherStream w = load_weather(dir.path / "w.csv");
    CHECK(w.records.size() == 7);
    CHECK(w.total_duration() == 420.0);
    CHECK(w.reference_wind == 12.5);
  }
  SECTION("heading 360 is rejected: the interval is half-open") {
    write_file(dir.path / "w.csv", "wind_speed,wind_heading,duration\n10,360,60\n");
    CHECK_THROWS(load_weather(dir.path / "w.csv"));
  }
  SECTION("negative speed is rejected") {
    write_file(dir.path / "w.csv", "wind_speed,wind_heading,duration\n-1,0,60\n");
    CHECK_THROWS(load_weather(dir.path / "w.csv"));
  }
  SECTION("empty file is rejected") {
    write_file(dir.path / "w.csv", "");
    CHECK_THROWS(load_weather(dir.path / "w.csv"));
  }
  SECTION("round trip") {
    WeatherStream w;
    w.reference_wind = 9.0;
    w.records = {WeatherRecord{10.0, 45.0, 60.0}, WeatherRecord{12.0, 90.0, 120.0}};
    write_weather(w, dir.path / "w.csv");
    CHECK(load_weather(dir.path / "w.csv") == w);
  }
}

TEST_CASE("burn grids round-trip bit-exactly") {
  TempDir dir;
  BurnGrid grid(5, 5, 0);
  grid(2, 2) = 1;
  grid(0, 4) = 1;
  grid(4, 0) = 1;
  write_burn_grid(grid, dir.path / "scar.asc");
  CHECK(load_burn_grid(dir.path / "scar.asc") == grid);
}

TEST_CASE("load_scars builds a series and rejects bad input") {
  TempDir dir;
  std::vector<fs::path> paths;
  std::vector<double> timestamps;
  for (int t = 1; t <= 7; ++t) {
    BurnGrid grid(3, 3, 0);
    for (int k = 0; k < t && k < 9; ++k) {
      grid(k / 3, k % 3) = 1;
    }
    const fs::path p = dir.path / ("scar_" + std::to_string(t) + ".asc");
    write_burn_grid(grid, p);
    paths.push_back(p);
    timestamps.push_back(60.0 * t);
  }
  const ScarSeries series = load_scars(paths, timestamps);
  CHECK(series.size() == 7);
  CHECK(series.timestamps.front() == 60.0);
  CHECK(series.timestamps.back() == 420.0);

  SECTION("non-binary entry") {
    write_file(dir.path / "bad.asc", "ncols 1\nnrows 1\ncellsize 100\nNODATA_value -9999\n2\n");
    CHECK_THROWS_WITH(load_burn_grid(dir.path / "bad.asc"),
                      Catch::Matchers::ContainsSubstring("non-binary"));
  }
  SECTION("dimension mismatch across the series") {
    write_burn_grid(BurnGrid(2, 2, 0), dir.path / "odd.asc");
    paths[3] = dir.path / "odd.asc";
    CHECK_THROWS_AS(load_scars(paths, timestamps), IoError);
  }
}

TEST_CASE("ignition specs round-trip") {
  TempDir dir;
  const IgnitionSpec ign{7, 3, 30.0};
  write_ignition(ign, dir.path / "ign.csv");
  CHECK(load_ignition(dir.path / "ign.csv") == ign);
  write_file(dir.path / "bad.csv", "row,col,start_time\n1,2,-5\n");
  CHECK_THROWS(load_ignition(dir.path / "bad.csv"));
}

TEST_CASE("pgm render writes a readable graymap") {
  TempDir dir;
  BurnGrid grid(2, 3, 0);
  grid(0, 0) = 1;
  write_burn_grid_pgm(grid, dir.path / "scar.pgm");
  std::ifstream in(dir.path / "scar.pgm");
  std::string magic;
  int w = 0, h = 0, maxval = 0, first = -1;
  in >> magic >> w >> h >> maxval >> first;
  CHECK(magic == "P2");
  CHECK(w == 3);
  CHECK(h == 2);
  CHECK(maxval == 255);
  CHECK(first == 0);
}
