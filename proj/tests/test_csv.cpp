#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "decon2d/csv.hpp"
#include "decon2d/rng.hpp"

using Catch::Approx;
using namespace decon2d;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("decon2d_csv_" + std::to_string(std::rand()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const char* name) const { return (path / name).string(); }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("double formatting round-trips exactly", "[csv]") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-1.0) == "-1");
  CHECK(parse_double("0.1") == 0.1);
  CHECK(parse_double("-2.5e-3") == -2.5e-3);

  CounterRng rng(CounterRng::derive_key(3, 0));
  for (int t = 0; t < 1000; ++t) {
    const double v = (rng.next_uniform() - 0.5) *
                     std::pow(10.0, 20.0 * (rng.next_uniform() - 0.5));
    REQUIRE(parse_double(format_double(v)) == v);
  }
  CHECK_THROWS_AS(parse_double("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_double("1.5x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_double(""), std::invalid_argument);
}

TEST_CASE("sample files round-trip", "[csv]") {
  TempDir dir;
  PairedSample sample;
  CounterRng rng(CounterRng::derive_key(5, 0));
  for (int k = 0; k < 100; ++k) {
    sample.y.push_back({rng.next_uniform(), rng.next_uniform()});
    sample.x.push_back({sample.y.back().x1 + rng.next_uniform(),
                        sample.y.back().x2 + rng.next_uniform()});
  }

  const std::string plain = dir.file("plain.csv");
  write_sample_csv(plain, sample, false);
  const Sample2D back = read_points_csv(plain);
  REQUIRE(back.size() == sample.x.size());
  for (std::size_t k = 0; k < back.size(); ++k) {
    REQUIRE(back[k].x1 == sample.x[k].x1);
    REQUIRE(back[k].x2 == sample.x[k].x2);
  }

  // the truth columns are extra columns and must not disturb reading
  const std::string with_truth = dir.file("truth.csv");
  write_sample_csv(with_truth, sample, true);
  const std::string header = read_text(with_truth).substr(0, 11);
  CHECK(header == "x1,x2,y1,y2");
  const Sample2D back2 = read_points_csv(with_truth);
  for (std::size_t k = 0; k < back2.size(); ++k)
    REQUIRE(back2[k].x1 == sample.x[k].x1);

  const std::string pts = dir.file("pts.csv");
  write_points_csv(pts, sample.y);
  const Sample2D back3 = read_points_csv(pts);
  for (std::size_t k = 0; k < back3.size(); ++k)
    REQUIRE(back3[k].x2 == sample.y[k].x2);
}

TEST_CASE("reader errors carry the line number", "[csv]") {
  TempDir dir;
  const std::string path = dir.file("bad.csv");

  write_text(path, "x1,x2\n0.5,0.5\noops,0.5\n");
  try {
    read_points_csv(path);
    FAIL("expected a parse error");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find(path) != std::string::npos);
    CHECK(msg.find(":3") != std::string::npos);
  }

  write_text(path, "x1,x2\n0.5\n");
  CHECK_THROWS_WITH(read_points_csv(path),
                    Catch::Matchers::ContainsSubstring(":2"));

  write_text(path, "a,b\n1,2\n");
  CHECK_THROWS(read_points_csv(path));

  write_text(path, "x1,x2\n");
  CHECK_THROWS_WITH(read_points_csv(path),
                    Catch::Matchers::ContainsSubstring("no data"));

  CHECK_THROWS(read_points_csv(dir.file("missing.csv")));
}

TEST_CASE("censored files round-trip and validate", "[csv]") {
  TempDir dir;
  std::vector<CensoredRow> rows{{0.25, 0.75, 1}, {0.1, 0.2, 3}, {0.9, 0.4, 4}};
  const std::string path = dir.file("cens.csv");
  write_censored_csv(path, rows);
  const auto back = read_censored_csv(path);
  REQUIRE(back.size() == rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    REQUIRE(back[k].t1 == rows[k].t1);
    REQUIRE(back[k].t2 == rows[k].t2);
    REQUIRE(back[k].delta == rows[k].delta);
  }

  write_text(path, "t1,t2,delta\n0.5,0.5,7\n");
  CHECK_THROWS_WITH(read_censored_csv(path),
                    Catch::Matchers::ContainsSubstring(":2"));
  write_text(path, "t1,t2,delta\n");
  CHECK_THROWS_WITH(read_censored_csv(path),
                    Catch::Matchers::ContainsSubstring("no data"));
}

TEST_CASE("grid files are long-format and axis-1 major", "[csv]") {
  TempDir dir;
  GridResult r;
  r.spec = GridSpec{0.0, 1.0, 2};
  r.nodes = 3;
  r.values = {1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0};
  const std::string path = dir.file("grid.csv");
  write_grid_csv(path, r);
  const std::string text = read_text(path);
  CHECK(text ==
        "x1,x2,value\n"
        "0,0,1\n0,0.5,2\n0,1,3\n"
        "0.5,0,4\n0.5,0.5,5\n0.5,1,6\n"
        "1,0,7\n1,0.5,8\n1,1,9\n");
}
