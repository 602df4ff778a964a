// Copyright 2026 The matw Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "matw/error.hpp"
#include "matw/io.hpp"
#include "matw/sweep.hpp"
#include "test_util.hpp"

using namespace matw;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> crlf_lines(const std::string& text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = text.find("\r\n", pos);
    REQUIRE(end != std::string::npos);
    out.push_back(text.substr(pos, end - pos));
    pos = end + 2;
  }
  return out;
}

ExperimentConfig golden_config() {
  ExperimentConfig c;
  c.kind = WeightKind::kRandomLogPd;
  c.dim = 2;
  c.depth = 5;
  c.parameters = {0.5, 1.5};
  c.seeds = {3, 1};
  c.threads = 2;
  return c;
}

}  // namespace

TEST_CASE("empty sweep CSV is header plus footer") {
  SweepSummary s;
  s.slope = std::nan("");
  s.config_hash = "0123456789abcdef";
  const auto lines = crlf_lines(to_csv(s));
  REQUIRE(lines.size() == 8);
  CHECK(lines[0] == csv_header());
  CHECK(lines[1] == "# slope=undefined");
  for (std::size_t i = 1; i < lines.size(); ++i) CHECK(lines[i].rfind("# ", 0) == 0);
  CHECK(lines[6] == "# config_hash=0123456789abcdef");
  CHECK(lines[7] == std::string("# version=") + kVersion);
}

TEST_CASE("one record gives two data lines plus footer, with quoting") {
  SweepSummary s;
  SweepRecord r;
  r.t = 0.5;
  r.seed = 7;
  r.error = "bad, \"quoted\" value";
  s.records.push_back(r);
  s.slope = std::nan("");
  const auto lines = crlf_lines(to_csv(s));
  REQUIRE(lines.size() == 9);
  CHECK(lines[1].rfind("0.5,7,", 0) == 0);
  CHECK(lines[1].find(",\"bad, \"\"quoted\"\" value\"") != std::string::npos);
  CHECK(lines[2].rfind("# ", 0) == 0);
}

TEST_CASE("header columns") {
  CHECK(csv_header() ==
        "t,seed,a2,ainfty_inv,ainfty_directions,a2_inv,opnorm_sq_est,opnorm_sq_lower,iters,converged,"
        "domination_rhs,domination_ok,min_e_ratio,ratio_mixed,ratio_linear,ainfty_over_a2,monitor_flag,error");
}

TEST_CASE("identity sweep: unit characteristics and undefined slope") {
  ExperimentConfig c;
  c.kind = WeightKind::kIdentity;
  c.dim = 2;
  c.depth = 6;
  c.parameters = {0.0, 0.5};
  c.seeds = {1, 2};
  const SweepSummary s = run_sweep(c);
  REQUIRE(s.records.size() == 4);
  for (const SweepRecord& r : s.records) {
    CHECK(r.error.empty());
    CHECK(r.a2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.opnorm_sq_est == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.domination_ok);
  }
  CHECK(std::isnan(s.slope));
  CHECK(to_csv(s).find("# slope=undefined\r\n") != std::string::npos);
  CHECK(s.all_ok);
}

TEST_CASE("sweep records are sorted and satisfy the witness chain") {
  const ExperimentConfig c = golden_config();
  const SweepSummary s = run_sweep(c);
  REQUIRE(s.records.size() == 4);
  CHECK(s.records[0].t == 0.5);
  CHECK(s.records[0].seed == 1);
  CHECK(s.records[1].seed == 3);
  CHECK(s.records[3].t == 1.5);
  for (const SweepRecord& r : s.records) {
    CHECK(r.error.empty());
    CHECK(r.converged);
    CHECK(r.opnorm_sq_lower <= r.opnorm_sq_est * (1.0 + c.rel_tol));
    CHECK(r.opnorm_sq_lower <= r.domination_rhs);
    CHECK(r.domination_ok);
    CHECK(r.min_e_ratio >= 0.5);
    CHECK(std::isfinite(r.ratio_mixed));
    CHECK(r.ainfty_inv >= 1.0);
  }
  // Thread count does not change the output.
  ExperimentConfig serial = c;
  serial.threads = 1;
  CHECK(to_csv(run_sweep(serial)) == to_csv(s));
}

TEST_CASE("A2 is nondecreasing in t for the scalar power family") {
  double prev = 0.0;
  for (int k = 0; k <= 9; ++k) {
    const double t = 0.1 * k;
    const double a2 = a2_characteristic(generate_weight({WeightKind::kScalarPower, 1, 10, t, 0}));
    CHECK(a2 >= prev);
    prev = a2;
  }
}

TEST_CASE("log-log slope of exact power laws") {
  std::vector<SweepRecord> rs(3);
  for (int i = 0; i < 3; ++i) {
    rs[static_cast<std::size_t>(i)].a2 = std::exp(i);
    rs[static_cast<std::size_t>(i)].opnorm_sq_est = std::exp(1.6 * i);  // norm = a2^0.8
  }
  int points = 0;
  CHECK(loglog_slope(rs, &points) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(points == 3);
  rs[1].error = "x";
  CHECK(loglog_slope(rs, &points) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(points == 2);
}

TEST_CASE("golden sweep CSV") {
  const std::string path = std::string(MATW_TEST_DATA_DIR) + "/golden_sweep.csv";
  const std::string csv = to_csv(run_sweep(golden_config()));
  if (std::getenv("MATW_UPDATE_GOLDEN")) {
    write_text_file(path, csv);
  }
  REQUIRE(std::filesystem::exists(path));
  CHECK(read_file(path) == csv);
}

TEST_CASE("config validation") {
  ExperimentConfig c = golden_config();
  c.parameters.clear();
  CHECK_THROWS_AS(c.validate(), Error);
  c = golden_config();
  c.rel_tol = 1e-2;
  CHECK_THROWS_AS(c.validate(), Error);
  c = golden_config();
  c.n_directions = 3;
  CHECK_THROWS_AS(c.validate(), Error);
  c = golden_config();
  c.kind = WeightKind::kScalarPower;
  c.parameters = {1.0};
  CHECK_THROWS_AS(c.validate(), Error);
  CHECK(config_hash(golden_config()) == config_hash(golden_config()));
  ExperimentConfig other = golden_config();
  other.depth = 6;
  CHECK(config_hash(other) != config_hash(golden_config()));
}

TEST_CASE("JSON round trips") {
  const MatrixWeight w = testing::random_weight(4, 3, 8, 1.5);
  const MatrixWeight back = weight_from_json(Json::parse(dump(to_json(w))));
  for (std::size_t leaf = 0; leaf < w.field().cells(); ++leaf)
    CHECK((back.field()[leaf] - w.field()[leaf]).max_abs() == 0.0);
  CHECK(back.metadata().kind == "random_log_pd");
  CHECK(back.metadata().seed == 8);

  const GridVector f = testing::random_function(5, 2, 4);
  const GridVector fb = grid_vector_from_json(Json::parse(dump(to_json(f))));
  CHECK(std::equal(f.flat().begin(), f.flat().end(), fb.flat().begin(), fb.flat().end()));

  const ExperimentConfig c = golden_config();
  const ExperimentConfig cb = experiment_config_from_json(to_json(c));
  CHECK(to_json(cb) == to_json(c));

  StoppingConfig sc = StoppingConfig::defaults(3);
  sc.c2 = 99.5;
  CHECK(to_json(stopping_config_from_json(to_json(sc), 3)) == to_json(sc));
}

TEST_CASE("malformed JSON is reported as a parse error") {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInternal;
  };
  CHECK(code_of([] { grid_vector_from_json(Json::parse(R"({"depth":1,"dim":1,"values":[[1]]})")); }) ==
        ErrorCode::kParse);
  CHECK(code_of([] { grid_vector_from_json(Json::parse(R"({"dim":1,"values":[[1],[2]]})")); }) == ErrorCode::kParse);
  CHECK(code_of([] { experiment_config_from_json(Json::parse(R"({"kind":"nope","parameters":[0.1]})")); }) !=
        ErrorCode::kInternal);
  CHECK(code_of([] { read_json_file("/nonexistent/file.json"); }) == ErrorCode::kIo);
}
