#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "klhc/sweep.hpp"

using namespace klhc;

namespace {

struct TempFile {
  std::string path;
  TempFile() {
    static std::mt19937_64 rng(std::random_device{}());
    path = (std::filesystem::temp_directory_path() /
            ("klhc_sweep_" + std::to_string(rng()) + ".tmp"))
               .string();
  }
  ~TempFile() { std::remove(path.c_str()); }
};

size_t lines(const std::string& s) {
  return size_t(std::count(s.begin(), s.end(), '\n'));
}

std::string last_line(const std::string& s) {
  size_t end = s.size();
  while (end > 0 && s[end - 1] == '\n') --end;
  size_t start = s.rfind('\n', end - 1);
  start = (start == std::string::npos) ? 0 : start + 1;
  return s.substr(start, end - start);
}

}  // namespace

TEST_CASE("exhaustive theorem sweep over small windows") {
  SweepConfig cfg;
  cfg.mode = "theorem";
  cfg.deterministic = true;

  cfg.n = 2;
  std::ostringstream o2;
  SweepSummary s2 = run_sweep(cfg, o2);
  CHECK(s2.tasks == 1);
  CHECK(s2.records == 1);
  CHECK(s2.passed == 1);

  cfg.n = 3;
  std::ostringstream o3;
  SweepSummary s3 = run_sweep(cfg, o3);
  CHECK(s3.tasks == 13);
  CHECK(s3.passed == 13);

  cfg.n = 4;
  std::ostringstream o4;
  SweepSummary s4 = run_sweep(cfg, o4);
  CHECK(s4.tasks == 189);
  CHECK(s4.records == 189);
  CHECK(s4.passed == 189);
  CHECK(s4.failed == 0);
  CHECK(s4.errors == 0);
  CHECK(s4.mismatched == 0);
  CHECK(s4.gamma_negative == 0);
  CHECK(s4.q_negative == 0);
  CHECK(s4.ok());

  const std::string text = o4.str();
  CHECK(lines(text) == 190);  // one record per pair plus the summary
  CHECK(text.find("\"pass\":false") == std::string::npos);
  CHECK(last_line(text).find("\"summary\":true") != std::string::npos);
}

TEST_CASE("conjecture sweep checks every decomposition") {
  SweepConfig cfg;
  cfg.mode = "conjecture";
  cfg.deterministic = true;

  cfg.n = 3;
  std::ostringstream o3;
  SweepSummary s3 = run_sweep(cfg, o3);
  CHECK(s3.tasks == 13);
  // 8 single edges, 4 squares with three crowns each, 2 for the full group.
  CHECK(s3.records == 22);
  CHECK(s3.passed == 22);
  CHECK(s3.mismatched == 0);

  cfg.n = 4;
  std::ostringstream o4;
  SweepSummary s4 = run_sweep(cfg, o4);
  CHECK(s4.tasks == 189);
  CHECK(s4.records >= s4.tasks);
  CHECK(s4.passed == s4.records);
  CHECK(s4.failed == 0);
  CHECK(s4.errors == 0);
  CHECK(s4.mismatched == 0);
}

TEST_CASE("worker count never changes the stream") {
  for (const char* mode : {"theorem", "conjecture"}) {
    SweepConfig cfg;
    cfg.n = 4;
    cfg.mode = mode;
    cfg.deterministic = true;

    std::ostringstream serial;
    SweepSummary a = run_sweep(cfg, serial);

    cfg.jobs = 4;
    std::ostringstream parallel;
    SweepSummary b = run_sweep(cfg, parallel);

    CHECK(serial.str() == parallel.str());
    CHECK(a.records == b.records);
    CHECK(a.passed == b.passed);
  }
}

TEST_CASE("sampling reproduces from the seed") {
  SweepConfig cfg;
  cfg.n = 5;
  cfg.mode = "theorem";
  cfg.sample = 40;
  cfg.seed = 99;
  cfg.deterministic = true;

  std::ostringstream a, b;
  SweepSummary sa = run_sweep(cfg, a);
  SweepSummary sb = run_sweep(cfg, b);
  CHECK(sa.tasks == 40);
  CHECK(sa.records == 40);
  CHECK(a.str() == b.str());
  CHECK(sa.passed == sb.passed);

  cfg.jobs = 3;
  std::ostringstream c;
  run_sweep(cfg, c);
  CHECK(a.str() == c.str());
}

TEST_CASE("summary line schema") {
  SweepConfig cfg;
  cfg.n = 4;
  cfg.mode = "theorem";
  cfg.deterministic = true;
  std::ostringstream out;
  SweepSummary s = run_sweep(cfg, out);

  const std::string tail = last_line(out.str());
  CHECK(tail == summary_jsonl(cfg, s, std::nullopt));
  CHECK(tail.find("\"mode\":\"theorem\"") != std::string::npos);
  CHECK(tail.find("\"n\":4") != std::string::npos);
  CHECK(tail.find("\"sample\":null") != std::string::npos);
  CHECK(tail.find("\"tasks\":189") != std::string::npos);
  CHECK(tail.find("\"decomposition_mismatch\":0") != std::string::npos);
  CHECK(tail.find("\"dedup\":false") != std::string::npos);
  CHECK(tail.find("elapsed_ms") == std::string::npos);

  CHECK(summary_jsonl(cfg, s, 5).find("\"elapsed_ms\":5") !=
        std::string::npos);
  cfg.sample = 40;
  CHECK(summary_jsonl(cfg, s, std::nullopt).find("\"sample\":40") !=
        std::string::npos);

  // Timing shows up when determinism is not requested.
  SweepConfig timed;
  timed.n = 3;
  timed.mode = "theorem";
  std::ostringstream t3;
  run_sweep(timed, t3);
  CHECK(last_line(t3.str()).find("\"elapsed_ms\":") != std::string::npos);
}

TEST_CASE("dedup collapses lookalike intervals") {
  SweepConfig cfg;
  cfg.n = 4;
  cfg.mode = "theorem";
  cfg.deterministic = true;

  std::ostringstream raw;
  SweepSummary sraw = run_sweep(cfg, raw);

  cfg.dedup = true;
  std::ostringstream merged;
  SweepSummary sded = run_sweep(cfg, merged);

  CHECK(sded.records + sded.dedup_skipped == sraw.records);
  CHECK(sded.dedup_classes == sded.records);
  CHECK(sded.records < sraw.records);  // all single edges look alike
  CHECK(sded.failed == 0);
  CHECK(sded.errors == 0);
  CHECK(lines(merged.str()) == size_t(sded.records) + 1);
  CHECK(last_line(merged.str()).find("\"dedup_classes\":") !=
        std::string::npos);
}

TEST_CASE("configuration validation") {
  std::ostringstream sink;
  SweepConfig cfg;
  cfg.n = 1;
  CHECK_THROWS_AS(run_sweep(cfg, sink), std::invalid_argument);
  cfg.n = 8;
  CHECK_THROWS_AS(run_sweep(cfg, sink), std::invalid_argument);
  cfg.n = 4;
  cfg.mode = "both";
  CHECK_THROWS_AS(run_sweep(cfg, sink), std::invalid_argument);
}

TEST_CASE("polynomial cache round trips through sweeps") {
  TempFile cache;
  SweepConfig cfg;
  cfg.n = 4;
  cfg.mode = "theorem";
  cfg.deterministic = true;
  cfg.kl_cache = cache.path;

  std::ostringstream a;
  run_sweep(cfg, a);
  CHECK(std::filesystem::exists(cache.path));

  std::ostringstream b;
  run_sweep(cfg, b);  // second run starts from the saved table
  CHECK(a.str() == b.str());
}
