#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace klhc {

// A batch verification run over one symmetric group window: every comparable
// pair x < y (or a seeded sample of them), checked either against the
// canonical coset decomposition ("theorem") or against every enumerated
// decomposition ("conjecture").
struct SweepConfig {
  int n = 4;                        // window, 2..7
  std::string mode = "theorem";     // "theorem" | "conjecture"
  std::optional<uint64_t> sample;   // pair draws; absent runs exhaustively
  uint64_t seed = 0;                // sampling seed
  int jobs = 1;                     // worker threads; <= 1 is the serial path
  bool dedup = false;               // suppress isomorphic repeats
  bool deterministic = false;       // omit wall-clock fields from the summary
  std::string kl_cache;             // optional table cache path (load + save)
};

struct SweepSummary {
  uint64_t tasks = 0;             // (x, y) pairs processed
  uint64_t records = 0;           // emitted record lines
  uint64_t passed = 0;
  uint64_t failed = 0;            // pass == false, formula ran to completion
  uint64_t errors = 0;            // check aborted; details in the record
  uint64_t gamma_negative = 0;    // records with a negative gamma coefficient
  uint64_t q_negative = 0;        // records with a negative Q coefficient
  uint64_t mismatched = 0;        // pairs whose I + Q varies across z
  uint64_t dedup_classes = 0;     // distinct isomorphism classes seen
  uint64_t dedup_skipped = 0;     // records suppressed as repeats

  bool ok() const { return failed == 0 && errors == 0; }
};

// Streams one JSON line per verification record to out, then one trailing
// summary line. jobs > 1 parallelizes inside fixed-size chunks and merges in
// task order, so the bytes written never depend on the worker count. Throws
// std::invalid_argument on a bad config and std::runtime_error on an
// unusable cache file.
SweepSummary run_sweep(const SweepConfig& cfg, std::ostream& out);

// The trailing line: fixed key order, no worker-count field, timing only
// when cfg.deterministic is off and elapsed_ms is supplied.
std::string summary_jsonl(const SweepConfig& cfg, const SweepSummary& s,
                          std::optional<int64_t> elapsed_ms);

}  // namespace klhc
