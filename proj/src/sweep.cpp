#include "klhc/sweep.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "klhc/decomp.hpp"
#include "klhc/formula.hpp"
#include "klhc/graph.hpp"
#include "klhc/klbase.hpp"
#include "klhc/perm.hpp"
#include "klhc/poly.hpp"

namespace klhc {

namespace {

struct Task {
  Permutation x, y;
};

struct RecordOut {
  std::string line;
  std::string key;  // dedup class; empty means "never merge"
  int status = 0;   // 0 pass, 1 fail, 2 error
  bool gneg = false;
  bool qneg = false;
};

struct TaskOutput {
  std::vector<RecordOut> recs;
  bool mismatch = false;  // I + Q varied across this pair's decompositions
};

// Exhaustive runs walk pairs in lexicographic (x, y) order; sampled runs keep
// draw order, repeats allowed. Either way the list is independent of the
// worker count.
std::vector<Task> make_tasks(const SweepConfig& cfg) {
  const std::vector<Permutation> perms = enumerate_symmetric_group(cfg.n);
  std::vector<Task> tasks;
  if (cfg.sample) {
    std::mt19937_64 rng(cfg.seed);
    const uint64_t m = perms.size();
    tasks.reserve(size_t(*cfg.sample));
    for (uint64_t k = 0; k < *cfg.sample; ++k) {
      for (;;) {
        const Permutation& x = perms[size_t(rng() % m)];
        const Permutation& y = perms[size_t(rng() % m)];
        if (x == y || !bruhat_leq(x, y)) continue;
        tasks.push_back({x, y});
        break;
      }
    }
  } else {
    for (const Permutation& x : perms)
      for (const Permutation& y : perms)
        if (!(x == y) && bruhat_leq(x, y)) tasks.push_back({x, y});
  }
  return tasks;
}

std::string dedup_key(const BruhatInterval& iv,
                      const HypercubeDecomposition& d) {
  std::vector<int> colors(size_t(iv.g.size()), 0);
  d.members.for_each([&](size_t v) { colors[v] = 1; });
  try {
    return canonical_key(iv.g, &colors);
  } catch (const std::runtime_error&) {
    return std::string();  // unlabeled: emitted as its own class
  }
}

RecordOut error_record(const Task& tk, const char* what) {
  VerificationRecord r;
  r.x = tk.x;
  r.y = tk.y;
  r.error = what;
  RecordOut ro;
  ro.line = record_jsonl(r);
  ro.status = 2;
  return ro;
}

TaskOutput process_task(const Task& tk, bool conjecture, bool dedup,
                        KLTable& t) {
  TaskOutput out;
  BruhatInterval iv;
  std::vector<HypercubeDecomposition> ds;
  try {
    iv = build_interval(tk.x, tk.y);
    if (conjecture)
      ds = enumerate_decompositions(iv.g, iv.top());
    else
      ds.push_back(coset_decomposition(iv));
  } catch (const std::exception& e) {
    out.recs.push_back(error_record(tk, e.what()));
    return out;
  }

  std::optional<IntPolynomial> total;
  for (const HypercubeDecomposition& d : ds) {
    VerificationRecord r = check_formula(iv, d, t);
    RecordOut ro;
    ro.line = record_jsonl(r);
    if (!r.error.empty()) {
      ro.status = 2;
    } else {
      ro.status = r.pass ? 0 : 1;
      ro.gneg = !r.gamma_nonneg;
      ro.qneg = !r.q_nonneg;
      IntPolynomial sum = r.inductive + r.q;
      if (!total)
        total = std::move(sum);
      else if (!(*total == sum))
        out.mismatch = true;
      if (dedup) ro.key = dedup_key(iv, d);
    }
    out.recs.push_back(std::move(ro));
  }
  return out;
}

}  // namespace

SweepSummary run_sweep(const SweepConfig& cfg, std::ostream& out) {
  if (cfg.n < 2 || cfg.n > 7)
    throw std::invalid_argument("sweep window must be between 2 and 7");
  const bool conjecture = cfg.mode == "conjecture";
  if (!conjecture && cfg.mode != "theorem")
    throw std::invalid_argument("sweep mode must be theorem or conjecture");

  const auto t0 = std::chrono::steady_clock::now();

  KLTable table(cfg.n);
  if (!cfg.kl_cache.empty() && std::filesystem::exists(cfg.kl_cache))
    table.load_cache(cfg.kl_cache);
  table.precompute_all(cfg.jobs);

  const std::vector<Task> tasks = make_tasks(cfg);

  SweepSummary s;
  s.tasks = tasks.size();
  std::unordered_set<std::string> seen;

  // Workers fill a chunk of task outputs; the merge then walks the chunk in
  // task order, so the stream is byte-identical to the serial run.
  const size_t chunk = 256;
  std::vector<TaskOutput> buf;
  for (size_t base = 0; base < tasks.size(); base += chunk) {
    const size_t m = std::min(chunk, tasks.size() - base);
    buf.assign(m, TaskOutput{});
    if (cfg.jobs <= 1) {
      for (size_t i = 0; i < m; ++i)
        buf[i] = process_task(tasks[base + i], conjecture, cfg.dedup, table);
    } else {
#pragma omp parallel for schedule(dynamic) num_threads(cfg.jobs)
      for (long long i = 0; i < (long long)m; ++i)
        buf[size_t(i)] =
            process_task(tasks[base + size_t(i)], conjecture, cfg.dedup, table);
    }
    for (size_t i = 0; i < m; ++i) {
      if (buf[i].mismatch) ++s.mismatched;
      for (RecordOut& ro : buf[i].recs) {
        if (cfg.dedup && !ro.key.empty() && !seen.insert(ro.key).second) {
          ++s.dedup_skipped;
          continue;
        }
        out << ro.line << '\n';
        ++s.records;
        if (ro.status == 0)
          ++s.passed;
        else if (ro.status == 1)
          ++s.failed;
        else
          ++s.errors;
        if (ro.gneg) ++s.gamma_negative;
        if (ro.qneg) ++s.q_negative;
      }
    }
  }
  s.dedup_classes = seen.size();

  if (!cfg.kl_cache.empty()) table.save_cache(cfg.kl_cache);

  std::optional<int64_t> elapsed;
  if (!cfg.deterministic)
    elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  out << summary_jsonl(cfg, s, elapsed) << '\n';
  out.flush();
  return s;
}

std::string summary_jsonl(const SweepConfig& cfg, const SweepSummary& s,
                          std::optional<int64_t> elapsed_ms) {
  std::string j = "{\"summary\":true,\"mode\":\"" + cfg.mode + "\"";
  j += ",\"n\":" + std::to_string(cfg.n);
  j += ",\"sample\":" +
       (cfg.sample ? std::to_string(*cfg.sample) : std::string("null"));
  j += ",\"seed\":" + std::to_string(cfg.seed);
  j += ",\"tasks\":" + std::to_string(s.tasks);
  j += ",\"records\":" + std::to_string(s.records);
  j += ",\"pass\":" + std::to_string(s.passed);
  j += ",\"fail\":" + std::to_string(s.failed);
  j += ",\"errors\":" + std::to_string(s.errors);
  j += ",\"gamma_negative\":" + std::to_string(s.gamma_negative);
  j += ",\"q_negative\":" + std::to_string(s.q_negative);
  j += ",\"decomposition_mismatch\":" + std::to_string(s.mismatched);
  j += std::string(",\"dedup\":") + (cfg.dedup ? "true" : "false");
  if (cfg.dedup) {
    j += ",\"dedup_classes\":" + std::to_string(s.dedup_classes);
    j += ",\"dedup_skipped\":" + std::to_string(s.dedup_skipped);
  }
  if (elapsed_ms) j += ",\"elapsed_ms\":" + std::to_string(*elapsed_ms);
  j += "}";
  return j;
}

}  // namespace klhc
