#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "klhc/decomp.hpp"
#include "klhc/formula.hpp"
#include "klhc/graph.hpp"
#include "klhc/klbase.hpp"
#include "klhc/perm.hpp"
#include "klhc/poly.hpp"
#include "klhc/sweep.hpp"

// Exit codes: 0 success, 1 verification failure, 2 usage or precondition
// error. An incomparable pair is not an error for kl/partial (the polynomial
// is simply zero) but is one for interval.

namespace {

using namespace klhc;

std::pair<Permutation, Permutation> parse_pair(const std::string& xs,
                                               const std::string& ys) {
  Permutation x = parse_permutation(xs);
  Permutation y = parse_permutation(ys);
  if (x.window() != y.window())
    throw std::invalid_argument("permutations have different window sizes");
  return {x, y};
}

KLTable make_table(int window, const std::string& cache) {
  KLTable t(window);
  if (!cache.empty() && std::filesystem::exists(cache)) t.load_cache(cache);
  return t;
}

int run_kl(const std::string& xs, const std::string& ys, bool json,
           const std::string& cache) {
  auto [x, y] = parse_pair(xs, ys);
  KLTable t = make_table(x.window(), cache);
  IntPolynomial p = t.kl(x, y);
  IntPolynomial dp =
      bruhat_leq(x, y) ? t.partial_kl(x, y) : IntPolynomial{};
  if (!cache.empty()) t.save_cache(cache);
  if (json) {
    std::cout << "{\"x\":\"" << x.str() << "\",\"y\":\"" << y.str()
              << "\",\"P\":" << p.coeff_list_str()
              << ",\"dP\":" << dp.coeff_list_str() << "}\n";
  } else {
    std::cout << "P = " << p.str() << "\n";
    std::cout << "dP = " << dp.str() << "\n";
  }
  return 0;
}

int run_partial(const std::string& xs, const std::string& ys,
                const std::string& cache) {
  auto [x, y] = parse_pair(xs, ys);
  KLTable t = make_table(x.window(), cache);
  IntPolynomial dp =
      bruhat_leq(x, y) ? t.partial_kl(x, y) : IntPolynomial{};
  if (!cache.empty()) t.save_cache(cache);
  std::cout << "dP = " << dp.str() << "\n";
  return 0;
}

int run_interval(const std::string& xs, const std::string& ys, bool json,
                 bool coset) {
  auto [x, y] = parse_pair(xs, ys);
  BruhatInterval iv = build_interval(x, y);  // rejects x not below y
  if (json) {
    std::cout << interval_to_json(iv) << "\n";
    return 0;
  }
  if (coset) {
    HypercubeDecomposition d = coset_decomposition(iv);
    GraphHighlight hl;
    hl.members = d.members;
    for (int v = 0; v < iv.g.size(); ++v)
      for (int u : d.cube_sources[size_t(v)]) hl.edges.emplace_back(u, v);
    std::cout << interval_to_dot(iv, &hl);
  } else {
    std::cout << interval_to_dot(iv);
  }
  return 0;
}

int run_decomps(const std::string& xs, const std::string& ys,
                const std::string& fixture) {
  if (!fixture.empty()) {
    std::ifstream f(fixture);
    if (!f) throw std::invalid_argument("cannot open fixture " + fixture);
    std::stringstream ss;
    ss << f.rdbuf();
    RankedDigraph g = graph_from_json(ss.str());
    std::vector<HypercubeDecomposition> ds =
        enumerate_decompositions(g, top_vertex(g));
    for (const HypercubeDecomposition& d : ds)
      std::cout << decomposition_to_json(d) << "\n";
    std::cerr << ds.size() << " decompositions\n";
    return 0;
  }
  auto [x, y] = parse_pair(xs, ys);
  if (x == y) throw std::invalid_argument("endpoints must differ");
  BruhatInterval iv = build_interval(x, y);
  std::vector<HypercubeDecomposition> ds =
      enumerate_decompositions(iv.g, iv.top());
  for (const HypercubeDecomposition& d : ds)
    std::cout << decomposition_to_json(d, &iv) << "\n";
  std::cerr << ds.size() << " decompositions\n";
  return 0;
}

int run_verify(const SweepConfig& cfg, const std::string& outpath) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!outpath.empty()) {
    file.open(outpath, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open " + outpath);
    os = &file;
  }
  SweepSummary s = run_sweep(cfg, *os);
  std::cerr << cfg.mode << " n=" << cfg.n << ": " << s.tasks << " tasks, "
            << s.records << " records, " << s.passed << " pass, " << s.failed
            << " fail, " << s.errors << " errors\n";
  return s.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Kazhdan-Lusztig polynomials of symmetric groups, with interval "
      "export and hypercube-decomposition verification"};
  app.require_subcommand(1);

  std::string xs, ys, cache, fixture, outpath;
  bool json = false, coset = false;

  CLI::App* kl = app.add_subcommand("kl", "print P and dP for a pair");
  kl->add_option("x", xs, "one-line notation, e.g. 0213")->required();
  kl->add_option("y", ys, "one-line notation")->required();
  kl->add_flag("--json", json, "machine-readable output");
  kl->add_option("--kl-cache", cache, "polynomial table cache file");

  CLI::App* partial = app.add_subcommand("partial", "print dP for a pair");
  partial->add_option("x", xs)->required();
  partial->add_option("y", ys)->required();
  partial->add_option("--kl-cache", cache, "polynomial table cache file");

  CLI::App* interval =
      app.add_subcommand("interval", "export the Bruhat interval graph");
  interval->add_option("x", xs)->required();
  interval->add_option("y", ys)->required();
  CLI::Option* ij = interval->add_flag("--json", json, "JSON instead of DOT");
  interval
      ->add_flag("--coset", coset,
                 "highlight the coset slice and its hypercube edges")
      ->excludes(ij);

  CLI::App* decomps = app.add_subcommand(
      "decomps", "enumerate the hypercube decompositions of an interval");
  decomps->add_option("x", xs);
  decomps->add_option("y", ys);
  decomps
      ->add_option("--fixture", fixture,
                   "abstract ranked graph JSON instead of a pair")
      ->excludes(decomps->get_option("x"));

  SweepConfig cfg;
  uint64_t sample = 0;
  CLI::App* verify =
      app.add_subcommand("verify", "sweep a window and check dP = I + Q");
  verify->add_option("--n", cfg.n, "window size, 2..7")->required();
  verify
      ->add_option("--mode", cfg.mode,
                   "theorem (coset slice) or conjecture (every decomposition)")
      ->check(CLI::IsMember({"theorem", "conjecture"}));
  CLI::Option* so = verify->add_option(
      "--sample", sample, "check this many sampled pairs instead of all");
  verify->add_option("--seed", cfg.seed, "sampling seed");
  verify->add_option("--jobs", cfg.jobs, "worker threads")
      ->envname("KLHC_JOBS");
  verify->add_flag("--dedup", cfg.dedup,
                   "emit one record per isomorphism class");
  verify->add_flag("--deterministic", cfg.deterministic,
                   "omit timing so identical runs are byte-identical");
  verify->add_option("--out", outpath, "write records here instead of stdout");
  verify->add_option("--kl-cache", cfg.kl_cache,
                     "polynomial table cache file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (kl->parsed()) return run_kl(xs, ys, json, cache);
    if (partial->parsed()) return run_partial(xs, ys, cache);
    if (interval->parsed()) return run_interval(xs, ys, json, coset);
    if (decomps->parsed()) {
      if (fixture.empty() && (xs.empty() || ys.empty()))
        throw std::invalid_argument("need a pair or --fixture");
      return run_decomps(xs, ys, fixture);
    }
    if (verify->parsed()) {
      if (so->count()) cfg.sample = sample;
      return run_verify(cfg, outpath);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
