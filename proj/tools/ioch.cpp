// Command-line harness: data generation, oracle verification, experiments
// and kernel audits.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <map>

#include "ioch/bench.hpp"
#include "ioch/datagen.hpp"
#include "ioch/stores.hpp"
#include "oracle.hpp"
#include "query_check.hpp"

using namespace ioch;

namespace {

struct Options {
  std::vector<std::string> structures{"all"};
  std::vector<std::string> kernels;
  std::vector<std::string> datasets;
  std::vector<std::size_t> n;
  std::vector<std::string> ratios{"1:1"};
  std::uint64_t seed = 1;
  std::size_t repeats = 5;
  std::vector<std::size_t> bucket_sizes{512};
  std::vector<std::size_t> node_bytes{1024};
  double timeout = 10.0;
  std::string out;
  bool sequential = false;
};

void add_common(CLI::App* app, Options& o, bool lists) {
  app->add_option("--structure", o.structures, "vector, avl, btree, log-linear, log-btree, log-hull or all")
      ->delimiter(',');
  app->add_option("--kernel", o.kernels, "naive, quadratic or exact")->delimiter(',');
  app->add_option("--dataset", o.datasets, "box, bell, disk, circle or a point file")->delimiter(',');
  app->add_option("--n", o.n, lists ? "operation counts" : "point count")->delimiter(',');
  app->add_option("--seed", o.seed, "base seed");
  app->add_option("--repeats", o.repeats, "repeats per configuration")->check(CLI::PositiveNumber);
  app->add_option("--bucket-size", o.bucket_sizes, "base capacity of the logarithmic variants")->delimiter(',');
  app->add_option("--btree-node-bytes", o.node_bytes, "B-tree node size in bytes")->delimiter(',');
  app->add_option("--timeout", o.timeout, "per-run time limit in seconds")->check(CLI::PositiveNumber);
  app->add_option("--out", o.out, "output file");
  app->add_flag("--sequential", o.sequential, "run repeats one at a time");
}

std::vector<StructureKind> structures(const Options& o) {
  std::vector<StructureKind> out;
  for (const std::string& s : o.structures) {
    if (s == "all") {
      out.assign(std::begin(kAllStructures), std::end(kAllStructures));
      continue;
    }
    const auto k = parse_structure(s);
    if (!k) throw ContractError("unknown structure '" + s + "'");
    out.push_back(*k);
  }
  return out;
}

std::vector<KernelKind> kernels(const Options& o, std::vector<std::string> fallback) {
  std::vector<KernelKind> out;
  for (const std::string& s : o.kernels.empty() ? fallback : o.kernels) {
    const auto k = parse_kernel(s);
    if (!k) throw ContractError("unknown kernel '" + s + "'");
    out.push_back(*k);
  }
  return out;
}

std::vector<std::shared_ptr<const bench::Dataset>> datasets(const Options& o, std::vector<std::string> fallback) {
  std::vector<std::shared_ptr<const bench::Dataset>> out;
  for (const std::string& d : o.datasets.empty() ? fallback : o.datasets) out.push_back(bench::resolve_dataset(d));
  return out;
}

StoreOptions store_options(std::size_t cap, std::size_t nb) {
  if (cap < 2 || (cap & (cap - 1)) != 0) throw ContractError("--bucket-size must be a power of two >= 2");
  if (nb == 0) throw ContractError("--btree-node-bytes must be positive");
  return {cap, nb};
}

std::vector<bench::RunRecord> execute(const std::vector<bench::RunConfig>& cfgs, bool sequential) {
  std::vector<bench::RunRecord> rows(cfgs.size());
  std::string error;
  const long n = static_cast<long>(cfgs.size());
#pragma omp parallel for schedule(dynamic) if (!sequential)
  for (long i = 0; i < n; ++i) {
    try {
      rows[static_cast<std::size_t>(i)] = bench::run(cfgs[static_cast<std::size_t>(i)]);
    } catch (const std::exception& e) {
#pragma omp critical
      if (error.empty()) error = e.what();
    }
  }
  if (!error.empty()) throw ContractError(error);
  return rows;
}

void emit(const Options& o, const std::vector<bench::RunRecord>& rows) {
  if (o.out.empty())
    std::cout << bench::to_csv(rows);
  else
    bench::write_csv_atomic(o.out, rows);
  std::size_t timeouts = 0;
  for (const auto& r : rows) timeouts += r.timed_out;
  std::cerr << rows.size() << " runs";
  if (timeouts) std::cerr << ", " << timeouts << " timed out";
  if (!o.out.empty()) std::cerr << ", written to " << o.out;
  std::cerr << "\n";
}

/// One configuration per (dataset, n, ratio, structure, kernel, options, repeat).
std::vector<bench::RunConfig> grid(const Options& o, const std::string& experiment,
                                   const std::vector<std::size_t>& ns, const std::vector<std::string>& ratios,
                                   const std::vector<std::shared_ptr<const bench::Dataset>>& ds,
                                   const std::vector<StructureKind>& ss, const std::vector<KernelKind>& ks,
                                   const StoreOptions& so) {
  std::vector<bench::RunConfig> cfgs;
  for (const auto& d : ds)
    for (std::size_t n : ns)
      for (const std::string& ratio : ratios)
        for (StructureKind s : ss)
          for (KernelKind k : ks)
            for (std::size_t r = 0; r < o.repeats; ++r) {
              bench::RunConfig c;
              c.experiment = experiment;
              c.structure = s;
              c.kernel = k;
              c.dataset = d;
              c.n_total = n;
              c.ratio = bench::parse_ratio(ratio);
              c.seed = o.seed;
              c.repeat = r;
              c.options = so;
              c.timeout_s = o.timeout;
              cfgs.push_back(c);
            }
  return cfgs;
}

int cmd_gen(const Options& o) {
  const auto ds = datasets(o, {"box"});
  if (ds.size() != 1 || !ds[0]->dist) throw ContractError("gen needs exactly one synthetic --dataset");
  if (o.n.size() > 1) throw ContractError("gen takes a single --n");
  const std::vector<Point> pts = ds[0]->points(o.n.empty() ? 1024 : o.n[0], o.seed);
  if (o.out.empty()) {
    std::printf("# %s n=%zu seed=%llu\n", ds[0]->name.c_str(), pts.size(), static_cast<unsigned long long>(o.seed));
    for (const Point& p : pts) std::printf("%.17g %.17g\n", p.x, p.y);
  } else {
    save_points(o.out, pts);
  }
  return 0;
}

int cmd_verify(const Options& o) {
  const auto ss = structures(o);
  const auto ks = kernels(o, {"exact"});
  const auto ds = datasets(o, {"box", "bell", "disk", "circle"});
  const std::vector<std::size_t> ns = o.n.empty() ? std::vector<std::size_t>{16, 128, 1024} : o.n;
  std::size_t runs = 0, bad = 0;
  for (const auto& d : ds)
    for (std::size_t n : ns)
      for (std::size_t r = 0; r < o.repeats; ++r) {
        const std::uint64_t seed = bench::repeat_seed(o.seed, r);
        const std::vector<Point> pts = d->points(n, seed);
        const std::vector<Point> hull = oracle::hull(pts);
        for (StructureKind s : ss)
          for (KernelKind k : ks) {
            auto h = make_structure(s, k, store_options(o.bucket_sizes[0], o.node_bytes[0]));
            for (const Point& p : pts) h->insert(p);
            SplitMix64 rng(seed);
            qcheck::Tally t;
            t.record(h->vertices() == hull, "vertices");
            t.merge(with_kernel(k, [&](auto kernel) {
              return qcheck::check_queries<decltype(kernel)>(*h, pts, 200, rng);
            }));
            ++runs;
            if (t.mismatches) {
              ++bad;
              std::cout << "MISMATCH " << d->name << " n=" << n << " seed=" << seed << " " << to_string(s) << "/"
                        << to_string(k) << ": " << t.mismatches << " of " << t.probes << ", first: " << t.first
                        << "\n";
            }
          }
      }
  std::cout << (bad ? "FAIL" : "OK") << ": " << runs - bad << "/" << runs << " structure runs match the oracles\n";
  return bad ? 1 : 0;
}

int cmd_bench(const std::string& kind, const Options& o) {
  const auto ss = structures(o);
  std::vector<bench::RunConfig> cfgs;
  if (kind == "ratio" || kind == "scale") {
    const auto ks = kernels(o, {"exact"});
    const auto ds = datasets(o, {"box"});
    std::vector<std::size_t> ns = o.n;
    if (ns.empty()) ns = kind == "ratio" ? std::vector<std::size_t>{4096} : std::vector<std::size_t>{1024, 4096, 16384};
    if (kind == "scale" && !std::is_sorted(ns.begin(), ns.end())) throw ContractError("--n must be ascending");
    if (kind == "ratio" && ns.size() != 1) throw ContractError("bench ratio takes a single --n");
    cfgs = grid(o, kind, ns, o.ratios, ds, ss, ks, store_options(o.bucket_sizes[0], o.node_bytes[0]));
  } else if (kind == "params") {
    const auto ks = kernels(o, {"exact"});
    const auto ds = datasets(o, {"box", "circle"});
    const std::vector<std::size_t> ns = o.n.empty() ? std::vector<std::size_t>{16384} : o.n;
    for (StructureKind s : ss) {
      const bool logm = s == StructureKind::LogLinear || s == StructureKind::LogBtree || s == StructureKind::LogHull;
      const bool tree = s == StructureKind::Btree || s == StructureKind::LogBtree;
      for (std::size_t cap : logm ? o.bucket_sizes : std::vector<std::size_t>{o.bucket_sizes[0]})
        for (std::size_t nb : tree ? o.node_bytes : std::vector<std::size_t>{o.node_bytes[0]}) {
          std::string tag = "params";
          if (logm) tag += "/base_capacity=" + std::to_string(cap);
          if (tree) tag += "/node_bytes=" + std::to_string(nb);
          if (!logm && !tree) continue;
          auto part = grid(o, tag, ns, o.ratios, ds, {s}, ks, store_options(cap, nb));
          cfgs.insert(cfgs.end(), part.begin(), part.end());
        }
    }
  } else if (kind == "kernels") {
    const auto ks = kernels(o, {"naive", "quadratic"});
    const auto ds = datasets(o, {"box", "bell", "disk", "circle"});
    const std::vector<std::size_t> ns = o.n.empty() ? std::vector<std::size_t>{16384} : o.n;
    std::vector<StructureKind> only = o.structures == std::vector<std::string>{"all"}
                                          ? std::vector<StructureKind>{StructureKind::Vector}
                                          : ss;
    cfgs = grid(o, "kernels", ns, {"1:0"}, ds, only, ks, store_options(o.bucket_sizes[0], o.node_bytes[0]));
  } else {
    throw ContractError("unknown experiment '" + kind + "' (ratio, scale, params, kernels)");
  }
  const auto rows = execute(cfgs, o.sequential);
  emit(o, rows);
  if (kind == "kernels") {
    std::map<std::string, std::pair<std::size_t, std::size_t>> frac;
    for (const auto& r : rows) {
      auto& f = frac[r.dataset + " " + r.kernel];
      f.first += r.predicate_errors > 0;
      ++f.second;
    }
    for (const auto& [key, f] : frac)
      std::cerr << key << ": " << f.first << "/" << f.second << " runs diverged from the exact kernel\n";
  }
  return 0;
}

int cmd_audit(const Options& o) {
  const auto ks = kernels(o, {"naive", "quadratic", "exact"});
  const auto ds = datasets(o, {"box", "bell", "disk", "circle"});
  const std::size_t n = o.n.empty() ? 4096 : o.n[0];
  for (const auto& d : ds) {
    const auto pts = d->points(n, o.seed);
    for (KernelKind k : ks) {
      const auto rep = audit_kernels(pts, k);
      std::cout << d->name << " " << to_string(k) << ": " << rep.disagreements << " of " << rep.evaluated
                << " predicate evaluations disagree with the exact kernel";
      if (!rep.first_witness.empty()) std::cout << "; first: " << rep.first_witness;
      std::cout << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Insertion-only planar convex hulls: generators, verification and benchmarks"};
  app.require_subcommand(1);
  Options o;
  auto* gen = app.add_subcommand("gen", "write a synthetic point file");
  add_common(gen, o, false);
  auto* verify = app.add_subcommand("verify", "check every structure and query against brute-force oracles");
  add_common(verify, o, true);
  auto* bench_cmd = app.add_subcommand("bench", "run an experiment and write CSV");
  std::string experiment;
  bench_cmd->add_option("experiment", experiment, "ratio, scale, params or kernels")
      ->required()
      ->check(CLI::IsMember({"ratio", "scale", "params", "kernels"}));
  add_common(bench_cmd, o, true);
  bench_cmd->add_option("--ratio", o.ratios, "updates:queries, e.g. 1:1")->delimiter(',');
  auto* audit = app.add_subcommand("audit", "compare predicate kernels against the exact kernel");
  add_common(audit, o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    if (o.bucket_sizes.empty() || o.node_bytes.empty()) throw ContractError("empty parameter list");
    if (*gen) return cmd_gen(o);
    if (*verify) return cmd_verify(o);
    if (*bench_cmd) return cmd_bench(experiment, o);
    if (*audit) return cmd_audit(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
