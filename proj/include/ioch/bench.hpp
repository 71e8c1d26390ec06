#pragma once

// Experiment runners behind the command-line harness. A run builds one
// structure, replays an insert/query schedule and reports timings, final
// hull size and peak memory.

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ioch/datagen.hpp"
#include "ioch/predicates.hpp"
#include "ioch/stores.hpp"

namespace ioch::bench {

/// A synthetic distribution or the points of a file.
struct Dataset {
  std::string name;
  std::optional<Distribution> dist;
  std::vector<Point> file_points;

  /// `n` points for a run; files give at most their first n points.
  std::vector<Point> points(std::size_t n, std::uint64_t seed) const;
  /// Query points: same distribution, independent stream; files use the
  /// bounding box of their points.
  std::vector<Point> queries(std::size_t n, std::uint64_t seed) const;
};

/// Distribution name or readable point file.
std::shared_ptr<const Dataset> resolve_dataset(const std::string& spec);

/// Updates : queries, e.g. "1:1" or "0:1".
struct Ratio {
  std::size_t updates = 1;
  std::size_t queries = 1;
};
Ratio parse_ratio(const std::string& text);

struct RunConfig {
  std::string experiment = "ratio";
  StructureKind structure = StructureKind::Vector;
  KernelKind kernel = KernelKind::Exact;
  std::shared_ptr<const Dataset> dataset;
  std::size_t n_total = 0;  // operations (inserts + queries)
  Ratio ratio;
  std::uint64_t seed = 0;
  std::size_t repeat = 0;
  StoreOptions options;
  double timeout_s = 10.0;
};

struct RunRecord {
  std::string experiment, structure, kernel, dataset;
  std::uint64_t seed = 0;  // seed of this repeat's data
  std::size_t repeat = 0, n_insert = 0, n_query = 0;
  double time_insert_s = 0, time_query_s = 0;
  std::size_t hull_size = 0, peak_bytes = 0, predicate_errors = 0;
  bool timed_out = false;
  std::size_t queries_inside = 0;  // not exported; keeps the query loop observable

  friend bool operator==(const RunRecord& a, const RunRecord& b);
};

/// Seed of the data used by a given repeat.
std::uint64_t repeat_seed(std::uint64_t seed, std::size_t repeat);

/// Interleaved inserts and containment queries at the configured ratio.
RunRecord run_mixed(const RunConfig& cfg);

/// Inserts under cfg.kernel while an exact-kernel twin replays the same
/// points; predicate_errors is 1 when the hulls diverge at any checkpoint.
RunRecord run_kernel_audit(const RunConfig& cfg);

/// Dispatches on cfg.experiment ("kernels" audits, everything else mixes).
RunRecord run(const RunConfig& cfg);

inline constexpr const char* kCsvHeader =
    "experiment,structure,kernel,dataset,seed,repeat,n_insert,n_query,time_insert_s,time_query_s,hull_size,"
    "peak_bytes,predicate_errors,timed_out";

std::string to_csv(const std::vector<RunRecord>& rows);
std::vector<RunRecord> parse_csv(const std::string& text);
/// Writes to a sibling temporary file, then renames it over `path`.
void write_csv_atomic(const std::filesystem::path& path, const std::vector<RunRecord>& rows);

}  // namespace ioch::bench
