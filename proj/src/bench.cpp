#include "ioch/bench.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "ioch/random.hpp"

namespace ioch::bench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds(Clock::duration d) { return std::chrono::duration<double>(d).count(); }

RunRecord echo(const RunConfig& cfg) {
  RunRecord r;
  r.experiment = cfg.experiment;
  r.structure = std::string(to_string(cfg.structure));
  r.kernel = std::string(to_string(cfg.kernel));
  r.dataset = cfg.dataset->name;
  r.seed = repeat_seed(cfg.seed, cfg.repeat);
  r.repeat = cfg.repeat;
  return r;
}

}  // namespace

bool operator==(const RunRecord& a, const RunRecord& b) {
  return a.experiment == b.experiment && a.structure == b.structure && a.kernel == b.kernel &&
         a.dataset == b.dataset && a.seed == b.seed && a.repeat == b.repeat && a.n_insert == b.n_insert &&
         a.n_query == b.n_query && a.time_insert_s == b.time_insert_s && a.time_query_s == b.time_query_s &&
         a.hull_size == b.hull_size && a.peak_bytes == b.peak_bytes && a.predicate_errors == b.predicate_errors &&
         a.timed_out == b.timed_out;
}

std::uint64_t repeat_seed(std::uint64_t seed, std::size_t repeat) { return seed + repeat; }

std::vector<Point> Dataset::points(std::size_t n, std::uint64_t seed) const {
  if (dist) return generate({*dist, n, seed});
  if (n >= file_points.size()) return file_points;
  return {file_points.begin(), file_points.begin() + static_cast<std::ptrdiff_t>(n)};
}

std::vector<Point> Dataset::queries(std::size_t n, std::uint64_t seed) const {
  const std::uint64_t qseed = SplitMix64(seed ^ 0x51ed'2701'9e37'79b9ULL).next();
  if (dist) return generate({*dist, n, qseed});
  std::vector<Point> out;
  if (file_points.empty()) return out;
  Point lo = file_points[0], hi = lo;
  for (const Point& p : file_points) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  SplitMix64 rng(qseed);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.uniform(lo.x, hi.x);
    out.push_back({x, rng.uniform(lo.y, hi.y)});
  }
  return out;
}

std::shared_ptr<const Dataset> resolve_dataset(const std::string& spec) {
  auto d = std::make_shared<Dataset>();
  if (const auto dist = parse_distribution(spec)) {
    d->name = spec;
    d->dist = dist;
    return d;
  }
  const std::filesystem::path path(spec);
  if (!std::filesystem::is_regular_file(path))
    throw ContractError("unknown dataset '" + spec + "' (expected box, bell, disk, circle or a point file)");
  d->name = path.stem().string();
  d->file_points = load_points(path);
  return d;
}

Ratio parse_ratio(const std::string& text) {
  const auto colon = text.find(':');
  Ratio r;
  auto num = [&](std::string_view s, std::size_t& out) {
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && end == s.data() + s.size() && !s.empty();
  };
  if (colon == std::string::npos || !num(std::string_view(text).substr(0, colon), r.updates) ||
      !num(std::string_view(text).substr(colon + 1), r.queries) || r.updates + r.queries == 0)
    throw ContractError("ratio must look like U:Q with non-negative integers, not both zero: '" + text + "'");
  return r;
}

RunRecord run_mixed(const RunConfig& cfg) {
  RunRecord rec = echo(cfg);
  const std::size_t parts = cfg.ratio.updates + cfg.ratio.queries;
  std::size_t n_insert = cfg.n_total * cfg.ratio.updates / parts;
  const std::uint64_t seed = rec.seed;
  const std::vector<Point> ins_pts = cfg.dataset->points(n_insert, seed);
  n_insert = ins_pts.size();
  const std::size_t n_query = cfg.dataset->dist ? cfg.n_total - n_insert
                                                : n_insert * cfg.ratio.queries / std::max<std::size_t>(1, cfg.ratio.updates);
  const std::vector<Point> qs = cfg.dataset->queries(n_query, seed);
  rec.n_insert = n_insert;
  rec.n_query = n_query;

  auto s = make_structure(cfg.structure, cfg.kernel, cfg.options);
  const auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                           std::chrono::duration<double>(cfg.timeout_s));
  Clock::duration t_ins{}, t_q{};
  const std::size_t total = n_insert + n_query;
  // Inserts due after k operations; op k is an insert when this steps up.
  auto due = [&](std::size_t k) { return total == 0 ? 0 : (k * n_insert + total - 1) / total; };
  auto is_insert = [&](std::size_t k) { return due(k + 1) > due(k); };
  std::size_t k = 0, i = 0, j = 0;
  while (k < total) {
    const bool ins = is_insert(k);
    std::size_t end = k + 1;
    while (end < total && end - k < 64 && is_insert(end) == ins) ++end;
    const auto t0 = Clock::now();
    if (ins) {
      for (; k < end; ++k) s->insert(ins_pts[i++]);
      t_ins += Clock::now() - t0;
    } else {
      for (; k < end; ++k) rec.queries_inside += s->contains(qs[j++]);
      t_q += Clock::now() - t0;
    }
    if (Clock::now() > deadline) {
      rec.timed_out = k < total;
      break;
    }
  }
  rec.time_insert_s = rec.timed_out ? 0 : seconds(t_ins);
  rec.time_query_s = rec.timed_out ? 0 : seconds(t_q);
  rec.hull_size = s->hull_size();
  rec.peak_bytes = s->peak_bytes();
  return rec;
}

RunRecord run_kernel_audit(const RunConfig& cfg) {
  RunRecord rec = echo(cfg);
  const std::vector<Point> pts = cfg.dataset->points(cfg.n_total, rec.seed);
  rec.n_insert = pts.size();
  auto test = make_structure(cfg.structure, cfg.kernel, cfg.options);
  auto exact = make_structure(cfg.structure, KernelKind::Exact, cfg.options);
  const auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                           std::chrono::duration<double>(cfg.timeout_s));
  Clock::duration t_ins{};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto t0 = Clock::now();
    test->insert(pts[i]);
    t_ins += Clock::now() - t0;
    exact->insert(pts[i]);
    if (test->hull_size() != exact->hull_size() || test->upper_chain() != exact->upper_chain() ||
        test->lower_chain_flipped() != exact->lower_chain_flipped()) {
      rec.predicate_errors = 1;
      break;
    }
    if ((i & 63) == 0 && Clock::now() > deadline) {
      rec.timed_out = true;
      break;
    }
  }
  rec.time_insert_s = rec.timed_out ? 0 : seconds(t_ins);
  rec.hull_size = test->hull_size();
  rec.peak_bytes = test->peak_bytes();
  return rec;
}

RunRecord run(const RunConfig& cfg) {
  if (!cfg.dataset) throw ContractError("run without a dataset");
  return cfg.experiment == "kernels" ? run_kernel_audit(cfg) : run_mixed(cfg);
}

std::string to_csv(const std::vector<RunRecord>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (const RunRecord& r : rows) {
    std::ostringstream line;
    line << r.experiment << ',' << r.structure << ',' << r.kernel << ',' << r.dataset << ',' << r.seed << ','
         << r.repeat << ',' << r.n_insert << ',' << r.n_query << ','
         << (r.timed_out ? "" : num(r.time_insert_s)) << ',' << (r.timed_out ? "" : num(r.time_query_s)) << ','
         << r.hull_size << ',' << r.peak_bytes << ',' << r.predicate_errors << ',' << (r.timed_out ? 1 : 0) << '\n';
    out += line.str();
  }
  return out;
}

std::vector<RunRecord> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw ContractError("CSV header mismatch");
  std::vector<RunRecord> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    for (std::size_t pos; (pos = line.find(',', start)) != std::string::npos; start = pos + 1)
      f.push_back(line.substr(start, pos - start));
    f.push_back(line.substr(start));
    if (f.size() != 14) throw ContractError("CSV line " + std::to_string(line_no) + ": expected 14 fields");
    auto u = [&](const std::string& s) {
      std::uint64_t v = 0;
      const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || end != s.data() + s.size())
        throw ContractError("CSV line " + std::to_string(line_no) + ": bad integer '" + s + "'");
      return v;
    };
    auto d = [&](const std::string& s) {
      if (s.empty()) return 0.0;
      double v = 0;
      const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || end != s.data() + s.size())
        throw ContractError("CSV line " + std::to_string(line_no) + ": bad number '" + s + "'");
      return v;
    };
    RunRecord r;
    r.experiment = f[0];
    r.structure = f[1];
    r.kernel = f[2];
    r.dataset = f[3];
    r.seed = u(f[4]);
    r.repeat = u(f[5]);
    r.n_insert = u(f[6]);
    r.n_query = u(f[7]);
    r.time_insert_s = d(f[8]);
    r.time_query_s = d(f[9]);
    r.hull_size = u(f[10]);
    r.peak_bytes = u(f[11]);
    r.predicate_errors = u(f[12]);
    r.timed_out = u(f[13]) != 0;
    rows.push_back(r);
  }
  return rows;
}

void write_csv_atomic(const std::filesystem::path& path, const std::vector<RunRecord>& rows) {
  const std::string text = to_csv(rows);
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move CSV into place at " + path.string() + ": " + ec.message());
  }
}

}  // namespace ioch::bench
