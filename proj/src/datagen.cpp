#include "ioch/datagen.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "ioch/random.hpp"

namespace ioch {

namespace {

// Kept out of line: GCC 11 at -O3 vectorizes the two coordinate
// computations and drops the float round trip when this is inlined.
[[gnu::noinline]] double round_to_float(double v) { return static_cast<float>(v); }

}  // namespace

std::string_view to_string(Distribution d) {
  switch (d) {
    case Distribution::Box: return "box";
    case Distribution::Bell: return "bell";
    case Distribution::Disk: return "disk";
    case Distribution::Circle: return "circle";
  }
  return "unknown";
}

std::optional<Distribution> parse_distribution(std::string_view name) {
  for (Distribution d : kAllDistributions)
    if (to_string(d) == name) return d;
  return std::nullopt;
}

std::vector<Point> generate(const GeneratorSpec& spec) {
  if (!(spec.extent > 0.0) || !std::isfinite(spec.extent)) throw ContractError("extent must be positive");
  SplitMix64 rng(spec.seed);
  const double e = spec.extent, c = e / 2, r = e / 2;
  constexpr double tau = 2 * std::numbers::pi;
  std::vector<Point> out;
  out.reserve(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    switch (spec.kind) {
      case Distribution::Box: {
        const double x = rng.uniform(0, e);
        out.push_back({x, rng.uniform(0, e)});
        break;
      }
      case Distribution::Bell: {
        const double x = c + rng.normal() * e / 6;
        out.push_back({x, c + rng.normal() * e / 6});
        break;
      }
      case Distribution::Disk: {
        const double rad = r * std::sqrt(rng.uniform());
        const double a = tau * rng.uniform();
        out.push_back({c + rad * std::cos(a), c + rad * std::sin(a)});
        break;
      }
      case Distribution::Circle: {
        const double a = tau * rng.uniform();
        out.push_back({round_to_float(c + r * std::cos(a)), round_to_float(c + r * std::sin(a))});
        break;
      }
    }
  }
  return out;
}

namespace {

bool parse_double(std::string_view tok, double& v) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  return ec == std::errc() && end == tok.data() + tok.size();
}

}  // namespace

std::vector<Point> parse_points(std::string_view text) {
  std::vector<Point> out;
  std::size_t line_no = 0;
  constexpr std::string_view ws = " \t\r\v\f";
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    std::string_view tokens[3];
    std::size_t count = 0;
    for (std::size_t pos = line.find_first_not_of(ws); pos != std::string_view::npos && count < 3;
         pos = line.find_first_not_of(ws, pos)) {
      const std::size_t end = std::min(line.find_first_of(ws, pos), line.size());
      tokens[count++] = line.substr(pos, end - pos);
      pos = end;
    }
    if (count == 0 || tokens[0].front() == '#') continue;
    if (count != 2) throw PointFileError("expected two numbers", line_no);
    Point p;
    if (!parse_double(tokens[0], p.x) || !parse_double(tokens[1], p.y))
      throw PointFileError("malformed number", line_no);
    if (!is_finite(p)) throw PointFileError("non-finite coordinate", line_no);
    out.push_back(p);
  }
  return out;
}

std::vector<Point> load_points(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PointFileError("cannot open " + path.string(), 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_points(buf.str());
}

void save_points(const std::filesystem::path& path, std::span<const Point> pts) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw PointFileError("cannot write " + path.string(), 0);
  out.precision(17);
  for (const Point& p : pts) out << p.x << ' ' << p.y << '\n';
  if (!out) throw PointFileError("write failed for " + path.string(), 0);
}

}  // namespace ioch
