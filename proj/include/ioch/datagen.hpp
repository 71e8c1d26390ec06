#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ioch/point.hpp"

namespace ioch {

enum class Distribution { Box, Bell, Disk, Circle };
inline constexpr Distribution kAllDistributions[] = {Distribution::Box, Distribution::Bell, Distribution::Disk,
                                                     Distribution::Circle};

std::string_view to_string(Distribution d);
std::optional<Distribution> parse_distribution(std::string_view name);

struct GeneratorSpec {
  Distribution kind = Distribution::Box;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double extent = 1000.0;  // box side; disk and circle diameter
};

/// Box: uniform in [0, extent]^2. Bell: independent normals with mean
/// extent/2 and deviation extent/6. Disk: uniform by area in the inscribed
/// disk. Circle: uniform angle on the inscribed circle, coordinates rounded
/// to the nearest float.
std::vector<Point> generate(const GeneratorSpec& spec);

class PointFileError : public std::runtime_error {
 public:
  PointFileError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  /// 1-based; 0 when the error is not tied to a line.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// One "x y" pair per line; blank lines and lines starting with '#' skipped.
std::vector<Point> parse_points(std::string_view text);
std::vector<Point> load_points(const std::filesystem::path& path);
void save_points(const std::filesystem::path& path, std::span<const Point> pts);

}  // namespace ioch
