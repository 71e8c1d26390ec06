#pragma once

#include <string_view>
#include <utility>
#include <variant>

namespace ioch {

enum class ErrorCode {
  DegenerateSegment,  // a segment whose endpoints coincide
  VerticalSegment,    // the naive kernel cannot represent a vertical line
  ParallelLines,      // an intersection was requested for parallel lines
  EmptyHull,
  PointInsideHull,
};

inline std::string_view to_string(ErrorCode e) {
  switch (e) {
    case ErrorCode::DegenerateSegment: return "degenerate segment";
    case ErrorCode::VerticalSegment: return "vertical segment";
    case ErrorCode::ParallelLines: return "parallel lines";
    case ErrorCode::EmptyHull: return "empty hull";
    case ErrorCode::PointInsideHull: return "point inside hull";
  }
  return "unknown";
}

/// Value-or-error result for operations whose failure is part of the
/// contract (as opposed to ContractError, which signals caller bugs).
template <class T>
class Outcome {
 public:
  Outcome(T value) : v_(std::move(value)) {}
  Outcome(ErrorCode e) : v_(e) {}

  bool ok() const { return std::holds_alternative<T>(v_); }
  explicit operator bool() const { return ok(); }

  const T& value() const& { return std::get<T>(v_); }
  T&& value() && { return std::get<T>(std::move(v_)); }
  const T& operator*() const& { return value(); }
  const T* operator->() const { return &value(); }
  ErrorCode error() const { return std::get<ErrorCode>(v_); }

 private:
  std::variant<T, ErrorCode> v_;
};

}  // namespace ioch
