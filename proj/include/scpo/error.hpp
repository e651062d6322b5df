#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scpo {

enum class ErrorKind {
  InvalidInput,
  InvalidPolygon,
  InvalidConfig,
  PointOutsideArea,
  PointInsideObstacle,
  UnknownPointId,
  Unreachable,
  EmptyRegion,
  ParseError,
  EmptyDataset,
  UnknownScenario,
  IoError,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Input validation failures (as opposed to internal faults).
  bool is_validation() const noexcept {
    switch (kind_) {
      case ErrorKind::Unreachable:
      case ErrorKind::EmptyRegion:
        return false;
      default:
        return true;
    }
  }

 private:
  ErrorKind kind_;
};

}  // namespace scpo
