#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace salt {

using Vertex = std::uint32_t;
using Weight = std::uint32_t;
using ArcId = std::uint32_t;
using CellId = std::uint32_t;

// Reserved "unreached" value for every distance label in the engine.
inline constexpr Weight kInfinity = std::numeric_limits<Weight>::max();
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();
inline constexpr std::uint32_t kNoSlot = std::numeric_limits<std::uint32_t>::max();

enum class Direction : std::uint8_t { forward = 0, reverse = 1 };

inline Direction opposite(Direction d) {
  return d == Direction::forward ? Direction::reverse : Direction::forward;
}

inline const char* to_string(Direction d) {
  return d == Direction::forward ? "forward" : "reverse";
}

// Saturating path-length addition; anything at or past kInfinity is unreachable.
inline Weight add_saturated(Weight a, Weight b) {
  const std::uint64_t s = std::uint64_t{a} + b;
  return s >= kInfinity ? kInfinity : static_cast<Weight>(s);
}

// Error hierarchy. Every error the engine raises derives from salt::Error.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FormatError : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct WeightError : Error { using Error::Error; };
struct CountError : Error { using Error::Error; };
struct DuplicateError : Error { using Error::Error; };
struct PermutationError : Error { using Error::Error; };
struct NestingError : Error { using Error::Error; };
struct NeedsCoordinatesError : Error { using Error::Error; };
struct MetricError : Error { using Error::Error; };
struct StaleIndexError : Error { using Error::Error; };
struct EmptyTargetsError : Error { using Error::Error; };
struct InsufficientObjectsError : Error { using Error::Error; };

}  // namespace salt
