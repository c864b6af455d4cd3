#pragma once

#include <stdexcept>
#include <string>

namespace z2lab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct OverlapError : Error { using Error::Error; };
struct DegenerateError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct NonSymmetricError : Error { using Error::Error; };
struct IOError : Error { using Error::Error; };
struct TimeLimitExceeded : Error { using Error::Error; };

}  // namespace z2lab
