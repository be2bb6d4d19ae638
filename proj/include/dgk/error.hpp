#pragma once

#include <stdexcept>
#include <string>

namespace dgk {

// Malformed input: wrong shapes, unparsable files, side/algebra mismatch.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured size cap was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A seeded generator ran out of resampling budget.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dgk
