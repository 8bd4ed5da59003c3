#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fintopo {

// Malformed textual or structured input.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Hasse diagram contains a directed cycle.
struct CycleError : ParseError {
  explicit CycleError(const std::string& what) : ParseError(what) {}
};

// A name does not denote an element of the poset at hand.
struct UnknownLabel : ParseError {
  explicit UnknownLabel(const std::string& what) : ParseError(what) {}
};

// Unsupported export format name.
struct UnknownFormat : ParseError {
  explicit UnknownFormat(const std::string& what) : ParseError(what) {}
};

// An enumeration would exceed the configured element ceiling.
struct SizeLimitError : std::runtime_error {
  std::uint64_t bound;
  std::uint64_t ceiling;
  SizeLimitError(const std::string& where, std::uint64_t bound_, std::uint64_t ceiling_)
      : std::runtime_error(where + ": " + std::to_string(bound_) +
                           " elements exceed ceiling " + std::to_string(ceiling_)),
        bound(bound_),
        ceiling(ceiling_) {}
};

// Enumeration ceilings and worker count, threaded through every search.
struct Limits {
  std::uint64_t max_elements = 2'000'000;
  int threads = 1;
};

}  // namespace fintopo
