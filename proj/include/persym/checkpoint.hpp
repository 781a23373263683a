#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "persym/exact.hpp"
#include "persym/shape.hpp"

namespace persym {

// Version tag of the canonical parameter-bit order.  Any change to that
// order must bump this so stale shard files are rejected instead of merged.
inline constexpr std::string_view kLayoutVersion = "block-major-v1";

// Persistent record of a sharded run: which shards finished and their
// partial rank tallies.  Serialized as JSON with counts as decimal strings.
struct Checkpoint {
  std::string layout_version{kLayoutVersion};
  std::string shape_text;   // canonical shape syntax
  std::size_t shard_count = 0;
  std::map<std::size_t, std::vector<ExactCount>> completed;

  static Checkpoint load(const std::string& path); // throws std::runtime_error
  void save(const std::string& path) const;        // write temp + rename

  // Throws std::runtime_error unless this checkpoint belongs to the given
  // shape, shard count, and the current layout version.
  void validate_for(const Shape& shape, std::size_t shards) const;
};

} // namespace persym
