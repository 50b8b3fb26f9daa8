#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace lifescope {

/// A recoverable problem found while reading input. `line` is 1-based; 0 means
/// the diagnostic applies to the whole input.
struct Diagnostic {
  std::size_t line = 0;
  std::string message;
};

/// Renders `file:line: message`, the format every subcommand uses on stderr.
std::string format_diagnostic(const std::string& file, const Diagnostic& d);

struct SparseEntry {
  std::uint32_t index = 0;
  double value = 0.0;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Sparse vector with entries sorted by strictly increasing index.
using SparseVector = std::vector<SparseEntry>;

double squared_norm(const SparseVector& v);
double squared_distance(const SparseVector& a, const SparseVector& b);

}  // namespace lifescope
