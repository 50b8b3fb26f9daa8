#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lifescope/metrics.hpp"
#include "lifescope/ml.hpp"

namespace lifescope::ml {

/// Preprocessed functions with labels and part assignments. Vectors are not
/// stored: each round builds its own vocabulary from its training parts.
struct Dataset {
  std::vector<std::vector<std::string>> stems;
  std::vector<bool> labels;
  std::vector<std::uint32_t> fold_ids;
};

/// Random permutation under `seed`, cut into `parts` contiguous runs whose
/// sizes differ by at most one. Returns the part of each example.
std::vector<std::uint32_t> assign_folds(std::size_t n, std::size_t parts, std::uint64_t seed);

/// Parts tested in `round`: round, round+1, ... (mod parts).
std::vector<std::uint32_t> test_parts_for_round(std::size_t round, std::size_t parts,
                                                std::size_t test_parts);

struct CvOptions {
  std::size_t parts = 10;
  std::size_t test_parts = 3;
  Hyperparameters hyperparameters;
  bool parallel = true;
};

struct RoundResult {
  std::size_t round = 0;
  std::vector<std::uint32_t> test_parts;
  std::vector<std::size_t> test_indices;
  std::size_t train_size = 0;
  std::size_t vocab_size = 0;
  Metrics metrics;
};

struct CvReport {
  Algorithm algorithm = Algorithm::DecisionTree;
  std::vector<RoundResult> rounds;
  Metrics average;
};

/// Runs one round per part. Throws std::invalid_argument when the dataset
/// has fewer examples than parts or fold ids are out of range.
CvReport cross_validate(const Dataset& data, Algorithm algorithm, std::uint64_t seed,
                        const CvOptions& options = {});

}  // namespace lifescope::ml
