#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace lifescope::ml {

struct Confusion {
  std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
};

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  double accuracy = 0.0;
  double auc = 0.0;
  Confusion confusion;
  /// Set when a metric had a zero denominator and was reported as 0
  /// (or 0.5 for AUC).
  std::vector<std::string> warnings;
};

/// Precision, recall, F1 and accuracy from the confusion matrix; AUC is the
/// probability that a random positive outscores a random negative, ties ½.
/// Throws std::invalid_argument on empty or mismatched inputs.
Metrics compute_metrics(const std::vector<bool>& predicted, const std::vector<double>& scores,
                        const std::vector<bool>& truth);

/// Rank-sum (Mann-Whitney) AUC with average ranks for tied scores.
double area_under_roc(const std::vector<double>& scores, const std::vector<bool>& truth);

/// Arithmetic mean of each rate; confusion counts are summed.
Metrics mean_metrics(const std::vector<Metrics>& rows);

}  // namespace lifescope::ml
