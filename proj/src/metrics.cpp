#include "lifescope/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace lifescope::ml {

double area_under_roc(const std::vector<double>& scores, const std::vector<bool>& truth) {
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Twice the rank sum keeps tied (half-integer) ranks exact in integers.
  std::size_t twice_rank_sum = 0;
  std::size_t positives = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const std::size_t twice_avg_rank = (i + 1) + j;  // 2 * mean of ranks i+1..j
    for (std::size_t t = i; t < j; ++t) {
      if (truth[order[t]]) {
        twice_rank_sum += twice_avg_rank;
        ++positives;
      }
    }
    i = j;
  }
  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) return 0.5;
  const double twice_u =
      static_cast<double>(twice_rank_sum) - static_cast<double>(positives) * (positives + 1);
  return twice_u / (2.0 * static_cast<double>(positives) * static_cast<double>(negatives));
}

Metrics compute_metrics(const std::vector<bool>& predicted, const std::vector<double>& scores,
                        const std::vector<bool>& truth) {
  if (truth.empty()) throw std::invalid_argument("no predictions to score");
  if (predicted.size() != truth.size() || scores.size() != truth.size()) {
    throw std::invalid_argument("predictions, scores and truth differ in length");
  }
  Metrics m;
  auto& c = m.confusion;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (predicted[i]) {
      (truth[i] ? c.tp : c.fp) += 1;
    } else {
      (truth[i] ? c.fn : c.tn) += 1;
    }
  }
  const auto ratio = [](std::size_t num, std::size_t den) {
    return den ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
  };
  if (c.tp + c.fp == 0) m.warnings.emplace_back("precision undefined: no positive predictions");
  if (c.tp + c.fn == 0) m.warnings.emplace_back("recall undefined: no positives in truth");
  if (c.tn + c.fp == 0) m.warnings.emplace_back("auc undefined: no negatives in truth");
  m.precision = ratio(c.tp, c.tp + c.fp);
  m.recall = ratio(c.tp, c.tp + c.fn);
  m.f_measure = m.precision + m.recall > 0
                    ? 2 * m.precision * m.recall / (m.precision + m.recall)
                    : 0.0;
  m.accuracy = ratio(c.tp + c.tn, truth.size());
  m.auc = area_under_roc(scores, truth);
  return m;
}

Metrics mean_metrics(const std::vector<Metrics>& rows) {
  Metrics mean;
  if (rows.empty()) return mean;
  for (const auto& r : rows) {
    mean.precision += r.precision;
    mean.recall += r.recall;
    mean.f_measure += r.f_measure;
    mean.accuracy += r.accuracy;
    mean.auc += r.auc;
    mean.confusion.tp += r.confusion.tp;
    mean.confusion.tn += r.confusion.tn;
    mean.confusion.fp += r.confusion.fp;
    mean.confusion.fn += r.confusion.fn;
  }
  const double n = static_cast<double>(rows.size());
  mean.precision /= n;
  mean.recall /= n;
  mean.f_measure /= n;
  mean.accuracy /= n;
  mean.auc /= n;
  return mean;
}

}  // namespace lifescope::ml
