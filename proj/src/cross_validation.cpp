#include "lifescope/cross_validation.hpp"

#include <future>
#include <numeric>
#include <stdexcept>

#include "lifescope/random.hpp"
#include "lifescope/textprep.hpp"

namespace lifescope::ml {

std::vector<std::uint32_t> assign_folds(std::size_t n, std::size_t parts, std::uint64_t seed) {
  if (parts == 0) throw std::invalid_argument("number of parts must be positive");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(order));
  std::vector<std::uint32_t> folds(n);
  for (std::size_t p = 0; p < parts; ++p) {
    for (std::size_t i = p * n / parts; i < (p + 1) * n / parts; ++i) {
      folds[order[i]] = static_cast<std::uint32_t>(p);
    }
  }
  return folds;
}

std::vector<std::uint32_t> test_parts_for_round(std::size_t round, std::size_t parts,
                                                std::size_t test_parts) {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < test_parts; ++i) {
    out.push_back(static_cast<std::uint32_t>((round + i) % parts));
  }
  return out;
}

namespace {

RoundResult run_round(const Dataset& data, Algorithm algorithm, std::size_t round,
                      std::uint64_t seed, const CvOptions& options) {
  RoundResult result;
  result.round = round;
  result.test_parts = test_parts_for_round(round, options.parts, options.test_parts);
  std::vector<bool> is_test_part(options.parts, false);
  for (auto p : result.test_parts) is_test_part[p] = true;

  std::vector<std::size_t> train_idx;
  for (std::size_t i = 0; i < data.labels.size(); ++i) {
    (is_test_part[data.fold_ids[i]] ? result.test_indices : train_idx).push_back(i);
  }
  result.train_size = train_idx.size();
  if (train_idx.empty() || result.test_indices.empty()) {
    throw std::invalid_argument("round " + std::to_string(round) + " has an empty split");
  }

  std::vector<std::vector<std::string>> train_docs;
  train_docs.reserve(train_idx.size());
  for (auto i : train_idx) train_docs.push_back(data.stems[i]);
  const auto vocab = text::Vocabulary::build(train_docs);
  result.vocab_size = vocab.size();

  std::vector<SparseVector> train_vecs;
  std::vector<bool> train_labels;
  for (auto i : train_idx) {
    train_vecs.push_back(text::vectorize(data.stems[i], vocab));
    train_labels.push_back(data.labels[i]);
  }
  const Model model = train(algorithm, Examples{train_vecs, train_labels}, vocab.size(),
                            options.hyperparameters, mix_seed(seed, round));

  std::vector<bool> predicted, truth;
  std::vector<double> scores;
  for (auto i : result.test_indices) {
    const auto p = model.predict(text::vectorize(data.stems[i], vocab));
    predicted.push_back(p.label);
    scores.push_back(p.score);
    truth.push_back(data.labels[i]);
  }
  result.metrics = compute_metrics(predicted, scores, truth);
  return result;
}

}  // namespace

CvReport cross_validate(const Dataset& data, Algorithm algorithm, std::uint64_t seed,
                        const CvOptions& options) {
  const std::size_t n = data.labels.size();
  if (data.stems.size() != n || data.fold_ids.size() != n) {
    throw std::invalid_argument("dataset columns differ in length");
  }
  if (options.parts == 0 || options.test_parts == 0 || options.test_parts >= options.parts) {
    throw std::invalid_argument("need 0 < test parts < parts");
  }
  if (n < options.parts) {
    throw std::invalid_argument("dataset has " + std::to_string(n) + " examples; at least " +
                                std::to_string(options.parts) + " are needed");
  }
  for (auto f : data.fold_ids) {
    if (f >= options.parts) throw std::invalid_argument("fold id out of range");
  }

  CvReport report;
  report.algorithm = algorithm;
  if (options.parallel) {
    std::vector<std::future<RoundResult>> futures;
    for (std::size_t r = 0; r < options.parts; ++r) {
      futures.push_back(std::async(std::launch::async, run_round, std::cref(data), algorithm, r,
                                   seed, std::cref(options)));
    }
    for (auto& f : futures) report.rounds.push_back(f.get());
  } else {
    for (std::size_t r = 0; r < options.parts; ++r) {
      report.rounds.push_back(run_round(data, algorithm, r, seed, options));
    }
  }
  std::vector<Metrics> rows;
  for (const auto& r : report.rounds) rows.push_back(r.metrics);
  report.average = mean_metrics(rows);
  return report;
}

}  // namespace lifescope::ml
