#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "lifescope/common.hpp"

namespace lifescope::ml {

enum class Algorithm { DecisionTree, Knn, RandomForest, LogisticRegression, NaiveBayes };

/// Short CLI names: dtree, knn, rf, logreg, nb.
std::string_view algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);
const std::vector<Algorithm>& all_algorithms();

struct Hyperparameters {
  std::size_t min_samples_split = 2;
  std::size_t knn_k = 5;
  std::size_t forest_trees = 100;
  double l2_lambda = 1.0;
  double gradient_tolerance = 1e-6;
  std::size_t max_iterations = 1000;
  double smoothing = 1.0;
};

/// Labeled training examples. `labels[i]` belongs to `vectors[i]`.
struct Examples {
  std::span<const SparseVector> vectors;
  const std::vector<bool>& labels;
};

struct TreeNode {
  // Internal nodes send `value > threshold` right. Leaves have feature -1.
  std::int32_t feature = -1;
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  double score = 0.0;      // positive fraction of training samples reaching the node
  std::uint32_t samples = 0;
  double impurity = 0.0;   // Gini of the samples reaching the node

  bool is_leaf() const { return feature < 0; }
};

/// Binary CART tree over sparse non-negative features. Node 0 is the root.
struct DecisionTree {
  std::vector<TreeNode> nodes;

  double score(const SparseVector& x) const;
};

struct TreeOptions {
  std::size_t min_samples_split = 2;
  /// Candidate features per split; 0 means every feature.
  std::size_t max_features = 0;
};

/// Grows a tree without depth limit on the examples selected by `sample`
/// (indices may repeat, as in bootstrap samples). Ties between splits of equal
/// impurity go to the lowest feature index, then the lowest threshold.
DecisionTree grow_tree(const Examples& data, std::span<const std::uint32_t> sample,
                       std::size_t n_features, const TreeOptions& options,
                       std::uint64_t seed);

struct KnnModel {
  std::size_t k = 5;
  std::vector<SparseVector> points;
  std::vector<bool> labels;
};

struct RandomForestModel {
  std::vector<DecisionTree> trees;
};

struct LogisticModel {
  std::vector<double> weights;
  double bias = 0.0;
  std::size_t iterations = 0;
};

/// Multinomial naive Bayes over feature values treated as (fractional) counts.
struct NaiveBayesModel {
  std::uint32_t negatives = 0;
  std::uint32_t positives = 0;
  std::vector<double> log_prob_negative;
  std::vector<double> log_prob_positive;
};

struct Prediction {
  bool label = false;
  double score = 0.0;
};

class Model {
 public:
  using Parameters =
      std::variant<DecisionTree, KnnModel, RandomForestModel, LogisticModel, NaiveBayesModel>;

  Model(Algorithm algorithm, std::size_t vocab_size, Parameters parameters);

  Algorithm algorithm() const { return algorithm_; }
  std::size_t vocab_size() const { return vocab_size_; }
  const Parameters& parameters() const { return parameters_; }

  /// Score in [0, 1]; label is score >= 0.5. Feature indices at or beyond
  /// vocab_size are ignored.
  Prediction predict(const SparseVector& x) const;

  nlohmann::json parameters_to_json() const;
  static Model from_json(Algorithm algorithm, std::size_t vocab_size, const nlohmann::json& params);

 private:
  Algorithm algorithm_;
  std::size_t vocab_size_;
  Parameters parameters_;
};

class TrainingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Deterministic for a given seed. Throws TrainingError on an empty training
/// set, or a single-class set for logistic regression.
Model train(Algorithm algorithm, const Examples& data, std::size_t vocab_size,
            const Hyperparameters& hp, std::uint64_t seed);

}  // namespace lifescope::ml
