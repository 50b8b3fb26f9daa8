#include <algorithm>
#include <cmath>
#include <numeric>

#include "lifescope/ml.hpp"
#include "lifescope/random.hpp"

namespace lifescope::ml {

using nlohmann::json;

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::DecisionTree: return "dtree";
    case Algorithm::Knn: return "knn";
    case Algorithm::RandomForest: return "rf";
    case Algorithm::LogisticRegression: return "logreg";
    case Algorithm::NaiveBayes: return "nb";
  }
  return "dtree";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (auto a : all_algorithms()) {
    if (algorithm_name(a) == name) return a;
  }
  return std::nullopt;
}

const std::vector<Algorithm>& all_algorithms() {
  static const std::vector<Algorithm> all = {Algorithm::DecisionTree, Algorithm::Knn,
                                             Algorithm::RandomForest,
                                             Algorithm::LogisticRegression, Algorithm::NaiveBayes};
  return all;
}

namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double dot(const std::vector<double>& w, const SparseVector& x) {
  double s = 0.0;
  for (const auto& e : x) {
    if (e.index < w.size()) s += w[e.index] * e.value;
  }
  return s;
}

SparseVector clip(const SparseVector& x, std::size_t dim) {
  SparseVector out;
  for (const auto& e : x) {
    if (e.index < dim) out.push_back(e);
  }
  return out;
}

double knn_score(const KnnModel& m, const SparseVector& x) {
  if (m.points.empty()) return 0.0;
  std::vector<std::pair<double, std::size_t>> dist;
  dist.reserve(m.points.size());
  for (std::size_t i = 0; i < m.points.size(); ++i) {
    dist.emplace_back(squared_distance(m.points[i], x), i);
  }
  const std::size_t k = std::min(m.k, dist.size());
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
  std::size_t pos = 0;
  for (std::size_t i = 0; i < k; ++i) pos += m.labels[dist[i].second] ? 1 : 0;
  return static_cast<double>(pos) / static_cast<double>(k);
}

double naive_bayes_score(const NaiveBayesModel& m, const SparseVector& x) {
  const double n = static_cast<double>(m.negatives) + m.positives;
  if (m.positives == 0) return 0.0;
  if (m.negatives == 0) return 1.0;
  double neg = std::log(m.negatives / n);
  double pos = std::log(m.positives / n);
  for (const auto& e : x) {
    if (e.index >= m.log_prob_positive.size()) continue;
    neg += e.value * m.log_prob_negative[e.index];
    pos += e.value * m.log_prob_positive[e.index];
  }
  return sigmoid(pos - neg);
}

std::vector<std::uint32_t> all_indices(std::size_t n) {
  std::vector<std::uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0u);
  return idx;
}

LogisticModel train_logistic(const Examples& data, std::size_t dim, const Hyperparameters& hp) {
  const std::size_t n = data.vectors.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  // Step 1/L with L bounding the Lipschitz constant of the gradient:
  // 0.25 * mean(|x|^2 + 1) for the log-loss plus lambda/n for the penalty.
  double mean_sq = 0.0;
  for (const auto& x : data.vectors) mean_sq += squared_norm(clip(x, dim)) + 1.0;
  mean_sq *= inv_n;
  const double step = 1.0 / (0.25 * mean_sq + hp.l2_lambda * inv_n);

  LogisticModel m;
  m.weights.assign(dim, 0.0);
  std::vector<double> grad(dim);
  for (m.iterations = 0; m.iterations < hp.max_iterations; ++m.iterations) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& x = data.vectors[i];
      const double r = sigmoid(dot(m.weights, x) + m.bias) - (data.labels[i] ? 1.0 : 0.0);
      for (const auto& e : x) {
        if (e.index < dim) grad[e.index] += r * e.value;
      }
      grad_b += r;
    }
    double norm_sq = grad_b * inv_n * grad_b * inv_n;
    for (std::size_t f = 0; f < dim; ++f) {
      grad[f] = grad[f] * inv_n + hp.l2_lambda * inv_n * m.weights[f];
      norm_sq += grad[f] * grad[f];
    }
    if (std::sqrt(norm_sq) < hp.gradient_tolerance) break;
    for (std::size_t f = 0; f < dim; ++f) m.weights[f] -= step * grad[f];
    m.bias -= step * grad_b * inv_n;
  }
  return m;
}

NaiveBayesModel train_naive_bayes(const Examples& data, std::size_t dim, const Hyperparameters& hp) {
  NaiveBayesModel m;
  std::vector<double> sum_neg(dim, 0.0), sum_pos(dim, 0.0);
  for (std::size_t i = 0; i < data.vectors.size(); ++i) {
    auto& sums = data.labels[i] ? sum_pos : sum_neg;
    (data.labels[i] ? m.positives : m.negatives) += 1;
    for (const auto& e : data.vectors[i]) {
      if (e.index < dim) sums[e.index] += e.value;
    }
  }
  auto log_probs = [&](const std::vector<double>& sums) {
    const double total = std::accumulate(sums.begin(), sums.end(), 0.0) + hp.smoothing * static_cast<double>(dim);
    std::vector<double> out(dim);
    for (std::size_t f = 0; f < dim; ++f) out[f] = std::log((sums[f] + hp.smoothing) / total);
    return out;
  };
  m.log_prob_negative = log_probs(sum_neg);
  m.log_prob_positive = log_probs(sum_pos);
  return m;
}

json tree_to_json(const DecisionTree& t) {
  json nodes = json::array();
  for (const auto& n : t.nodes) {
    nodes.push_back({n.feature, n.threshold, n.left, n.right, n.score, n.samples, n.impurity});
  }
  return nodes;
}

DecisionTree tree_from_json(const json& j) {
  DecisionTree t;
  for (const auto& n : j) {
    TreeNode node;
    node.feature = n.at(0).get<std::int32_t>();
    node.threshold = n.at(1).get<double>();
    node.left = n.at(2).get<std::int32_t>();
    node.right = n.at(3).get<std::int32_t>();
    node.score = n.at(4).get<double>();
    node.samples = n.at(5).get<std::uint32_t>();
    node.impurity = n.at(6).get<double>();
    t.nodes.push_back(node);
  }
  const auto count = static_cast<std::int32_t>(t.nodes.size());
  for (std::int32_t i = 0; i < count; ++i) {
    const auto& n = t.nodes[static_cast<std::size_t>(i)];
    if (!n.is_leaf() && (n.left <= i || n.right <= i || n.left >= count || n.right >= count)) {
      throw std::invalid_argument("decision tree node refers outside the tree");
    }
  }
  return t;
}

json sparse_to_json(const SparseVector& v) {
  json arr = json::array();
  for (const auto& e : v) arr.push_back({e.index, e.value});
  return arr;
}

SparseVector sparse_from_json(const json& j) {
  SparseVector v;
  for (const auto& e : j) v.push_back({e.at(0).get<std::uint32_t>(), e.at(1).get<double>()});
  return v;
}

}  // namespace

Model::Model(Algorithm algorithm, std::size_t vocab_size, Parameters parameters)
    : algorithm_(algorithm), vocab_size_(vocab_size), parameters_(std::move(parameters)) {}

Prediction Model::predict(const SparseVector& raw) const {
  const SparseVector x = clip(raw, vocab_size_);
  double score = std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DecisionTree>) {
          return p.score(x);
        } else if constexpr (std::is_same_v<T, KnnModel>) {
          return knn_score(p, x);
        } else if constexpr (std::is_same_v<T, RandomForestModel>) {
          if (p.trees.empty()) return 0.0;
          double sum = 0.0;
          for (const auto& t : p.trees) sum += t.score(x);
          return sum / static_cast<double>(p.trees.size());
        } else if constexpr (std::is_same_v<T, LogisticModel>) {
          return sigmoid(dot(p.weights, x) + p.bias);
        } else {
          return naive_bayes_score(p, x);
        }
      },
      parameters_);
  score = std::clamp(score, 0.0, 1.0);
  return {score >= 0.5, score};
}

json Model::parameters_to_json() const {
  return std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DecisionTree>) {
          return {{"nodes", tree_to_json(p)}};
        } else if constexpr (std::is_same_v<T, KnnModel>) {
          json points = json::array();
          for (const auto& v : p.points) points.push_back(sparse_to_json(v));
          json labels = json::array();
          for (bool l : p.labels) labels.push_back(l);
          return {{"k", p.k}, {"points", points}, {"labels", labels}};
        } else if constexpr (std::is_same_v<T, RandomForestModel>) {
          json trees = json::array();
          for (const auto& t : p.trees) trees.push_back(tree_to_json(t));
          return {{"trees", trees}};
        } else if constexpr (std::is_same_v<T, LogisticModel>) {
          return {{"weights", p.weights}, {"bias", p.bias}, {"iterations", p.iterations}};
        } else {
          return {{"negatives", p.negatives},
                  {"positives", p.positives},
                  {"log_prob_negative", p.log_prob_negative},
                  {"log_prob_positive", p.log_prob_positive}};
        }
      },
      parameters_);
}

Model Model::from_json(Algorithm algorithm, std::size_t vocab_size, const json& j) {
  switch (algorithm) {
    case Algorithm::DecisionTree:
      return Model(algorithm, vocab_size, tree_from_json(j.at("nodes")));
    case Algorithm::Knn: {
      KnnModel m;
      m.k = j.at("k").get<std::size_t>();
      for (const auto& v : j.at("points")) m.points.push_back(sparse_from_json(v));
      for (const auto& l : j.at("labels")) m.labels.push_back(l.get<bool>());
      if (m.points.size() != m.labels.size() || m.k == 0) {
        throw std::invalid_argument("malformed knn parameters");
      }
      return Model(algorithm, vocab_size, std::move(m));
    }
    case Algorithm::RandomForest: {
      RandomForestModel m;
      for (const auto& t : j.at("trees")) m.trees.push_back(tree_from_json(t));
      return Model(algorithm, vocab_size, std::move(m));
    }
    case Algorithm::LogisticRegression: {
      LogisticModel m;
      m.weights = j.at("weights").get<std::vector<double>>();
      m.bias = j.at("bias").get<double>();
      m.iterations = j.at("iterations").get<std::size_t>();
      return Model(algorithm, vocab_size, std::move(m));
    }
    case Algorithm::NaiveBayes: {
      NaiveBayesModel m;
      m.negatives = j.at("negatives").get<std::uint32_t>();
      m.positives = j.at("positives").get<std::uint32_t>();
      m.log_prob_negative = j.at("log_prob_negative").get<std::vector<double>>();
      m.log_prob_positive = j.at("log_prob_positive").get<std::vector<double>>();
      if (m.log_prob_negative.size() != m.log_prob_positive.size()) {
        throw std::invalid_argument("malformed naive Bayes parameters");
      }
      return Model(algorithm, vocab_size, std::move(m));
    }
  }
  throw std::invalid_argument("unknown algorithm");
}

Model train(Algorithm algorithm, const Examples& data, std::size_t vocab_size,
            const Hyperparameters& hp, std::uint64_t seed) {
  const std::size_t n = data.vectors.size();
  if (n == 0) throw TrainingError("cannot train on an empty slice");
  if (data.labels.size() != n) throw TrainingError("vectors and labels differ in length");

  switch (algorithm) {
    case Algorithm::DecisionTree: {
      const auto sample = all_indices(n);
      TreeOptions opt{hp.min_samples_split, 0};
      return Model(algorithm, vocab_size, grow_tree(data, sample, vocab_size, opt, seed));
    }
    case Algorithm::Knn: {
      KnnModel m;
      m.k = hp.knn_k;
      for (const auto& v : data.vectors) m.points.push_back(clip(v, vocab_size));
      m.labels = data.labels;
      return Model(algorithm, vocab_size, std::move(m));
    }
    case Algorithm::RandomForest: {
      RandomForestModel m;
      const auto max_features = std::max<std::size_t>(
          1, static_cast<std::size_t>(std::sqrt(static_cast<double>(vocab_size))));
      TreeOptions opt{hp.min_samples_split, max_features};
      Rng rng(seed);
      std::vector<std::uint32_t> sample(n);
      for (std::size_t t = 0; t < hp.forest_trees; ++t) {
        for (auto& s : sample) s = static_cast<std::uint32_t>(rng.below(n));
        m.trees.push_back(grow_tree(data, sample, vocab_size, opt, mix_seed(seed, t)));
      }
      return Model(algorithm, vocab_size, std::move(m));
    }
    case Algorithm::LogisticRegression: {
      const auto pos = static_cast<std::size_t>(std::count(data.labels.begin(), data.labels.end(), true));
      if (pos == 0 || pos == n) {
        throw TrainingError("logistic regression needs both labels in the training slice");
      }
      return Model(algorithm, vocab_size, train_logistic(data, vocab_size, hp));
    }
    case Algorithm::NaiveBayes:
      return Model(algorithm, vocab_size, train_naive_bayes(data, vocab_size, hp));
  }
  throw TrainingError("unknown algorithm");
}

}  // namespace lifescope::ml
