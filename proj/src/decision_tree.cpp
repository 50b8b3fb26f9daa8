#include <algorithm>
#include <unordered_map>

#include "lifescope/ml.hpp"
#include "lifescope/random.hpp"

namespace lifescope::ml {

namespace {

double gini(double positives, double total) {
  if (total <= 0) return 0.0;
  const double p = positives / total;
  return 1.0 - p * p - (1.0 - p) * (1.0 - p);
}

double value_of(const SparseVector& x, std::uint32_t feature) {
  auto it = std::lower_bound(x.begin(), x.end(), feature,
                             [](const SparseEntry& e, std::uint32_t f) { return e.index < f; });
  return (it != x.end() && it->index == feature) ? it->value : 0.0;
}

struct Cell {
  std::uint32_t feature;
  double value;
  bool label;
};

struct FeatureRange {
  std::uint32_t feature;
  std::size_t begin;
  std::size_t end;
};

struct Split {
  bool found = false;
  double impurity = 0.0;
  std::uint32_t feature = 0;
  double threshold = 0.0;
};

bool better(const Split& a, const Split& b) {
  if (!b.found) return true;
  if (a.impurity != b.impurity) return a.impurity < b.impurity;
  if (a.feature != b.feature) return a.feature < b.feature;
  return a.threshold < b.threshold;
}

// Best threshold for one feature. `cells` holds the node's non-zero values of
// that feature sorted ascending; the other samples sit at zero.
Split best_threshold(std::uint32_t feature, std::span<const Cell> cells, std::size_t total,
                     std::size_t total_pos) {
  Split best;
  const std::size_t zeros = total - cells.size();
  std::size_t zero_pos = total_pos;
  for (const auto& c : cells) zero_pos -= c.label ? 1 : 0;

  // Sweep left partitions: zeros first, then each run of equal values.
  std::size_t left_n = zeros;
  std::size_t left_pos = zero_pos;
  double left_max = 0.0;
  std::size_t i = 0;
  if (zeros == 0) {
    // The first run seeds the left side; no threshold below it.
    const double v = cells[0].value;
    while (i < cells.size() && cells[i].value == v) {
      ++left_n;
      left_pos += cells[i].label ? 1 : 0;
      ++i;
    }
    left_max = v;
  }
  while (i < cells.size()) {
    const double next = cells[i].value;
    const std::size_t right_n = total - left_n;
    const double imp = (left_n * gini(static_cast<double>(left_pos), static_cast<double>(left_n)) +
                        right_n * gini(static_cast<double>(total_pos - left_pos),
                                       static_cast<double>(right_n))) /
                       static_cast<double>(total);
    Split s{true, imp, feature, left_max + (next - left_max) / 2.0};
    if (!best.found || imp < best.impurity) best = s;
    while (i < cells.size() && cells[i].value == next) {
      ++left_n;
      left_pos += cells[i].label ? 1 : 0;
      ++i;
    }
    left_max = next;
  }
  return best;
}

class TreeBuilder {
 public:
  TreeBuilder(const Examples& data, std::size_t n_features, const TreeOptions& options,
              std::uint64_t seed)
      : data_(data), n_features_(n_features), options_(options), rng_(seed) {}

  DecisionTree build(std::span<const std::uint32_t> sample) {
    struct Work {
      std::int32_t node;
      std::vector<std::uint32_t> sample;
    };
    DecisionTree tree;
    std::vector<Work> stack;
    tree.nodes.emplace_back();
    stack.push_back({0, std::vector<std::uint32_t>(sample.begin(), sample.end())});

    while (!stack.empty()) {
      Work w = std::move(stack.back());
      stack.pop_back();

      std::size_t pos = 0;
      for (auto s : w.sample) pos += data_.labels[s] ? 1 : 0;
      const std::size_t n = w.sample.size();
      TreeNode& node = tree.nodes[static_cast<std::size_t>(w.node)];
      node.samples = static_cast<std::uint32_t>(n);
      node.score = n ? static_cast<double>(pos) / static_cast<double>(n) : 0.0;
      node.impurity = gini(static_cast<double>(pos), static_cast<double>(n));
      if (n < options_.min_samples_split || pos == 0 || pos == n) continue;

      const Split split = find_split(w.sample, pos);
      if (!split.found) continue;

      std::vector<std::uint32_t> left, right;
      for (auto s : w.sample) {
        (value_of(data_.vectors[s], split.feature) > split.threshold ? right : left).push_back(s);
      }
      const auto left_id = static_cast<std::int32_t>(tree.nodes.size());
      tree.nodes.emplace_back();
      tree.nodes.emplace_back();
      TreeNode& parent = tree.nodes[static_cast<std::size_t>(w.node)];
      parent.feature = static_cast<std::int32_t>(split.feature);
      parent.threshold = split.threshold;
      parent.left = left_id;
      parent.right = left_id + 1;
      // Right pushed first so the left subtree is expanded first.
      stack.push_back({left_id + 1, std::move(right)});
      stack.push_back({left_id, std::move(left)});
    }
    return tree;
  }

 private:
  Split find_split(const std::vector<std::uint32_t>& sample, std::size_t pos) {
    cells_.clear();
    for (auto s : sample) {
      for (const auto& e : data_.vectors[s]) {
        if (e.index >= n_features_ || e.value == 0.0) continue;
        cells_.push_back({e.index, e.value, static_cast<bool>(data_.labels[s])});
      }
    }
    std::sort(cells_.begin(), cells_.end(), [](const Cell& a, const Cell& b) {
      if (a.feature != b.feature) return a.feature < b.feature;
      if (a.value != b.value) return a.value < b.value;
      return a.label < b.label;
    });
    ranges_.clear();
    for (std::size_t i = 0; i < cells_.size();) {
      std::size_t j = i;
      while (j < cells_.size() && cells_[j].feature == cells_[i].feature) ++j;
      ranges_.push_back({cells_[i].feature, i, j});
      i = j;
    }

    const std::size_t n = sample.size();
    auto evaluate = [&](const FeatureRange& r) -> Split {
      std::span<const Cell> cells(cells_.data() + r.begin, r.end - r.begin);
      const bool constant = cells.size() == n && cells.front().value == cells.back().value;
      if (constant) return {};
      return best_threshold(r.feature, cells, n, pos);
    };

    Split best;
    if (options_.max_features == 0 || options_.max_features >= n_features_) {
      for (const auto& r : ranges_) {
        Split s = evaluate(r);
        if (s.found && better(s, best)) best = s;
      }
      return best;
    }

    // Draw features without replacement until max_features have been visited
    // and at least one of them could split the node.
    std::unordered_map<std::uint32_t, std::uint32_t> swapped;
    auto slot = [&](std::uint32_t i) {
      auto it = swapped.find(i);
      return it == swapped.end() ? i : it->second;
    };
    std::size_t visited = 0;
    for (std::uint32_t remaining = static_cast<std::uint32_t>(n_features_); remaining > 0; --remaining) {
      if (visited >= options_.max_features && best.found) break;
      const auto pick = static_cast<std::uint32_t>(rng_.below(remaining));
      const std::uint32_t feature = slot(pick);
      swapped[pick] = slot(remaining - 1);
      ++visited;
      auto it = std::lower_bound(ranges_.begin(), ranges_.end(), feature,
                                 [](const FeatureRange& r, std::uint32_t f) { return r.feature < f; });
      if (it == ranges_.end() || it->feature != feature) continue;
      Split s = evaluate(*it);
      if (s.found && better(s, best)) best = s;
    }
    return best;
  }

  const Examples& data_;
  std::size_t n_features_;
  TreeOptions options_;
  Rng rng_;
  std::vector<Cell> cells_;
  std::vector<FeatureRange> ranges_;
};

}  // namespace

double DecisionTree::score(const SparseVector& x) const {
  if (nodes.empty()) return 0.0;
  std::size_t i = 0;
  while (!nodes[i].is_leaf()) {
    const auto& node = nodes[i];
    const double v = value_of(x, static_cast<std::uint32_t>(node.feature));
    i = static_cast<std::size_t>(v > node.threshold ? node.right : node.left);
  }
  return nodes[i].score;
}

DecisionTree grow_tree(const Examples& data, std::span<const std::uint32_t> sample,
                       std::size_t n_features, const TreeOptions& options, std::uint64_t seed) {
  return TreeBuilder(data, n_features, options, seed).build(sample);
}

}  // namespace lifescope::ml
