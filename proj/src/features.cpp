#include "lifescope/features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

namespace lifescope::features {

namespace {

double term(std::size_t joint, std::size_t row, std::size_t col, double n) {
  if (joint == 0) return 0.0;
  const double p = static_cast<double>(joint) / n;
  return p * std::log(p / ((static_cast<double>(row) / n) * (static_cast<double>(col) / n)));
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

double information_gain(const JointCounts& c) {
  const double n = static_cast<double>(c.total());
  if (n == 0) return 0.0;
  const std::size_t with_word = c.word_pos + c.word_neg;
  const std::size_t without_word = c.absent_pos + c.absent_neg;
  const std::size_t pos = c.word_pos + c.absent_pos;
  const std::size_t neg = c.word_neg + c.absent_neg;
  const double ig = term(c.word_pos, with_word, pos, n) + term(c.word_neg, with_word, neg, n) +
                    term(c.absent_pos, without_word, pos, n) +
                    term(c.absent_neg, without_word, neg, n);
  // Mutual information is non-negative; clear rounding residue.
  return std::max(ig, 0.0);
}

std::vector<IgEntry> information_gain(const std::vector<std::vector<std::string>>& docs,
                                      const std::vector<bool>& labels) {
  if (docs.empty()) throw std::invalid_argument("information gain needs at least one function");
  if (docs.size() != labels.size()) throw std::invalid_argument("docs and labels differ in length");

  const auto positives = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), true));
  const std::size_t negatives = labels.size() - positives;

  std::map<std::string, std::pair<std::size_t, std::size_t>> presence;  // word -> (pos, neg)
  for (std::size_t i = 0; i < docs.size(); ++i) {
    std::vector<std::string_view> unique(docs[i].begin(), docs[i].end());
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (auto w : unique) {
      auto& [p, q] = presence[std::string(w)];
      (labels[i] ? p : q) += 1;
    }
  }

  std::vector<IgEntry> out;
  out.reserve(presence.size());
  for (const auto& [word, pq] : presence) {
    IgEntry e;
    e.word = word;
    e.counts = {pq.first, pq.second, positives - pq.first, negatives - pq.second};
    e.ig = information_gain(e.counts);
    out.push_back(std::move(e));
  }
  std::stable_sort(out.begin(), out.end(), [](const IgEntry& a, const IgEntry& b) {
    if (a.ig != b.ig) return a.ig > b.ig;
    return a.word < b.word;
  });
  return out;
}

double label_entropy(const std::vector<bool>& labels) {
  if (labels.empty()) return 0.0;
  const double n = static_cast<double>(labels.size());
  const double p = static_cast<double>(std::count(labels.begin(), labels.end(), true)) / n;
  double h = 0.0;
  if (p > 0) h -= p * std::log(p);
  if (p < 1) h -= (1 - p) * std::log(1 - p);
  return h;
}

KeywordRule KeywordRule::defaults() {
  return {{"msg.sender.transfer", "ownership", "administr", "mint", "renounce", "mload",
           "assemble", "emerge", "pause", "stop", "unpause"}};
}

KeywordRule KeywordRule::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read keyword file " + path.string());
  KeywordRule rule;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    rule.keywords.push_back(lowercase(line.substr(first, last - first + 1)));
  }
  if (rule.keywords.empty()) throw std::runtime_error("keyword file " + path.string() + " is empty");
  return rule;
}

bool keyword_predict(std::string_view function_text, const KeywordRule& rule) {
  const std::string text = lowercase(function_text);
  return std::any_of(rule.keywords.begin(), rule.keywords.end(), [&](const std::string& k) {
    return text.find(k) != std::string::npos;
  });
}

bool keyword_predict(const FunctionRecord& record, const KeywordRule& rule) {
  return keyword_predict(record.text, rule);
}

}  // namespace lifescope::features
