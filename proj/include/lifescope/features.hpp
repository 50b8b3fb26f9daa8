#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lifescope/function_record.hpp"

namespace lifescope::features {

/// Joint counts of word presence (w) and label (t) over functions.
struct JointCounts {
  std::size_t word_pos = 0;    // n(w, t)
  std::size_t word_neg = 0;    // n(w, not t)
  std::size_t absent_pos = 0;  // n(not w, t)
  std::size_t absent_neg = 0;  // n(not w, not t)

  std::size_t total() const { return word_pos + word_neg + absent_pos + absent_neg; }
};

struct IgEntry {
  std::string word;
  double ig = 0.0;
  JointCounts counts;
};

/// Mutual information (natural log) between each word's presence and the
/// label, with 0 * log 0 = 0. Sorted by descending IG, then word.
/// Throws std::invalid_argument on empty or mismatched input.
std::vector<IgEntry> information_gain(const std::vector<std::vector<std::string>>& docs,
                                      const std::vector<bool>& labels);

/// IG of one 2x2 table.
double information_gain(const JointCounts& counts);

/// Entropy (natural log) of the label distribution.
double label_entropy(const std::vector<bool>& labels);

/// Substring rule: a function needs a permission check when its lowercased
/// text contains any keyword.
struct KeywordRule {
  std::vector<std::string> keywords;

  static KeywordRule defaults();
  /// One keyword per line; blank lines and `#` comments skipped.
  static KeywordRule load(const std::filesystem::path& path);
};

bool keyword_predict(std::string_view function_text, const KeywordRule& rule);
bool keyword_predict(const FunctionRecord& record, const KeywordRule& rule);

}  // namespace lifescope::features
