#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lifescope/common.hpp"
#include "lifescope/function_record.hpp"

namespace lifescope::text {

/// Stem of one lowercase ASCII word (Porter's reference algorithm).
std::string porter_stem(std::string_view word);

/// Maximal runs of ASCII letters; everything else (including `_` and digits)
/// separates words.
std::vector<std::string> tokenize_words(std::string_view text);

/// Splits at lower->upper and letter/digit boundaries; a run of capitals
/// splits before its last capital when a lowercase letter follows
/// ("HTTPServer" -> "HTTP", "Server").
std::vector<std::string> split_camel_case(std::string_view word);

class StopWords {
 public:
  /// The bundled 179-word English list.
  static const StopWords& english();
  /// One word per line; blank lines and lines starting with '#' are ignored.
  static StopWords load(const std::filesystem::path& path);
  static StopWords parse(std::string_view text);

  bool contains(std::string_view word) const { return words_.contains(word); }
  std::size_t size() const { return words_.size(); }

 private:
  std::set<std::string, std::less<>> words_;
};

/// Tokenize, camel-case split, lowercase, drop stop-words and words shorter
/// than three characters, then stem. Order of occurrence is preserved.
std::vector<std::string> preprocess(std::string_view text,
                                    const StopWords& stop_words = StopWords::english());
std::vector<std::string> preprocess(const FunctionRecord& record,
                                    const StopWords& stop_words = StopWords::english());

/// Training-set word table: lexicographically ordered stems, the number of
/// training functions containing each, and the training-set size.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<std::string> words, std::vector<std::uint32_t> df,
             std::uint32_t n_functions);

  /// Throws std::invalid_argument on an empty training set.
  static Vocabulary build(const std::vector<std::vector<std::string>>& training_docs);

  const std::vector<std::string>& words() const { return words_; }
  const std::vector<std::uint32_t>& df() const { return df_; }
  std::uint32_t n_functions() const { return n_functions_; }
  std::size_t size() const { return words_.size(); }

  /// Index of `word`, or -1 when it is out of vocabulary.
  std::int64_t index_of(std::string_view word) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.words_ == b.words_ && a.df_ == b.df_ && a.n_functions_ == b.n_functions_;
  }

 private:
  std::vector<std::string> words_;
  std::vector<std::uint32_t> df_;
  std::uint32_t n_functions_ = 0;
  std::unordered_map<std::string, std::uint32_t> index_;
};

Vocabulary build_vocab(const std::vector<FunctionRecord>& training,
                       const StopWords& stop_words = StopWords::english());

using TfIdfVector = SparseVector;

/// w = tf * ln(n_functions / df) for every in-vocabulary stem, tf being the
/// raw count. Zero weights (stems present in every training function) are
/// omitted.
TfIdfVector vectorize(const std::vector<std::string>& stems, const Vocabulary& vocab);
TfIdfVector vectorize(const FunctionRecord& record, const Vocabulary& vocab,
                      const StopWords& stop_words = StopWords::english());

}  // namespace lifescope::text
