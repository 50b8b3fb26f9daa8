#include "lifescope/textprep.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lifescope::text {

namespace detail {
extern const std::string_view kEnglishStopWords;
}

namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_alpha(char c) { return is_upper(c) || is_lower(c); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::vector<std::string> tokenize_words(std::string_view text) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_alpha(text[i])) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && is_alpha(text[i])) ++i;
    words.emplace_back(text.substr(start, i - start));
  }
  return words;
}

std::vector<std::string> split_camel_case(std::string_view word) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 1; i < word.size(); ++i) {
    const char prev = word[i - 1];
    const char cur = word[i];
    const bool boundary =
        (is_lower(prev) && is_upper(cur)) ||
        (is_alpha(prev) && is_digit(cur)) || (is_digit(prev) && is_alpha(cur)) ||
        (is_upper(prev) && is_upper(cur) && i + 1 < word.size() && is_lower(word[i + 1]));
    if (boundary) {
      parts.emplace_back(word.substr(start, i - start));
      start = i;
    }
  }
  if (start < word.size()) parts.emplace_back(word.substr(start));
  return parts;
}

StopWords StopWords::parse(std::string_view text) {
  StopWords sw;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    sw.words_.insert(to_lower(line.substr(first)));
  }
  return sw;
}

StopWords StopWords::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read stop-word file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const StopWords& StopWords::english() {
  static const StopWords list = parse(detail::kEnglishStopWords);
  return list;
}

std::vector<std::string> preprocess(std::string_view text, const StopWords& stop_words) {
  std::vector<std::string> stems;
  for (const auto& token : tokenize_words(text)) {
    for (const auto& part : split_camel_case(token)) {
      std::string word = to_lower(part);
      if (word.size() < 3 || stop_words.contains(word)) continue;
      stems.push_back(porter_stem(word));
    }
  }
  return stems;
}

std::vector<std::string> preprocess(const FunctionRecord& record, const StopWords& stop_words) {
  return preprocess(record.text, stop_words);
}

Vocabulary::Vocabulary(std::vector<std::string> words, std::vector<std::uint32_t> df,
                       std::uint32_t n_functions)
    : words_(std::move(words)), df_(std::move(df)), n_functions_(n_functions) {
  if (words_.size() != df_.size()) {
    throw std::invalid_argument("vocabulary words and df differ in length");
  }
  index_.reserve(words_.size());
  for (std::uint32_t i = 0; i < words_.size(); ++i) index_.emplace(words_[i], i);
}

Vocabulary Vocabulary::build(const std::vector<std::vector<std::string>>& training_docs) {
  if (training_docs.empty()) throw std::invalid_argument("cannot build a vocabulary from no functions");
  std::map<std::string, std::uint32_t> df;
  for (const auto& doc : training_docs) {
    std::vector<std::string_view> unique(doc.begin(), doc.end());
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (auto w : unique) ++df[std::string(w)];
  }
  std::vector<std::string> words;
  std::vector<std::uint32_t> counts;
  words.reserve(df.size());
  counts.reserve(df.size());
  for (auto& [w, c] : df) {
    words.push_back(w);
    counts.push_back(c);
  }
  return Vocabulary(std::move(words), std::move(counts),
                    static_cast<std::uint32_t>(training_docs.size()));
}

std::int64_t Vocabulary::index_of(std::string_view word) const {
  auto it = index_.find(std::string(word));
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

Vocabulary build_vocab(const std::vector<FunctionRecord>& training, const StopWords& stop_words) {
  std::vector<std::vector<std::string>> docs;
  docs.reserve(training.size());
  for (const auto& r : training) docs.push_back(preprocess(r, stop_words));
  return Vocabulary::build(docs);
}

TfIdfVector vectorize(const std::vector<std::string>& stems, const Vocabulary& vocab) {
  std::map<std::uint32_t, std::uint32_t> tf;
  for (const auto& s : stems) {
    const auto idx = vocab.index_of(s);
    if (idx >= 0) ++tf[static_cast<std::uint32_t>(idx)];
  }
  TfIdfVector v;
  v.reserve(tf.size());
  const double n = vocab.n_functions();
  for (auto [idx, count] : tf) {
    const double w = count * std::log(n / vocab.df()[idx]);
    if (w != 0.0) v.push_back({idx, w});
  }
  return v;
}

TfIdfVector vectorize(const FunctionRecord& record, const Vocabulary& vocab,
                      const StopWords& stop_words) {
  return vectorize(preprocess(record, stop_words), vocab);
}

}  // namespace lifescope::text
