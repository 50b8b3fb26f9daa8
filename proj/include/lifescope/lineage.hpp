#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lifescope/common.hpp"
#include "lifescope/corpus.hpp"

namespace lifescope::lineage {

/// Interns normalized tokens into dense indices.
class TokenDictionary {
 public:
  std::uint32_t intern(std::string_view token);
  /// -1 when the token has not been interned.
  std::int64_t find(std::string_view token) const;
  std::size_t size() const { return tokens_.size(); }
  const std::string& token(std::uint32_t index) const { return tokens_.at(index); }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

struct EmbedOptions {
  // Map identifiers to ID0, ID1, ... in order of first appearance.
  bool normalize_identifiers = false;
};

/// Token-count vector over a dictionary. `entries` are sorted by index and
/// every stored count is at least 1.
struct CodeEmbedding {
  SparseVector entries;
  double norm = 0.0;

  friend bool operator==(const CodeEmbedding&, const CodeEmbedding&) = default;
};

/// The normalized token stream of a source: comments stripped, numbers
/// replaced by NUM and strings by STR.
std::vector<std::string> normalized_tokens(std::string_view source, const EmbedOptions& options = {});

CodeEmbedding embed_tokens(const std::vector<std::string>& tokens, TokenDictionary& dictionary);
CodeEmbedding embed(std::string_view source, TokenDictionary& dictionary,
                    const EmbedOptions& options = {});
CodeEmbedding embed(const corpus::ContractRecord& record, TokenDictionary& dictionary,
                    const EmbedOptions& options = {});

class SimilarityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// 1 - |e1 - e2| / (|e1| + |e2|), clamped to [0, 1]. Throws SimilarityError
/// when both embeddings are zero.
double similarity(const CodeEmbedding& e1, const CodeEmbedding& e2);
double similarity(const SparseVector& e1, const SparseVector& e2);

/// Similarity of two sources over a dictionary built from just those two.
double source_similarity(std::string_view a, std::string_view b, const EmbedOptions& options = {});

struct PsPair {
  corpus::ContractRecord predecessor;
  corpus::ContractRecord successor;
  double similarity = 0.0;
};

struct PairOptions {
  double threshold = 0.6;  // a pair is kept when similarity > threshold
  EmbedOptions embed;
  bool parallel = true;
};

/// Filters every PL pair of every group by similarity. Pairs of two
/// token-free sources have no defined similarity and are skipped. Output is
/// sorted by predecessor address, similarity descending, successor address.
std::vector<PsPair> find_ps_pairs(const std::vector<corpus::CreatorGroup>& groups,
                                  const PairOptions& options = {});

}  // namespace lifescope::lineage
