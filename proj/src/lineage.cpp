#include "lifescope/lineage.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <string>
#include <thread>

#include "lifescope/solfront.hpp"

namespace lifescope::lineage {

std::uint32_t TokenDictionary::intern(std::string_view token) {
  std::string key(token);
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  const auto index = static_cast<std::uint32_t>(tokens_.size());
  tokens_.push_back(key);
  index_.emplace(std::move(key), index);
  return index;
}

std::int64_t TokenDictionary::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::vector<std::string> normalized_tokens(std::string_view source, const EmbedOptions& options) {
  const std::string stripped = sol::strip_comments(source);
  std::vector<std::string> out;
  std::unordered_map<std::string, std::size_t> ids;
  for (auto& t : sol::lex(stripped)) {
    switch (t.kind) {
      case sol::TokenKind::Number:
        out.emplace_back("NUM");
        break;
      case sol::TokenKind::String:
        out.emplace_back("STR");
        break;
      case sol::TokenKind::Identifier:
        if (options.normalize_identifiers) {
          auto [it, fresh] = ids.try_emplace(t.text, ids.size());
          out.push_back("ID" + std::to_string(it->second));
          break;
        }
        out.push_back(std::move(t.text));
        break;
      default:
        out.push_back(std::move(t.text));
    }
  }
  return out;
}

CodeEmbedding embed_tokens(const std::vector<std::string>& tokens, TokenDictionary& dictionary) {
  std::map<std::uint32_t, double> counts;
  for (const auto& t : tokens) counts[dictionary.intern(t)] += 1.0;
  CodeEmbedding e;
  e.entries.reserve(counts.size());
  for (auto [index, count] : counts) e.entries.push_back({index, count});
  e.norm = std::sqrt(squared_norm(e.entries));
  return e;
}

CodeEmbedding embed(std::string_view source, TokenDictionary& dictionary, const EmbedOptions& options) {
  return embed_tokens(normalized_tokens(source, options), dictionary);
}

CodeEmbedding embed(const corpus::ContractRecord& record, TokenDictionary& dictionary,
                    const EmbedOptions& options) {
  return embed(record.source, dictionary, options);
}

double similarity(const SparseVector& e1, const SparseVector& e2) {
  const double n1 = std::sqrt(squared_norm(e1));
  const double n2 = std::sqrt(squared_norm(e2));
  if (n1 + n2 == 0.0) throw SimilarityError("similarity is undefined for two zero embeddings");
  const double s = 1.0 - std::sqrt(squared_distance(e1, e2)) / (n1 + n2);
  return std::clamp(s, 0.0, 1.0);
}

double similarity(const CodeEmbedding& e1, const CodeEmbedding& e2) {
  return similarity(e1.entries, e2.entries);
}

double source_similarity(std::string_view a, std::string_view b, const EmbedOptions& options) {
  TokenDictionary dictionary;
  const auto ea = embed(a, dictionary, options);
  const auto eb = embed(b, dictionary, options);
  return similarity(ea, eb);
}

namespace {

struct Candidate {
  const corpus::ContractRecord* predecessor;
  const corpus::ContractRecord* later;
  const std::vector<std::string>* p_tokens;
  const std::vector<std::string>* l_tokens;
};

// Returns a negative value when the pair has no defined similarity.
double score(const Candidate& c) {
  TokenDictionary dictionary;
  const auto ep = embed_tokens(*c.p_tokens, dictionary);
  const auto el = embed_tokens(*c.l_tokens, dictionary);
  if (ep.entries.empty() && el.entries.empty()) return -1.0;
  return similarity(ep, el);
}

}  // namespace

std::vector<PsPair> find_ps_pairs(const std::vector<corpus::CreatorGroup>& groups,
                                  const PairOptions& options) {
  std::map<const corpus::ContractRecord*, std::vector<std::string>> tokens;
  std::vector<Candidate> candidates;
  for (const auto& group : groups) {
    for (const auto& pl : corpus::pl_pairs(group)) {
      for (const auto* r : {pl.predecessor, pl.later}) {
        if (!tokens.count(r)) tokens.emplace(r, normalized_tokens(r->source, options.embed));
      }
      candidates.push_back({pl.predecessor, pl.later, &tokens.at(pl.predecessor), &tokens.at(pl.later)});
    }
  }

  std::vector<double> scores(candidates.size());
  if (options.parallel && candidates.size() > 1) {
    const std::size_t workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < candidates.size(); i += workers) scores[i] = score(candidates[i]);
      }));
    }
    for (auto& j : jobs) j.get();
  } else {
    for (std::size_t i = 0; i < candidates.size(); ++i) scores[i] = score(candidates[i]);
  }

  std::vector<PsPair> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (scores[i] < 0.0 || !(scores[i] > options.threshold)) continue;
    out.push_back({*candidates[i].predecessor, *candidates[i].later, scores[i]});
  }
  std::stable_sort(out.begin(), out.end(), [](const PsPair& a, const PsPair& b) {
    if (a.predecessor.address != b.predecessor.address) return a.predecessor.address < b.predecessor.address;
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.successor.address < b.successor.address;
  });
  return out;
}

}  // namespace lifescope::lineage
