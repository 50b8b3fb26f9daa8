#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lifescope/common.hpp"

namespace lifescope::corpus {

/// One deployed contract. Addresses are `0x` + 40 lowercase hex digits.
struct ContractRecord {
  std::string address;
  std::string creator;
  std::int64_t created_at = 0;
  bool destructed = false;
  std::optional<std::int64_t> destructed_at;
  std::string source;
  std::optional<std::string> compiler_version;

  friend bool operator==(const ContractRecord&, const ContractRecord&) = default;
};

/// Contracts deployed by one creator, ordered by (created_at, address).
struct CreatorGroup {
  std::string creator;
  std::vector<ContractRecord> contracts;
};

/// A destructed contract and a same-creator contract deployed after it.
/// Both pointers borrow from the CreatorGroup the pair was enumerated from.
struct PlPair {
  const ContractRecord* predecessor = nullptr;
  const ContractRecord* later = nullptr;
};

struct LoadResult {
  std::vector<ContractRecord> records;
  std::vector<Diagnostic> diagnostics;
};

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Returns the lowercase `0x`-prefixed form, or nullopt when `text` is not a
/// 20-byte hex address.
std::optional<std::string> normalize_address(std::string_view text);

/// Parses one corpus line. Throws CorpusError naming the offending field.
ContractRecord parse_record(std::string_view line);
std::string serialize_record(const ContractRecord& record);

/// Reads line-delimited records. Malformed lines are skipped and reported;
/// blank lines are ignored. Throws CorpusError when the file cannot be read.
LoadResult load_corpus(const std::filesystem::path& path);
LoadResult parse_corpus(std::istream& in);

/// Partitions records by creator without filtering. Groups are ordered by
/// creator address.
std::vector<CreatorGroup> group_by_creator(std::vector<ContractRecord> records);

/// group_by_creator, keeping only groups with at least one destructed contract.
std::vector<CreatorGroup> cluster_by_creator(std::vector<ContractRecord> records);

/// Every (destructed P, later L) pair in group order: all pairs for the first
/// destructed contract, then the next, and so on.
std::vector<PlPair> pl_pairs(const CreatorGroup& group);

}  // namespace lifescope::corpus
