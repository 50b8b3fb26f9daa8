#include "lifescope/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>

#include "json.hpp"

namespace lifescope::corpus {

using nlohmann::json;

std::optional<std::string> normalize_address(std::string_view text) {
  if (text.size() != 42 || text[0] != '0' || (text[1] != 'x' && text[1] != 'X')) {
    return std::nullopt;
  }
  std::string out = "0x";
  for (char c : text.substr(2)) {
    if (!std::isxdigit(static_cast<unsigned char>(c))) return std::nullopt;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

namespace {

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw CorpusError(std::string("missing field '") + key + "'");
  return *it;
}

std::string require_address(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_string()) throw CorpusError(std::string("field '") + key + "' must be a string");
  auto addr = normalize_address(v.get<std::string>());
  if (!addr) throw CorpusError(std::string("field '") + key + "' is not a 20-byte hex address");
  return *addr;
}

std::int64_t require_time(const json& v, const char* key) {
  if (!v.is_number_integer()) {
    throw CorpusError(std::string("field '") + key + "' must be an integer");
  }
  return v.get<std::int64_t>();
}

}  // namespace

ContractRecord parse_record(std::string_view line) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw CorpusError(std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) throw CorpusError("record must be a JSON object");

  ContractRecord r;
  r.address = require_address(obj, "address");
  r.creator = require_address(obj, "creator");
  r.created_at = require_time(require(obj, "created_at"), "created_at");

  const json& destructed = require(obj, "destructed");
  if (!destructed.is_boolean()) throw CorpusError("field 'destructed' must be a boolean");
  r.destructed = destructed.get<bool>();

  if (auto it = obj.find("destructed_at"); it != obj.end() && !it->is_null()) {
    r.destructed_at = require_time(*it, "destructed_at");
    if (!r.destructed) throw CorpusError("'destructed_at' given for a live contract");
    if (*r.destructed_at < r.created_at) {
      throw CorpusError("'destructed_at' precedes 'created_at'");
    }
  }

  const json& source = require(obj, "source");
  if (!source.is_string()) throw CorpusError("field 'source' must be a string");
  r.source = source.get<std::string>();
  if (r.source.empty()) throw CorpusError("field 'source' is empty");

  if (auto it = obj.find("compiler_version"); it != obj.end() && !it->is_null()) {
    if (!it->is_string()) throw CorpusError("field 'compiler_version' must be a string");
    r.compiler_version = it->get<std::string>();
  }
  return r;
}

std::string serialize_record(const ContractRecord& r) {
  json obj = {{"address", r.address},
              {"creator", r.creator},
              {"created_at", r.created_at},
              {"destructed", r.destructed}};
  if (r.destructed_at) obj["destructed_at"] = *r.destructed_at;
  obj["source"] = r.source;
  if (r.compiler_version) obj["compiler_version"] = *r.compiler_version;
  return obj.dump();
}

LoadResult parse_corpus(std::istream& in) {
  LoadResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      result.records.push_back(parse_record(line));
    } catch (const CorpusError& e) {
      result.diagnostics.push_back({line_no, e.what()});
    }
  }
  return result;
}

LoadResult load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot read corpus file " + path.string());
  return parse_corpus(in);
}

std::vector<CreatorGroup> group_by_creator(std::vector<ContractRecord> records) {
  std::map<std::string, std::vector<ContractRecord>> by_creator;
  for (auto& r : records) by_creator[r.creator].push_back(std::move(r));

  std::vector<CreatorGroup> groups;
  groups.reserve(by_creator.size());
  for (auto& [creator, members] : by_creator) {
    std::sort(members.begin(), members.end(), [](const auto& a, const auto& b) {
      if (a.created_at != b.created_at) return a.created_at < b.created_at;
      return a.address < b.address;
    });
    groups.push_back({creator, std::move(members)});
  }
  return groups;
}

std::vector<CreatorGroup> cluster_by_creator(std::vector<ContractRecord> records) {
  auto groups = group_by_creator(std::move(records));
  std::erase_if(groups, [](const CreatorGroup& g) {
    return std::none_of(g.contracts.begin(), g.contracts.end(),
                        [](const ContractRecord& r) { return r.destructed; });
  });
  return groups;
}

std::vector<PlPair> pl_pairs(const CreatorGroup& group) {
  std::vector<PlPair> pairs;
  const auto& cs = group.contracts;
  for (std::size_t p = 0; p < cs.size(); ++p) {
    if (!cs[p].destructed) continue;
    for (std::size_t l = p + 1; l < cs.size(); ++l) {
      // Duplicate addresses in a corpus would otherwise pair a contract with itself.
      if (cs[l].address == cs[p].address) continue;
      pairs.push_back({&cs[p], &cs[l]});
    }
  }
  return pairs;
}

}  // namespace lifescope::corpus
