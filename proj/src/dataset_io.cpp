#include "lifescope/dataset_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>

namespace lifescope::io {

using nlohmann::json;

namespace {

constexpr int kModelFormatVersion = 1;

template <typename T>
T required(const json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("missing field `") + key + "`");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw FormatError(std::string("field `") + key + "` has the wrong type");
  }
}

}  // namespace

json function_to_json(const FunctionRecord& r, std::optional<std::uint32_t> fold) {
  json j = {{"contract", r.contract},
            {"name", r.name},
            {"text", r.text},
            {"modifiers", r.modifiers},
            {"label", r.label}};
  if (fold) j["fold"] = *fold;
  return j;
}

FunctionRecord function_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("record is not an object");
  FunctionRecord r;
  r.contract = required<std::string>(j, "contract");
  r.name = required<std::string>(j, "name");
  r.text = required<std::string>(j, "text");
  r.modifiers = required<std::vector<std::string>>(j, "modifiers");
  r.label = required<bool>(j, "label");
  return r;
}

FunctionDataset parse_function_dataset(std::istream& in) {
  FunctionDataset out;
  std::vector<std::optional<std::uint32_t>> folds;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      auto record = function_from_json(j);
      std::optional<std::uint32_t> fold;
      if (j.contains("fold")) fold = required<std::uint32_t>(j, "fold");
      out.records.push_back(std::move(record));
      folds.push_back(fold);
    } catch (const json::parse_error&) {
      out.diagnostics.push_back({number, "not a JSON object"});
    } catch (const FormatError& e) {
      out.diagnostics.push_back({number, e.what()});
    }
  }
  const bool all_folds = !folds.empty() && std::all_of(folds.begin(), folds.end(), [](auto& f) { return f.has_value(); });
  if (all_folds) {
    for (auto& f : folds) out.folds.push_back(*f);
  }
  return out;
}

FunctionDataset load_function_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path.string());
  return parse_function_dataset(in);
}

json model_to_json(const ModelFile& file) {
  return {{"format_version", kModelFormatVersion},
          {"algorithm", std::string(ml::algorithm_name(file.model.algorithm()))},
          {"vocab",
           {{"words", file.vocab.words()}, {"df", file.vocab.df()}, {"n", file.vocab.n_functions()}}},
          {"parameters", file.model.parameters_to_json()}};
}

ModelFile model_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("model file is not a JSON object");
  if (required<int>(j, "format_version") != kModelFormatVersion) {
    throw FormatError("unsupported model format version");
  }
  const auto algo = ml::parse_algorithm(required<std::string>(j, "algorithm"));
  if (!algo) throw FormatError("unknown algorithm in model file");
  const json vocab = required<json>(j, "vocab");
  auto words = required<std::vector<std::string>>(vocab, "words");
  auto df = required<std::vector<std::uint32_t>>(vocab, "df");
  const auto n = required<std::uint32_t>(vocab, "n");
  if (words.size() != df.size()) throw FormatError("vocabulary words and df differ in length");
  const auto size = words.size();
  try {
    text::Vocabulary v(std::move(words), std::move(df), n);
    return {std::move(v), ml::Model::from_json(*algo, size, required<json>(j, "parameters"))};
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed model parameters: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("malformed model: ") + e.what());
  }
}

ModelFile load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path.string());
  try {
    return model_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace lifescope::io
