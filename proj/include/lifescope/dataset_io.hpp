#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lifescope/common.hpp"
#include "lifescope/function_record.hpp"
#include "lifescope/ml.hpp"
#include "lifescope/textprep.hpp"

namespace lifescope::io {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One function-dataset line: contract, name, text, modifiers, label, and an
/// optional fold.
nlohmann::json function_to_json(const FunctionRecord& record,
                                std::optional<std::uint32_t> fold = std::nullopt);
FunctionRecord function_from_json(const nlohmann::json& j);

struct FunctionDataset {
  std::vector<FunctionRecord> records;
  /// Parallel to `records` when every line carried a fold; empty otherwise.
  std::vector<std::uint32_t> folds;
  std::vector<Diagnostic> diagnostics;
};

/// Malformed lines are skipped and reported. Folds are kept only when every
/// record has one. Throws FormatError when the file cannot be read.
FunctionDataset parse_function_dataset(std::istream& in);
FunctionDataset load_function_dataset(const std::filesystem::path& path);

/// A trained classifier with the vocabulary its features index.
struct ModelFile {
  text::Vocabulary vocab;
  ml::Model model;
};

nlohmann::json model_to_json(const ModelFile& file);
/// Throws FormatError on an unknown version, algorithm or malformed body.
ModelFile model_from_json(const nlohmann::json& j);
ModelFile load_model(const std::filesystem::path& path);

}  // namespace lifescope::io
