#pragma once

#include <string>
#include <vector>

namespace lifescope {

/// One function prepared for the permission dataset. `text` is the function
/// source with comments blanked and modifier invocations removed; `label`
/// records whether the original declaration carried a permission modifier.
struct FunctionRecord {
  std::string contract;
  std::string name;
  std::string text;
  std::vector<std::string> modifiers;
  bool label = false;

  friend bool operator==(const FunctionRecord&, const FunctionRecord&) = default;
};

}  // namespace lifescope
