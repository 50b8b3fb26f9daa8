#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lifescope::diff {

enum class HunkKind { Common, Removed, Added };

std::string_view to_string(HunkKind kind);

/// A line with its terminator (a final line may lack one) and its 1-based
/// number in the text it came from.
struct DiffLine {
  std::size_t number = 0;
  std::string text;

  friend bool operator==(const DiffLine&, const DiffLine&) = default;
};

/// Removed and common lines come from `a`; added lines come from `b`. A common
/// hunk also carries the matching `b` lines in `counterpart`, which differ from
/// `lines` only when whitespace is ignored.
struct DiffHunk {
  HunkKind kind = HunkKind::Common;
  std::vector<DiffLine> lines;
  std::vector<DiffLine> counterpart;

  friend bool operator==(const DiffHunk&, const DiffHunk&) = default;
};

struct DiffOptions {
  // Align lines that differ only in whitespace, and hide change hunks made of
  // blank lines when rendering.
  bool ignore_blank = false;
};

/// Splits after every '\n'; the last element lacks a terminator when the text
/// does not end with one.
std::vector<std::string> split_lines(std::string_view text);

/// Line-level longest-common-subsequence diff. Among equally long alignments
/// the one matching earlier lines of `a` wins; within a change, removed lines
/// precede added ones.
std::vector<DiffHunk> lcs_diff(std::string_view a, std::string_view b, const DiffOptions& options = {});

std::size_t common_line_count(const std::vector<DiffHunk>& hunks);
bool has_changes(const std::vector<DiffHunk>& hunks);

/// Concatenates common and removed lines.
std::string reconstruct_a(const std::vector<DiffHunk>& hunks);
/// Concatenates common counterparts and added lines.
std::string reconstruct_b(const std::vector<DiffHunk>& hunks);

class PatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Replays hunks against `a`; throws PatchError when `a` does not match.
std::string apply_diff(std::string_view a, const std::vector<DiffHunk>& hunks);

/// One line per diff line prefixed with ' ', '-' or '+'. A line without a
/// terminator is followed by "\ No newline at end of file".
std::string render_diff(const std::vector<DiffHunk>& hunks, const DiffOptions& options = {});

/// Replays render_diff output (without ignore_blank) against `a`.
std::string apply_rendered(std::string_view a, std::string_view rendered);

}  // namespace lifescope::diff
