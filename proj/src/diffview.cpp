#include "lifescope/diffview.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>

namespace lifescope::diff {

namespace {

constexpr std::string_view kNoNewline = "\\ No newline at end of file\n";

std::string whitespace_free(std::string_view line) {
  std::string out;
  for (char c : line) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

void append(std::vector<DiffHunk>& hunks, HunkKind kind, DiffLine line, const DiffLine* other = nullptr) {
  if (hunks.empty() || hunks.back().kind != kind) hunks.push_back({kind, {}, {}});
  hunks.back().lines.push_back(std::move(line));
  if (other) hunks.back().counterpart.push_back(*other);
}

}  // namespace

std::string_view to_string(HunkKind kind) {
  switch (kind) {
    case HunkKind::Common: return "common";
    case HunkKind::Removed: return "removed";
    case HunkKind::Added: return "added";
  }
  return "common";
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto nl = text.find('\n', start);
    const auto end = nl == std::string_view::npos ? text.size() : nl + 1;
    out.emplace_back(text.substr(start, end - start));
    start = end;
  }
  return out;
}

std::vector<DiffHunk> lcs_diff(std::string_view a_text, std::string_view b_text, const DiffOptions& options) {
  const auto a = split_lines(a_text);
  const auto b = split_lines(b_text);
  std::vector<std::string> ka, kb;
  if (options.ignore_blank) {
    for (const auto& l : a) ka.push_back(whitespace_free(l));
    for (const auto& l : b) kb.push_back(whitespace_free(l));
  }
  const auto& key_a = options.ignore_blank ? ka : a;
  const auto& key_b = options.ignore_blank ? kb : b;

  std::vector<DiffHunk> hunks;
  std::size_t i = 0, j = 0;
  auto emit_common = [&] {
    append(hunks, HunkKind::Common, {i + 1, a[i]}, nullptr);
    hunks.back().counterpart.push_back({j + 1, b[j]});
    ++i;
    ++j;
  };
  while (i < a.size() && j < b.size() && key_a[i] == key_b[j]) emit_common();

  // lcs[(r) * cols + c] is the LCS length of a[i0 + r ..] and b[j0 + c ..].
  const std::size_t i0 = i, j0 = j;
  const std::size_t rows = a.size() - i0 + 1, cols = b.size() - j0 + 1;
  std::vector<std::uint32_t> lcs(rows * cols, 0);
  for (std::size_t r = rows - 1; r-- > 0;) {
    for (std::size_t c = cols - 1; c-- > 0;) {
      lcs[r * cols + c] = key_a[i0 + r] == key_b[j0 + c]
                              ? lcs[(r + 1) * cols + c + 1] + 1
                              : std::max(lcs[(r + 1) * cols + c], lcs[r * cols + c + 1]);
    }
  }
  auto at = [&](std::size_t ii, std::size_t jj) { return lcs[(ii - i0) * cols + (jj - j0)]; };

  std::vector<DiffLine> removed, added;
  auto flush = [&] {
    for (auto& l : removed) append(hunks, HunkKind::Removed, std::move(l));
    for (auto& l : added) append(hunks, HunkKind::Added, std::move(l));
    removed.clear();
    added.clear();
  };
  while (i < a.size() || j < b.size()) {
    if (i < a.size() && j < b.size() && key_a[i] == key_b[j]) {
      flush();
      emit_common();
    } else if (j < b.size() && (i == a.size() || at(i, j + 1) >= at(i + 1, j))) {
      added.push_back({j + 1, b[j]});
      ++j;
    } else {
      removed.push_back({i + 1, a[i]});
      ++i;
    }
  }
  flush();
  return hunks;
}

std::size_t common_line_count(const std::vector<DiffHunk>& hunks) {
  std::size_t n = 0;
  for (const auto& h : hunks) {
    if (h.kind == HunkKind::Common) n += h.lines.size();
  }
  return n;
}

bool has_changes(const std::vector<DiffHunk>& hunks) {
  return std::any_of(hunks.begin(), hunks.end(), [](const DiffHunk& h) { return h.kind != HunkKind::Common; });
}

std::string reconstruct_a(const std::vector<DiffHunk>& hunks) {
  std::string out;
  for (const auto& h : hunks) {
    if (h.kind == HunkKind::Added) continue;
    for (const auto& l : h.lines) out += l.text;
  }
  return out;
}

std::string reconstruct_b(const std::vector<DiffHunk>& hunks) {
  std::string out;
  for (const auto& h : hunks) {
    if (h.kind == HunkKind::Removed) continue;
    for (const auto& l : h.kind == HunkKind::Common ? h.counterpart : h.lines) out += l.text;
  }
  return out;
}

std::string apply_diff(std::string_view a, const std::vector<DiffHunk>& hunks) {
  const auto lines = split_lines(a);
  std::size_t next = 0;
  std::string out;
  for (const auto& h : hunks) {
    if (h.kind == HunkKind::Added) {
      for (const auto& l : h.lines) out += l.text;
      continue;
    }
    for (const auto& l : h.lines) {
      if (next >= lines.size() || lines[next] != l.text) {
        throw PatchError("diff does not apply at line " + std::to_string(next + 1));
      }
      ++next;
    }
    if (h.kind == HunkKind::Common) {
      for (const auto& l : h.counterpart) out += l.text;
    }
  }
  if (next != lines.size()) throw PatchError("diff leaves " + std::to_string(lines.size() - next) + " lines unmatched");
  return out;
}

std::string render_diff(const std::vector<DiffHunk>& hunks, const DiffOptions& options) {
  std::string out;
  for (const auto& h : hunks) {
    if (options.ignore_blank && h.kind != HunkKind::Common &&
        std::all_of(h.lines.begin(), h.lines.end(), [](const DiffLine& l) { return is_blank(l.text); })) {
      continue;
    }
    const char mark = h.kind == HunkKind::Common ? ' ' : h.kind == HunkKind::Removed ? '-' : '+';
    for (const auto& l : h.lines) {
      out += mark;
      out += l.text;
      if (l.text.empty() || l.text.back() != '\n') {
        out += '\n';
        out += kNoNewline;
      }
    }
  }
  return out;
}

std::string apply_rendered(std::string_view a, std::string_view rendered) {
  const auto source = split_lines(a);
  const auto diff_lines = split_lines(rendered);
  std::size_t next = 0;
  std::string out;
  for (std::size_t k = 0; k < diff_lines.size(); ++k) {
    const auto& d = diff_lines[k];
    if (d.empty() || (d[0] != ' ' && d[0] != '-' && d[0] != '+')) {
      throw PatchError("unexpected diff line " + std::to_string(k + 1));
    }
    std::string text = d.substr(1);
    if (k + 1 < diff_lines.size() && diff_lines[k + 1] == kNoNewline) {
      if (!text.empty() && text.back() == '\n') text.pop_back();
      ++k;
    }
    if (d[0] != '+') {
      if (next >= source.size() || source[next] != text) {
        throw PatchError("diff does not apply at line " + std::to_string(next + 1));
      }
      ++next;
    }
    if (d[0] != '-') out += text;
  }
  if (next != source.size()) throw PatchError("diff leaves " + std::to_string(source.size() - next) + " lines unmatched");
  return out;
}

}  // namespace lifescope::diff
