#include "lifescope/solfront.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <iterator>
#include <limits>
#include <span>
#include <unordered_set>
#include <utility>

namespace lifescope::sol {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_digit);
}

// intN / uintN / bytesN / fixedMxN / ufixedMxN
bool is_sized_elementary(std::string_view w) {
  auto suffix_after = [&](std::string_view prefix) -> std::string_view {
    return w.substr(prefix.size());
  };
  if (w.starts_with("uint")) return all_digits(suffix_after("uint"));
  if (w.starts_with("int")) return all_digits(suffix_after("int"));
  if (w.starts_with("bytes")) return all_digits(suffix_after("bytes"));
  std::string_view rest;
  if (w.starts_with("ufixed")) {
    rest = suffix_after("ufixed");
  } else if (w.starts_with("fixed")) {
    rest = suffix_after("fixed");
  } else {
    return false;
  }
  auto x = rest.find('x');
  return x != std::string_view::npos && all_digits(rest.substr(0, x)) &&
         all_digits(rest.substr(x + 1));
}

const std::unordered_set<std::string_view>& keyword_set() {
  static const std::unordered_set<std::string_view> words = {
      "pragma",    "import",    "contract",  "interface", "library",   "abstract",
      "is",        "using",     "for",       "function",  "modifier",  "event",
      "struct",    "enum",      "error",     "constructor", "fallback", "receive",
      "returns",   "return",    "public",    "private",   "internal",  "external",
      "view",      "pure",      "constant",  "payable",   "virtual",   "override",
      "memory",    "storage",   "calldata",  "indexed",   "anonymous", "immutable",
      "if",        "else",      "while",     "do",        "break",     "continue",
      "throw",     "emit",      "new",       "delete",    "try",       "catch",
      "assembly",  "unchecked", "mapping",   "true",      "false",     "address",
      "bool",      "string",    "bytes",     "byte",      "int",       "uint",
      "fixed",     "ufixed",    "var",       "this",      "super",     "let",
      "transient",
  };
  return words;
}

bool is_visibility(std::string_view w) {
  return w == "public" || w == "external" || w == "internal" || w == "private";
}
bool is_mutability(std::string_view w) {
  return w == "view" || w == "pure" || w == "constant" || w == "payable";
}
bool is_data_location(std::string_view w) {
  return w == "memory" || w == "storage" || w == "calldata";
}

Visibility parse_visibility(std::string_view w) {
  if (w == "public") return Visibility::Public;
  if (w == "external") return Visibility::External;
  if (w == "internal") return Visibility::Internal;
  return Visibility::Private;
}

Mutability parse_mutability(std::string_view w) {
  if (w == "view") return Mutability::View;
  if (w == "pure") return Mutability::Pure;
  if (w == "constant") return Mutability::Constant;
  return Mutability::Payable;
}

constexpr std::array<std::string_view, 26> kOperators = {
    ">>>=", ">>=", "<<=", ">>>", "**", "==", "!=", "<=", ">=", "&&", "||", "++", "--",
    "+=",   "-=",  "*=",  "/=",  "%=", "|=", "&=", "^=", "<<", ">>", "=>", "->", ":="};

bool is_word(const Token& t) {
  return t.kind == TokenKind::Identifier || t.kind == TokenKind::Keyword;
}

}  // namespace

bool is_keyword(std::string_view word) {
  return keyword_set().contains(word) || is_sized_elementary(word);
}

std::string canonical_type_word(std::string_view word) {
  if (word == "uint") return "uint256";
  if (word == "int") return "int256";
  if (word == "byte") return "bytes1";
  return std::string(word);
}

std::string_view to_string(Visibility v) {
  switch (v) {
    case Visibility::Public: return "public";
    case Visibility::External: return "external";
    case Visibility::Internal: return "internal";
    case Visibility::Private: return "private";
    case Visibility::Default: break;
  }
  return "default";
}

std::string_view to_string(Mutability m) {
  switch (m) {
    case Mutability::View: return "view";
    case Mutability::Pure: return "pure";
    case Mutability::Constant: return "constant";
    case Mutability::Payable: return "payable";
    case Mutability::None: break;
  }
  return "none";
}

std::string_view to_string(UnitKind k) {
  switch (k) {
    case UnitKind::Interface: return "interface";
    case UnitKind::Library: return "library";
    case UnitKind::Contract: break;
  }
  return "contract";
}

std::string strip_comments(std::string_view source, std::vector<Diagnostic>* diagnostics) {
  std::string out(source);
  const std::size_t n = source.size();
  std::size_t line = 1;
  auto blank = [&](std::size_t i) {
    if (out[i] != '\n' && out[i] != '\r') out[i] = ' ';
  };

  std::size_t i = 0;
  while (i < n) {
    const char c = source[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (c == '"' || c == '\'') {
      ++i;
      while (i < n && source[i] != c && source[i] != '\n') {
        i += (source[i] == '\\' && i + 1 < n && source[i + 1] != '\n') ? 2 : 1;
      }
      if (i < n && source[i] == c) ++i;
    } else if (c == '/' && i + 1 < n && source[i + 1] == '/') {
      while (i < n && source[i] != '\n') blank(i++);
    } else if (c == '/' && i + 1 < n && source[i + 1] == '*') {
      const std::size_t start_line = line;
      blank(i);
      blank(i + 1);
      i += 2;
      bool closed = false;
      while (i < n) {
        if (source[i] == '*' && i + 1 < n && source[i + 1] == '/') {
          blank(i);
          blank(i + 1);
          i += 2;
          closed = true;
          break;
        }
        if (source[i] == '\n') ++line;
        blank(i++);
      }
      if (!closed && diagnostics) {
        diagnostics->push_back({start_line, "unterminated block comment"});
      }
    } else {
      ++i;
    }
  }
  return out;
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> tokens;
  const std::size_t n = text.size();
  std::size_t line = 1;
  std::size_t i = 0;

  auto push = [&](TokenKind kind, std::size_t start, std::size_t end) {
    tokens.push_back({kind, std::string(text.substr(start, end - start)), line, start});
  };

  while (i < n) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;

    if (is_ident_start(c)) {
      while (i < n && is_ident_char(text[i])) ++i;
      const auto word = text.substr(start, i - start);
      push(is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier, start, i);
      continue;
    }

    if (is_digit(c) || (c == '.' && i + 1 < n && is_digit(text[i + 1]))) {
      if (c == '0' && i + 1 < n && (text[i + 1] == 'x' || text[i + 1] == 'X')) {
        i += 2;
        while (i < n && (std::isxdigit(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
      } else {
        while (i < n && (is_digit(text[i]) || text[i] == '_' || text[i] == '.')) ++i;
        if (i < n && (text[i] == 'e' || text[i] == 'E')) {
          std::size_t j = i + 1;
          if (j < n && text[j] == '-') ++j;
          if (j < n && is_digit(text[j])) {
            i = j;
            while (i < n && (is_digit(text[i]) || text[i] == '_')) ++i;
          }
        }
      }
      push(TokenKind::Number, start, i);
      continue;
    }

    if (c == '"' || c == '\'') {
      ++i;
      while (i < n && text[i] != c && text[i] != '\n') {
        i += (text[i] == '\\' && i + 1 < n && text[i + 1] != '\n') ? 2 : 1;
      }
      if (i < n && text[i] == c) ++i;
      push(TokenKind::String, start, i);
      continue;
    }

    std::size_t len = 1;
    for (auto op : kOperators) {
      if (text.substr(i).starts_with(op)) {
        len = op.size();
        break;
      }
    }
    i += len;
    push(TokenKind::Punctuation, start, i);
  }
  return tokens;
}

namespace {

class UnitParser {
 public:
  UnitParser(std::string_view text, const std::vector<Token>& tokens, ParseResult& out)
      : text_(text), toks_(tokens), out_(out), match_(match_brackets(tokens)) {}

  void run() {
    std::size_t i = 0;
    while (i < toks_.size()) {
      const Token& t = toks_[i];
      bool is_abstract = false;
      std::size_t k = i;
      if (t.text == "abstract" && k + 1 < toks_.size() && toks_[k + 1].text == "contract") {
        is_abstract = true;
        ++k;
      }
      const std::string& word = toks_[k].text;
      if ((word == "contract" || word == "interface" || word == "library") &&
          toks_[k].kind == TokenKind::Keyword && k + 1 < toks_.size() &&
          toks_[k + 1].kind == TokenKind::Identifier) {
        i = parse_unit(k, is_abstract);
      } else if (t.text == "{" && match_[i] != kNone) {
        i = match_[i] + 1;
      } else {
        ++i;
      }
    }
  }

 private:
  // Links each bracket to its partner. A closer without an opener, and an
  // opener that is never closed, map to kNone.
  static std::vector<std::size_t> match_brackets(const std::vector<Token>& toks) {
    std::vector<std::size_t> match(toks.size(), kNone);
    std::vector<std::size_t> stack;
    auto opener_for = [](const std::string& s) -> char {
      if (s == ")") return '(';
      if (s == "]") return '[';
      if (s == "}") return '{';
      return 0;
    };
    for (std::size_t i = 0; i < toks.size(); ++i) {
      const auto& t = toks[i];
      if (t.kind != TokenKind::Punctuation) continue;
      if (t.text == "(" || t.text == "[" || t.text == "{") {
        stack.push_back(i);
        continue;
      }
      const char want = opener_for(t.text);
      if (!want) continue;
      auto it = std::find_if(stack.rbegin(), stack.rend(),
                             [&](std::size_t s) { return toks[s].text[0] == want; });
      if (it == stack.rend()) continue;
      const std::size_t open = *it;
      stack.erase(std::next(it).base(), stack.end());
      match[open] = i;
      match[i] = open;
    }
    return match;
  }

  bool is(std::size_t i, std::string_view s) const {
    return i < toks_.size() && toks_[i].text == s;
  }

  void diag(std::size_t tok, std::string message) {
    const std::size_t line = tok < toks_.size() ? toks_[tok].line : (toks_.empty() ? 1 : toks_.back().line);
    out_.diagnostics.push_back({line, std::move(message)});
  }

  std::size_t end_offset(std::size_t tok) const {
    return toks_[tok].offset + toks_[tok].text.size();
  }

  // Index just past the member starting at k: after a depth-0 `;`, or after
  // the first depth-0 `{...}` block.
  std::size_t skip_member(std::size_t k, std::size_t end) const {
    while (k < end) {
      const auto& s = toks_[k].text;
      if (toks_[k].kind == TokenKind::Punctuation && (s == "(" || s == "[" || s == "{")) {
        if (match_[k] == kNone || match_[k] >= end) return end;
        if (s == "{") return match_[k] + 1;
        k = match_[k] + 1;
        continue;
      }
      if (s == ";") return k + 1;
      ++k;
    }
    return end;
  }

  std::size_t parse_unit(std::size_t k, bool is_abstract) {
    ContractUnit unit;
    const auto& kw = toks_[k].text;
    unit.kind = kw == "interface" ? UnitKind::Interface
                : kw == "library" ? UnitKind::Library
                                  : UnitKind::Contract;
    unit.is_abstract = is_abstract;
    unit.name = toks_[k + 1].text;
    unit.line = toks_[k].line;

    std::size_t j = k + 2;
    if (is(j, "is")) {
      ++j;
      bool expect_name = true;
      while (j < toks_.size() && !is(j, "{") && !is(j, ";")) {
        if (is(j, "(") && match_[j] != kNone) {
          j = match_[j] + 1;
          continue;
        }
        if (is(j, ",")) {
          expect_name = true;
        } else if (expect_name && toks_[j].kind == TokenKind::Identifier) {
          std::string base = toks_[j].text;
          while (is(j + 1, ".") && j + 2 < toks_.size()) {
            base += "." + toks_[j + 2].text;
            j += 2;
          }
          unit.bases.push_back(std::move(base));
          expect_name = false;
        }
        ++j;
      }
    }
    if (!is(j, "{")) {
      diag(k, "expected '{' after " + kw + " " + unit.name + "; declaration skipped");
      return j + 1;
    }
    std::size_t close = match_[j];
    if (close == kNone) {
      diag(j, "unbalanced braces in " + kw + " " + unit.name + "; unit truncated at end of input");
      close = toks_.size();
    }
    parse_members(unit, j + 1, close);
    out_.units.push_back(std::move(unit));
    return close + 1;
  }

  void parse_members(ContractUnit& unit, std::size_t k, std::size_t end) {
    while (k < end) {
      const Token& t = toks_[k];
      const std::string& w = t.text;
      if (w == ";" || w == "}") {
        ++k;
      } else if (w == "function" && t.kind == TokenKind::Keyword) {
        k = parse_function(unit, k, end, FunctionKind::Regular);
      } else if (w == "constructor" && is(k + 1, "(")) {
        k = parse_function(unit, k, end, FunctionKind::Constructor);
      } else if (w == "fallback" && is(k + 1, "(")) {
        k = parse_function(unit, k, end, FunctionKind::Fallback);
      } else if (w == "receive" && is(k + 1, "(")) {
        k = parse_function(unit, k, end, FunctionKind::Receive);
      } else if (w == "modifier" && t.kind == TokenKind::Keyword) {
        if (k + 1 < end && is_word(toks_[k + 1])) {
          unit.modifier_decls.push_back(toks_[k + 1].text);
        } else {
          diag(k, "modifier declaration without a name; skipped");
        }
        k = skip_member(k, end);
      } else if (w == "event" && t.kind == TokenKind::Keyword) {
        k = parse_event(unit, k, end);
      } else if (t.kind == TokenKind::Keyword &&
                 (w == "struct" || w == "enum" || w == "using" || w == "error" ||
                  w == "pragma" || w == "import")) {
        k = skip_member(k, end);
      } else {
        k = parse_state_var(unit, k, end);
      }
    }
  }

  // Token range [from, to) holding comma-separated parameters.
  std::vector<Param> parse_params(std::size_t from, std::size_t to) const {
    std::vector<Param> params;
    std::vector<const Token*> segment;
    auto flush = [&] {
      std::vector<const Token*> kept;
      for (const Token* t : segment) {
        if (t->kind == TokenKind::Keyword && (is_data_location(t->text) || t->text == "indexed")) {
          continue;
        }
        kept.push_back(t);
      }
      segment.clear();
      if (kept.empty()) return;
      Param p;
      std::size_t type_end = kept.size();
      if (kept.size() >= 2 && kept.back()->kind == TokenKind::Identifier &&
          kept[kept.size() - 2]->text != ".") {
        p.name = kept.back()->text;
        type_end = kept.size() - 1;
      }
      p.type_name = join_type(std::span<const Token* const>(kept.data(), type_end));
      params.push_back(std::move(p));
    };
    for (std::size_t i = from; i < to; ++i) {
      const Token& t = toks_[i];
      if (t.kind == TokenKind::Punctuation && (t.text == "(" || t.text == "[") &&
          match_[i] != kNone && match_[i] < to) {
        for (std::size_t j = i; j <= match_[i]; ++j) segment.push_back(&toks_[j]);
        i = match_[i];
        continue;
      }
      if (t.text == ",") {
        flush();
        continue;
      }
      segment.push_back(&t);
    }
    flush();
    return params;
  }

  static std::string join_type(std::span<const Token* const> toks) {
    std::string out;
    bool prev_word = false;
    for (const Token* t : toks) {
      const bool word = is_word(*t);
      if (word && prev_word) out += ' ';
      out += word ? canonical_type_word(t->text) : t->text;
      prev_word = word;
    }
    return out;
  }

  std::size_t parse_function(ContractUnit& unit, std::size_t k, std::size_t end,
                             FunctionKind kind) {
    FunctionDecl fn;
    fn.kind = kind;
    fn.line = toks_[k].line;
    std::size_t p = k + 1;
    switch (kind) {
      case FunctionKind::Constructor: fn.name = "constructor"; break;
      case FunctionKind::Receive: fn.name = "receive"; break;
      case FunctionKind::Fallback: break;
      case FunctionKind::Regular:
        if (p < end && is_word(toks_[p]) && is(p + 1, "(")) {
          fn.name = toks_[p].text;
          ++p;
        } else if (is(p, "(")) {
          fn.kind = FunctionKind::Fallback;
        } else {
          diag(k, "unreadable function declaration; skipped");
          return skip_member(k, end);
        }
        break;
    }
    if (!is(p, "(") || match_[p] == kNone || match_[p] >= end) {
      diag(k, "function '" + fn.name + "' has an unbalanced parameter list; skipped");
      return skip_member(k, end);
    }
    fn.params = parse_params(p + 1, match_[p]);

    // Old-style constructors share the contract's name; their base
    // constructor calls look like modifier invocations but are not.
    const bool constructor_like =
        fn.kind == FunctionKind::Constructor || (fn.kind == FunctionKind::Regular && fn.name == unit.name);

    std::vector<std::pair<std::size_t, std::size_t>> cut_spans;  // byte ranges to remove
    std::size_t q = match_[p] + 1;
    std::size_t header_end = kNone;
    std::size_t next = end;
    while (q < end) {
      const Token& t = toks_[q];
      if (t.text == "{") {
        header_end = t.offset;
        std::size_t close = match_[q];
        if (close == kNone || close >= end) {
          diag(q, "function '" + fn.name + "' body is not closed; truncated");
          close = end - 1;
          fn.body_text = std::string(text_.substr(t.offset, end_offset(close) - t.offset));
          next = end;
        } else {
          fn.body_text = std::string(text_.substr(t.offset, end_offset(close) - t.offset));
          next = close + 1;
        }
        fn.has_body = true;
        break;
      }
      if (t.text == ";") {
        header_end = t.offset;
        next = q + 1;
        break;
      }
      if (t.kind == TokenKind::Keyword && is_visibility(t.text)) {
        fn.visibility = parse_visibility(t.text);
        ++q;
      } else if (t.kind == TokenKind::Keyword && is_mutability(t.text)) {
        fn.mutability = parse_mutability(t.text);
        ++q;
      } else if (t.text == "virtual") {
        ++q;
      } else if (t.text == "override") {
        ++q;
        if (is(q, "(") && match_[q] != kNone) q = match_[q] + 1;
      } else if (t.text == "returns") {
        if (!is(q + 1, "(") || match_[q + 1] == kNone || match_[q + 1] >= end) {
          diag(q, "function '" + fn.name + "' has an unreadable returns clause; skipped");
          return skip_member(k, end);
        }
        fn.returns = parse_params(q + 2, match_[q + 1]);
        q = match_[q + 1] + 1;
      } else if (t.kind == TokenKind::Identifier) {
        std::size_t span_start = t.offset;
        while (span_start > 0 && std::isspace(static_cast<unsigned char>(text_[span_start - 1]))) {
          --span_start;
        }
        std::string name = t.text;
        std::size_t last = q;
        while (is(last + 1, ".") && last + 2 < end && is_word(toks_[last + 2])) {
          name += "." + toks_[last + 2].text;
          last += 2;
        }
        q = last + 1;
        if (is(q, "(") && match_[q] != kNone && match_[q] < end) {
          last = match_[q];
          q = last + 1;
        }
        const bool base_call = constructor_like &&
            std::find(unit.bases.begin(), unit.bases.end(), name) != unit.bases.end();
        if (!base_call) {
          fn.modifiers.push_back(std::move(name));
          cut_spans.emplace_back(span_start, end_offset(last));
        }
      } else {
        diag(q, "unexpected '" + t.text + "' in header of function '" + fn.name + "'; skipped");
        return skip_member(k, end);
      }
    }
    if (header_end == kNone) {
      diag(k, "function '" + fn.name + "' is missing its body or ';'; skipped");
      return end;
    }

    std::size_t pos = toks_[k].offset;
    for (const auto& [from, to] : cut_spans) {
      fn.stripped_signature.append(text_.substr(pos, from - pos));
      pos = to;
    }
    fn.stripped_signature.append(text_.substr(pos, header_end - pos));
    unit.functions.push_back(std::move(fn));
    return next;
  }

  std::size_t parse_event(ContractUnit& unit, std::size_t k, std::size_t end) {
    if (k + 2 >= end || !is_word(toks_[k + 1]) || !is(k + 2, "(") || match_[k + 2] == kNone ||
        match_[k + 2] >= end) {
      diag(k, "unreadable event declaration; skipped");
      return skip_member(k, end);
    }
    EventDecl ev;
    ev.name = toks_[k + 1].text;
    ev.line = toks_[k].line;
    ev.params = parse_params(k + 3, match_[k + 2]);
    unit.events.push_back(std::move(ev));
    return skip_member(match_[k + 2] + 1, end);
  }

  std::size_t parse_state_var(ContractUnit& unit, std::size_t k, std::size_t end) {
    const std::size_t next = skip_member(k, end);
    std::size_t stop = next;
    if (stop > k && is(stop - 1, ";")) --stop;
    // Anything in braces at depth 0 means this is not a variable declaration.
    for (std::size_t i = k; i < stop; ++i) {
      if (is(i, "=")) {
        stop = i;
        break;
      }
      if (is(i, "{")) {
        diag(k, "unrecognized declaration starting with '" + toks_[k].text + "'; skipped");
        return next;
      }
      if ((is(i, "(") || is(i, "[")) && match_[i] != kNone && match_[i] < stop) i = match_[i];
    }

    auto fail = [&] {
      diag(k, "unrecognized declaration starting with '" + toks_[k].text + "'; skipped");
      return next;
    };

    std::size_t i = k;
    std::size_t type_begin = i;
    if (is(i, "mapping")) {
      if (!is(i + 1, "(") || match_[i + 1] == kNone || match_[i + 1] >= stop) return fail();
      i = match_[i + 1] + 1;
    } else if (i < stop && is_word(toks_[i])) {
      ++i;
      if (toks_[i - 1].text == "address" && is(i, "payable")) ++i;
      while (is(i, ".") && i + 1 < stop && is_word(toks_[i + 1])) i += 2;
    } else {
      return fail();
    }
    while (is(i, "[") && match_[i] != kNone && match_[i] < stop) i = match_[i] + 1;

    std::vector<const Token*> type_toks;
    for (std::size_t t = type_begin; t < i; ++t) type_toks.push_back(&toks_[t]);

    StateVarDecl var;
    var.type_name = join_type(type_toks);
    var.line = toks_[k].line;
    for (; i < stop; ++i) {
      const Token& t = toks_[i];
      if (t.kind == TokenKind::Keyword && is_visibility(t.text)) {
        var.visibility = parse_visibility(t.text);
      } else if (t.text == "constant" || t.text == "immutable") {
        var.constant = true;
      } else if (t.text == "transient") {
        continue;
      } else if (t.text == "override") {
        if (is(i + 1, "(") && match_[i + 1] != kNone) i = match_[i + 1];
      } else if (t.kind == TokenKind::Identifier && var.name.empty()) {
        var.name = t.text;
      } else {
        return fail();
      }
    }
    if (var.name.empty()) return fail();
    unit.state_vars.push_back(std::move(var));
    return next;
  }

  std::string_view text_;
  const std::vector<Token>& toks_;
  ParseResult& out_;
  std::vector<std::size_t> match_;
};

void append_params(std::string& out, const std::vector<Param>& params) {
  out += '(';
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ", ";
    out += params[i].type_name;
    if (!params[i].name.empty()) out += " " + params[i].name;
  }
  out += ')';
}

}  // namespace

ParseResult extract_units(std::string_view source) {
  ParseResult result;
  const std::string stripped = strip_comments(source, &result.diagnostics);
  const auto tokens = lex(stripped);
  UnitParser(stripped, tokens, result).run();
  return result;
}

std::string format_signature(const FunctionDecl& fn) {
  std::string out;
  switch (fn.kind) {
    case FunctionKind::Constructor: out = "constructor"; break;
    case FunctionKind::Fallback: out = "fallback"; break;
    case FunctionKind::Receive: out = "receive"; break;
    case FunctionKind::Regular: out = "function " + fn.name; break;
  }
  append_params(out, fn.params);
  if (fn.visibility != Visibility::Default) out += " " + std::string(to_string(fn.visibility));
  if (fn.mutability != Mutability::None) out += " " + std::string(to_string(fn.mutability));
  for (const auto& m : fn.modifiers) out += " " + m;
  if (!fn.returns.empty()) {
    out += " returns ";
    append_params(out, fn.returns);
  }
  out += fn.has_body ? " {}" : ";";
  return out;
}

std::vector<FunctionRecord> split_functions(const ContractUnit& unit,
                                            std::string_view contract_address,
                                            const ModifierDenyList& deny) {
  std::vector<FunctionRecord> records;
  for (const auto& fn : unit.functions) {
    if (!fn.has_body) continue;
    FunctionRecord r;
    r.contract = std::string(contract_address);
    r.name = fn.name;
    r.text = fn.stripped_signature + fn.body_text;
    r.modifiers = fn.modifiers;
    r.label = std::any_of(fn.modifiers.begin(), fn.modifiers.end(),
                          [&](const std::string& m) { return !deny.contains(m); });
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<FunctionRecord> extract_functions(std::string_view source,
                                              std::string_view contract_address,
                                              const ModifierDenyList& deny,
                                              std::vector<Diagnostic>* diagnostics) {
  auto parsed = extract_units(source);
  if (diagnostics) {
    diagnostics->insert(diagnostics->end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
  }
  std::vector<FunctionRecord> out;
  for (const auto& unit : parsed.units) {
    auto records = split_functions(unit, contract_address, deny);
    std::move(records.begin(), records.end(), std::back_inserter(out));
  }
  return out;
}

}  // namespace lifescope::sol
