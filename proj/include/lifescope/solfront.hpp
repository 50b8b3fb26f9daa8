#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lifescope/common.hpp"
#include "lifescope/function_record.hpp"

// A Solidity-subset front end: enough structure to read contract members and
// their signatures. Statements and expressions are never parsed; function and
// modifier bodies are captured as opaque brace-balanced text.
namespace lifescope::sol {

enum class TokenKind { Identifier, Keyword, Number, String, Punctuation };

struct Token {
  TokenKind kind = TokenKind::Punctuation;
  std::string text;
  std::size_t line = 1;    // 1-based
  std::size_t offset = 0;  // byte offset into the lexed text
};

/// Blanks `//` and `/* */` comments with spaces, keeping newlines, so the
/// result has the same length and line structure as `source`. String literals
/// are left untouched. An unterminated block comment runs to end of input and
/// is reported through `diagnostics` when given.
std::string strip_comments(std::string_view source,
                           std::vector<Diagnostic>* diagnostics = nullptr);

/// Tokenizes comment-free text. Unknown bytes become one-character
/// punctuation tokens; lexing never fails.
std::vector<Token> lex(std::string_view text);

bool is_keyword(std::string_view word);

/// Applies the alias table (uint -> uint256, int -> int256, byte -> bytes1).
std::string canonical_type_word(std::string_view word);

struct Param {
  std::string type_name;  // canonical, e.g. "uint256[]" or "mapping(address=>uint256)"
  std::string name;       // empty when unnamed

  friend bool operator==(const Param&, const Param&) = default;
};

enum class Visibility { Default, Public, External, Internal, Private };
enum class Mutability { None, View, Pure, Constant, Payable };
enum class FunctionKind { Regular, Constructor, Fallback, Receive };
enum class UnitKind { Contract, Interface, Library };

std::string_view to_string(Visibility v);
std::string_view to_string(Mutability m);
std::string_view to_string(UnitKind k);

struct FunctionDecl {
  FunctionKind kind = FunctionKind::Regular;
  std::string name;  // "" for fallback, "constructor" / "receive" for those kinds
  std::vector<Param> params;
  std::vector<Param> returns;
  Visibility visibility = Visibility::Default;
  Mutability mutability = Mutability::None;
  std::vector<std::string> modifiers;
  bool has_body = false;
  std::string body_text;  // "{...}" including the braces; empty without a body
  std::size_t line = 0;
  // Declaration text from `function` up to the body, with every modifier
  // invocation (and the whitespace before it) cut out.
  std::string stripped_signature;
};

struct EventDecl {
  std::string name;
  std::vector<Param> params;
  std::size_t line = 0;
};

struct StateVarDecl {
  std::string name;
  std::string type_name;
  Visibility visibility = Visibility::Default;
  bool constant = false;
  std::size_t line = 0;
};

struct ContractUnit {
  std::string name;
  UnitKind kind = UnitKind::Contract;
  bool is_abstract = false;
  std::vector<std::string> bases;
  std::vector<FunctionDecl> functions;
  std::vector<EventDecl> events;
  std::vector<StateVarDecl> state_vars;
  std::vector<std::string> modifier_decls;
  std::size_t line = 0;
};

struct ParseResult {
  std::vector<ContractUnit> units;
  std::vector<Diagnostic> diagnostics;
};

/// Extracts every contract, interface and library in `source` (raw or
/// comment-stripped). Members the subset grammar cannot read are skipped with
/// a diagnostic.
ParseResult extract_units(std::string_view source);

/// Renders a declaration as source text that extract_units reads back into
/// an equal signature (name, parameters, returns, visibility, mutability,
/// modifiers). The body is rendered as `{}` when present, `;` otherwise.
std::string format_signature(const FunctionDecl& fn);

/// Modifier names that do not count as permission checks when labeling.
using ModifierDenyList = std::set<std::string, std::less<>>;

/// One FunctionRecord per function with a body. The label is true when at
/// least one modifier is not on the deny-list.
std::vector<FunctionRecord> split_functions(const ContractUnit& unit,
                                            std::string_view contract_address,
                                            const ModifierDenyList& deny = {});

/// Convenience: extract_units + split_functions over every unit in `source`.
std::vector<FunctionRecord> extract_functions(std::string_view source,
                                              std::string_view contract_address,
                                              const ModifierDenyList& deny = {},
                                              std::vector<Diagnostic>* diagnostics = nullptr);

}  // namespace lifescope::sol
