#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lifescope/solfront.hpp"

namespace lifescope::erc20 {

struct StandardFunction {
  std::string_view name;
  std::vector<std::string_view> params;
  std::vector<std::string_view> returns;
};

struct StandardEvent {
  std::string_view name;
  std::vector<std::string_view> params;
};

/// The six compulsory functions of the token interface, in declaration order.
const std::array<StandardFunction, 6>& standard_functions();
/// The two compulsory events.
const std::array<StandardEvent, 2>& standard_events();

enum class MemberStatus { Absent, PresentUnmatched, Matched, MatchedViaVariable };
std::string_view to_string(MemberStatus s);

struct Erc20Scan {
  int appeared_func = 0;
  int legal_func = 0;
  int legal_event = 0;
  /// Keyed by member name; holds all eight standard members.
  std::map<std::string, MemberStatus> per_member;
};

enum class Verdict { NotErc20, Matched, Unmatched };
std::string_view to_string(Verdict v);

struct Erc20Verdict {
  Verdict verdict = Verdict::NotErc20;
  Erc20Scan scan;
};

/// Counts implemented standard functions and events across every unit of one
/// source file. Members are unioned by name, so a function defined in two
/// units counts once (matched if any definition matches).
Erc20Scan scan_interface(const std::vector<sol::ContractUnit>& units);

/// Fewer than five implemented functions: not a token. All six functions and
/// both events matching: matched. Anything else: unmatched.
Erc20Verdict classify_erc20(const Erc20Scan& scan);

Erc20Verdict check_source(std::string_view source);

}  // namespace lifescope::erc20
