#include "lifescope/erc20.hpp"

#include <algorithm>

namespace lifescope::erc20 {

const std::array<StandardFunction, 6>& standard_functions() {
  static const std::array<StandardFunction, 6> table = {{
      {"totalSupply", {}, {"uint256"}},
      {"balanceOf", {"address"}, {"uint256"}},
      {"transfer", {"address", "uint256"}, {"bool"}},
      {"transferFrom", {"address", "address", "uint256"}, {"bool"}},
      {"approve", {"address", "uint256"}, {"bool"}},
      {"allowance", {"address", "address"}, {"uint256"}},
  }};
  return table;
}

const std::array<StandardEvent, 2>& standard_events() {
  static const std::array<StandardEvent, 2> table = {{
      {"Transfer", {"address", "address", "uint256"}},
      {"Approval", {"address", "address", "uint256"}},
  }};
  return table;
}

std::string_view to_string(MemberStatus s) {
  switch (s) {
    case MemberStatus::PresentUnmatched: return "present_unmatched";
    case MemberStatus::Matched: return "matched";
    case MemberStatus::MatchedViaVariable: return "matched_via_variable";
    case MemberStatus::Absent: break;
  }
  return "absent";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Matched: return "Matched";
    case Verdict::Unmatched: return "Unmatched";
    case Verdict::NotErc20: break;
  }
  return "NotErc20";
}

namespace {

bool same_types(const std::vector<sol::Param>& actual, const std::vector<std::string_view>& expected) {
  return std::equal(actual.begin(), actual.end(), expected.begin(), expected.end(),
                    [](const sol::Param& p, std::string_view t) { return p.type_name == t; });
}

bool callable(sol::Visibility v) {
  return v == sol::Visibility::Public || v == sol::Visibility::External ||
         v == sol::Visibility::Default;
}

}  // namespace

Erc20Scan scan_interface(const std::vector<sol::ContractUnit>& units) {
  Erc20Scan scan;
  for (const auto& std_fn : standard_functions()) {
    MemberStatus status = MemberStatus::Absent;
    for (const auto& unit : units) {
      for (const auto& fn : unit.functions) {
        if (fn.kind != sol::FunctionKind::Regular || fn.name != std_fn.name || !fn.has_body) {
          continue;
        }
        if (callable(fn.visibility) && same_types(fn.params, std_fn.params) &&
            same_types(fn.returns, std_fn.returns)) {
          status = MemberStatus::Matched;
        } else if (status == MemberStatus::Absent) {
          status = MemberStatus::PresentUnmatched;
        }
      }
    }
    // A public state variable compiles to the same getter as a view function.
    if (std_fn.name == "totalSupply" && status != MemberStatus::Matched) {
      for (const auto& unit : units) {
        for (const auto& var : unit.state_vars) {
          if (var.name != "totalSupply" || var.visibility != sol::Visibility::Public) continue;
          if (var.type_name == "uint256") {
            status = MemberStatus::MatchedViaVariable;
          } else if (status == MemberStatus::Absent) {
            status = MemberStatus::PresentUnmatched;
          }
        }
      }
    }
    if (status != MemberStatus::Absent) ++scan.appeared_func;
    if (status == MemberStatus::Matched || status == MemberStatus::MatchedViaVariable) {
      ++scan.legal_func;
    }
    scan.per_member[std::string(std_fn.name)] = status;
  }

  for (const auto& std_ev : standard_events()) {
    MemberStatus status = MemberStatus::Absent;
    for (const auto& unit : units) {
      for (const auto& ev : unit.events) {
        if (ev.name != std_ev.name) continue;
        if (same_types(ev.params, std_ev.params)) {
          status = MemberStatus::Matched;
        } else if (status == MemberStatus::Absent) {
          status = MemberStatus::PresentUnmatched;
        }
      }
    }
    if (status == MemberStatus::Matched) ++scan.legal_event;
    scan.per_member[std::string(std_ev.name)] = status;
  }
  return scan;
}

Erc20Verdict classify_erc20(const Erc20Scan& scan) {
  Erc20Verdict v{Verdict::Unmatched, scan};
  if (scan.appeared_func < 5) {
    v.verdict = Verdict::NotErc20;
  } else if (scan.legal_func == 6 && scan.legal_event == 2) {
    v.verdict = Verdict::Matched;
  }
  return v;
}

Erc20Verdict check_source(std::string_view source) {
  return classify_erc20(scan_interface(sol::extract_units(source).units));
}

}  // namespace lifescope::erc20
