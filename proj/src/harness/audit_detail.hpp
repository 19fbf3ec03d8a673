#pragma once

#include "qkg/harness.hpp"

namespace qkg::detail {

std::vector<Series> leibniz_pairing(const ActionFn& act, Side side, Ordering ord, int order, std::uint64_t seed, int cases,
                                    std::string& detail);
// the action behind an audit row; native selects the reversed-order basis
ActionFn audit_action(Side side, Calculus calc, bool native);

}  // namespace qkg::detail
