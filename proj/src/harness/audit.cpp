#include "qkg/harness.hpp"
#include "audit_detail.hpp"

namespace qkg {

const char* variant_name(Side s, Calculus c, bool native) {
  if (native) return "left-hatted-native";
  if (s == Side::kLeft) return c == Calculus::kPlain ? "left-plain" : "left-hatted";
  return c == Calculus::kPlain ? "right-plain" : "right-hatted";
}

namespace detail {

// Leibniz residuals for one pairing over a small corpus; first failure in detail.
ActionFn audit_action(Side side, Calculus calc, bool native) {
  if (native) return dhat_left_native;
  return action_fn(side, calc);
}

std::vector<Series> leibniz_pairing(const ActionFn& act, Side side, Ordering ord, int order, std::uint64_t seed,
                                    int cases, std::string& detail) {
  std::vector<Series> out;
  for (int j = 0; j < cases; ++j) {
    std::mt19937_64 rng(case_seed(seed, j));
    CaseCorpus c(rng);
    Series u = c.xpoly(order, 3), g = c.xpoly(order, 3);
    for (int a = 0; a < 3; ++a) {
      Series r = act(a, star(u, g, ord));
      if (side == Side::kLeft) {
        r -= star(act(a, u), g, ord);
        for (int b = 0; b < 3; ++b) r -= star(extract_l(act, ord, a, b, u), act(b, g), ord);
      } else {
        r -= star(u, act(a, g), ord);
        for (int b = 0; b < 3; ++b) r -= star(act(b, u), extract_l_right(act, ord, a, b, g), ord);
      }
      if (!r.is_zero() && detail.empty())
        detail = "index " + std::string(index_name(a)) + " u=" + u.str() + " g=" + g.str();
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace detail

bool PairingAudit::every_variant_consistent() const {
  for (Side s : {Side::kLeft, Side::kRight})
    for (Calculus c : {Calculus::kPlain, Calculus::kHatted}) {
      bool any = false;
      for (auto& cell : cells)
        if (!cell.native && cell.side == s && cell.calculus == c && cell.consistent) any = true;
      if (!any) return false;
    }
  return true;
}

PairingAudit pairing_audit(int order, std::uint64_t seed, int cases) {
  if (order < 3) throw ConfigError("pairing audit needs order >= 3");
  PairingAudit a{order, {}};
  for (auto [s, c, native] : kAuditRows)
    for (Ordering o : {Ordering::kStandard, Ordering::kReversed}) {
      PairingCell cell{s, c, native, o, true, ""};
      try {
        ActionFn act = detail::audit_action(s, c, native);
        for (auto& r : detail::leibniz_pairing(act, s, o, order, seed, cases, cell.detail))
          if (!r.is_zero()) cell.consistent = false;
      } catch (const std::logic_error& e) {
        cell.consistent = false;
        cell.detail = e.what();
      }
      a.cells.push_back(cell);
    }
  return a;
}

}  // namespace qkg
