#include <memory>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "qkg/starcalc.hpp"

namespace qkg {

namespace {

using Triple = std::array<int, 3>;

struct GroupProduct {
  std::vector<std::pair<Triple, Scalar>> terms;
};

// Product of two chart monomials in standard normal order.
GroupProduct group_product(const Triple& x, const Triple& y) {
  auto [a1, b1, c1] = x;
  auto [a2, b2, c2] = y;
  GroupProduct r;
  Scalar lam = Scalar::lambda();
  for (int k = 0; k <= std::min(c1, a2); ++k) {
    Scalar coef = lam.pow(k) * q_binomial(c1, k, 4) * q_falling(a2, k, 4) *
                  Scalar::q(2 * (b1 * (a2 - k) + (c1 - k) * b2));
    r.terms.push_back({{a1 + a2 - k, b1 + b2 + 2 * k, c1 + c2 - k}, std::move(coef)});
  }
  return r;
}

struct StarCache {
  std::shared_mutex mu;
  std::unordered_map<std::uint64_t, std::unique_ptr<GroupProduct>> map;
};

StarCache& star_cache() {
  static StarCache c;
  return c;
}

const GroupProduct& cached_product(const Triple& x, const Triple& y, bool rev) {
  std::uint64_t key = rev;
  for (int v : x) key = (key << 8) | std::uint64_t(v);
  for (int v : y) key = (key << 8) | std::uint64_t(v);
  StarCache& c = star_cache();
  {
    std::shared_lock lk(c.mu);
    auto it = c.map.find(key);
    if (it != c.map.end()) return *it->second;
  }
  auto gp = std::make_unique<GroupProduct>();
  if (!rev) {
    *gp = group_product(x, y);
  } else {
    // reversed order: mirror the triples and send q to 1/q
    GroupProduct s = group_product({x[2], x[1], x[0]}, {y[2], y[1], y[0]});
    for (auto& [t, cf] : s.terms) gp->terms.push_back({{t[2], t[1], t[0]}, cf.subst_q_inverse()});
  }
  std::unique_lock lk(c.mu);
  auto [it, fresh] = c.map.try_emplace(key, std::move(gp));
  return *it->second;
}

// One factor of a chart product: a pure power of q or a cached coefficient.
struct GTerm {
  Triple e;
  int qpow;
  const Scalar* coef;
};

void chart_terms(Key ka, Key kb, int ch, bool rev, std::vector<GTerm>& out) {
  out.clear();
  auto vars = chart_vars(ch);
  Triple x{key_exp(ka, vars[0]), key_exp(ka, vars[1]), key_exp(ka, vars[2])};
  Triple y{key_exp(kb, vars[0]), key_exp(kb, vars[1]), key_exp(kb, vars[2])};
  Triple s{x[0] + y[0], x[1] + y[1], x[2] + y[2]};
  if (!rev && std::min(x[2], y[0]) == 0) {
    out.push_back({s, 2 * (x[1] * y[0] + x[2] * y[1]), nullptr});
    return;
  }
  if (rev && std::min(x[0], y[2]) == 0) {
    out.push_back({s, -2 * (x[1] * y[2] + x[0] * y[1]), nullptr});
    return;
  }
  for (auto& [t, cf] : cached_product(x, y, rev).terms) out.push_back({t, 0, &cf});
}

}  // namespace

Series star(const Series& f, const Series& g, Ordering ord) {
  const bool rev = ord == Ordering::kReversed;
  std::unordered_map<Key, Scalar> acc;
  std::vector<GTerm> cx, cp, cy;
  for (auto& [ka, va] : f.terms())
    for (auto& [kb, vb] : g.terms()) {
      Scalar vab = va * vb;
      chart_terms(ka, kb, kChartX, rev, cx);
      chart_terms(ka, kb, kChartP, rev, cp);
      chart_terms(ka, kb, kChartY, rev, cy);
      int tt = key_exp(ka, kT) + key_exp(kb, kT);
      for (auto& gx : cx)
        for (auto& gp : cp)
          for (auto& gy : cy) {
            std::array<int, kNumVars> e{gx.e[0], gx.e[1], gx.e[2], tt, gp.e[0], gp.e[1], gp.e[2],
                                        gy.e[0], gy.e[1], gy.e[2]};
            Scalar c = vab;
            int qp = gx.qpow + gp.qpow + gy.qpow;
            if (qp) c *= Scalar::q(qp);
            if (gx.coef) c *= *gx.coef;
            if (gp.coef) c *= *gp.coef;
            if (gy.coef) c *= *gy.coef;
            auto [it, fresh] = acc.try_emplace(key_make(e));
            if (fresh)
              it->second = std::move(c);
            else
              it->second += c;
          }
    }
  std::vector<Series::Term> t;
  t.reserve(acc.size());
  for (auto& [k, c] : acc)
    if (!c.is_zero()) t.emplace_back(k, std::move(c));
  return Series::from_terms(std::move(t), product_box(f, g));
}

Series conjugate(const Series& f) {
  std::vector<Series::Term> t;
  t.reserve(f.size());
  for (auto& [k, c] : f.terms()) {
    Key nk = k;
    int w = 0;
    for (int ch = 0; ch < kNumCharts; ++ch) {
      auto v = chart_vars(ch);
      int np = key_exp(k, v[0]), nm = key_exp(k, v[2]);
      nk = key_set(key_set(nk, v[0], nm), v[2], np);
      w += np - nm;
    }
    Scalar cc = c.conj();
    if (w) cc *= Scalar::q(w);
    if (w & 1) cc = -cc;
    t.emplace_back(nk, std::move(cc));
  }
  return Series::from_terms(std::move(t), f.box());
}

Series swap_pm(const Series& f) {
  std::vector<Series::Term> t;
  t.reserve(f.size());
  for (auto& [k, c] : f.terms()) {
    Key nk = k;
    for (int ch = 0; ch < kNumCharts; ++ch) {
      auto v = chart_vars(ch);
      nk = key_set(key_set(nk, v[0], key_exp(k, v[2])), v[2], key_exp(k, v[0]));
    }
    t.emplace_back(nk, c);
  }
  return Series::from_terms(std::move(t), f.box());
}

Series subst_q_inverse(const Series& f) {
  return f.map_coefficients([](const Scalar& c) { return c.subst_q_inverse(); });
}

Series classical_limit(const Series& f) {
  std::vector<Series::Term> t;
  for (auto& [k, c] : f.terms()) {
    try {
      t.emplace_back(k, c.eval_q1());
    } catch (const PoleError& e) {
      throw PoleError(std::string(e.what()) + " in term " + term_str(k, c));
    }
  }
  return Series::from_terms(std::move(t), f.box());
}

const char* index_name(int a) {
  static const char* n[] = {"+", "3", "-"};
  return n[a];
}

Scalar metric_lower(int a, int b) {
  if (a == 0 && b == 2) return -Scalar::q();
  if (a == 2 && b == 0) return -Scalar::q(-1);
  if (a == 1 && b == 1) return Scalar(1);
  return Scalar();
}

Scalar metric_upper(int a, int b) { return metric_lower(a, b); }

Family lower_index(const Family& v) {
  Family r;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Scalar g = metric_lower(a, b);
      if (!g.is_zero()) r[a] += v[b].scaled(g);
    }
  return r;
}

Family raise_index(const Family& v) {
  Family r;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Scalar g = metric_upper(a, b);
      if (!g.is_zero()) r[a] += v[b].scaled(g);
    }
  return r;
}

Series metric_contract(const Family& a, const Family& b, Ordering ord) {
  Series r;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      Scalar g = metric_lower(x, y);
      if (!g.is_zero()) r += star(a[x], b[y], ord).scaled(g);
    }
  return r;
}

Series upper_coordinate(int a, int chart) { return Series::var(chart_vars(chart)[a]); }

Series lowered_coordinate(int a, int chart) {
  Family up{upper_coordinate(0, chart), upper_coordinate(1, chart), upper_coordinate(2, chart)};
  return lower_index(up)[a];
}

}  // namespace qkg
