#include "qkg/detail/monoop.hpp"

#include <mutex>

namespace qkg::detail {

Key relabel(Key k, int from, int to) {
  if (from == to) return k;
  auto fv = chart_vars(from), tv = chart_vars(to);
  Key r = k;
  for (int j = 0; j < 3; ++j) r = key_set(r, fv[std::size_t(j)], 0);
  for (int j = 0; j < 3; ++j) r = key_set(r, tv[std::size_t(j)], key_exp(k, fv[std::size_t(j)]));
  return r;
}

Triple triple_of(Key k, int chart) {
  auto v = chart_vars(chart);
  return {key_exp(k, v[0]), key_exp(k, v[1]), key_exp(k, v[2])};
}

Key key_of(const Triple& t, int chart) {
  auto v = chart_vars(chart);
  return key_var(v[0], t[0]) | key_var(v[1], t[1]) | key_var(v[2], t[2]);
}

Series tri(const Triple& t, const Scalar& c) { return Series::monomial(key_of(t, kChartX), c); }

const Series& MonoOp::image(const Triple& t) const {
  std::uint32_t key = std::uint32_t(t[0]) | std::uint32_t(t[1]) << 8 | std::uint32_t(t[2]) << 16;
  {
    std::shared_lock lk(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return *it->second;
  }
  auto img = std::make_unique<Series>(fn_(t));
  std::unique_lock lk(mu_);
  auto [it, fresh] = cache_.try_emplace(key, std::move(img));
  return *it->second;
}

static Box shift_chart(Box b, int chart, int delta) {
  if (!delta) return b;
  int g = chart == kChartX ? kGX : chart == kChartP ? kGP : kGY;
  b = b.shifted(g, delta);
  if (chart != kChartP) b = b.shifted(kGXY, delta);
  return b;
}

Series MonoOp::apply(const Series& f, int chart) const {
  std::vector<Series::Term> out;
  for (auto& [k, c] : f.terms()) {
    Triple t = triple_of(k, chart);
    Key rest = k - key_of(t, chart);
    const Series& img = image(t);
    for (auto& [ik, ic] : img.terms()) out.emplace_back(relabel(ik, kChartX, chart) + rest, ic * c);
  }
  return Series::from_terms(std::move(out), shift_chart(f.box(), chart, degree_));
}

Series lift(const MonoOp& op, const Series& f, int chart) { return op.apply(f, chart); }

}  // namespace qkg::detail
