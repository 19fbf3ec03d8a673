#pragma once
// Linear operators defined on the spatial monomials of one chart and lifted
// to whole series with all other variables passive. Images are cached per
// monomial; population is race-free.

#include <functional>
#include <memory>
#include <shared_mutex>
#include <unordered_map>

#include "qkg/starcalc.hpp"

namespace qkg::detail {

using Triple = std::array<int, 3>;

// move the spatial exponents of chart `from` to chart `to`
Key relabel(Key k, int from, int to);
Triple triple_of(Key k, int chart);
Key key_of(const Triple& t, int chart);
Series tri(const Triple& t, const Scalar& c = Scalar(1));  // x-chart monomial

class MonoOp {
 public:
  // image of the x-chart monomial (a, b, c), expressed over the x chart only
  using Fn = std::function<Series(const Triple&)>;

  MonoOp(Fn fn, int degree) : fn_(std::move(fn)), degree_(degree) {}
  const Series& image(const Triple& t) const;
  Series apply(const Series& f, int chart = kChartX) const;
  Series operator()(const Series& f) const { return apply(f); }

 private:
  Fn fn_;
  int degree_;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<std::uint32_t, std::unique_ptr<Series>> cache_;
};

// Apply a cached operator on chart `chart` of f.
Series lift(const MonoOp& op, const Series& f, int chart);

}  // namespace qkg::detail
