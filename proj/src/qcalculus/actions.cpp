#include <array>
#include <map>
#include <mutex>
#include <stdexcept>

#include "qkg/detail/monoop.hpp"
#include "qkg/qcalculus.hpp"

namespace qkg {

using detail::MonoOp;
using detail::Triple;
using detail::tri;

namespace {

Box shift_var(Box b, int var, int delta) {
  if (var == kT) return b.shifted(kGT, delta);
  if (var >= kPP && var <= kPM) return b.shifted(kGP, delta);
  b = b.shifted(var <= kXM ? kGX : kGY, delta);
  return b.shifted(kGXY, delta);
}

// x^+ multiplication on the x chart
Series times_xp(const Series& f) {
  std::vector<Series::Term> t;
  for (auto& [k, c] : f.terms()) t.emplace_back(k + key_var(kXP), c);
  return Series::from_terms(std::move(t), shift_var(f.box(), kXP, 1));
}
Series times_xm(const Series& f) {
  std::vector<Series::Term> t;
  for (auto& [k, c] : f.terms()) t.emplace_back(k + key_var(kXM), c);
  return Series::from_terms(std::move(t), shift_var(f.box(), kXM, 1));
}

Series plain_lower(int a, const Series& f) {
  switch (a) {
    case 0: return jackson_derivative(f, kXP, 4);
    case 1: return jackson_derivative(rescale(f, kXP, 2), kX3, 2);
    default:
      return jackson_derivative(rescale(f, kX3, 2), kXM, 4) +
             times_xp(jackson_derivative(jackson_derivative(f, kX3, 2), kX3, 2)).scaled(Scalar::lambda());
  }
}

Series native_lower(int a, const Series& f) {
  switch (a) {
    case 2: return jackson_derivative(f, kXM, -4);
    case 1: return jackson_derivative(rescale(f, kXM, -2), kX3, -2);
    default:
      return jackson_derivative(rescale(f, kX3, -2), kXP, -4) -
             times_xm(jackson_derivative(jackson_derivative(f, kX3, -2), kX3, -2)).scaled(Scalar::lambda());
  }
}

using OpSet = std::array<MonoOp, 3>;

template <class F>
OpSet make_set(F fn, int degree) {
  return {MonoOp([fn](const Triple& t) { return fn(0, t); }, degree),
          MonoOp([fn](const Triple& t) { return fn(1, t); }, degree),
          MonoOp([fn](const Triple& t) { return fn(2, t); }, degree)};
}

// index moved with g^{AB} (raise) or g_{AB} (lower); both tables coincide
OpSet contracted(const OpSet& base) {
  return make_set(
      [&base](int a, const Triple& t) {
        Series r;
        for (int b = 0; b < 3; ++b) {
          Scalar g = metric_upper(a, b);
          if (!g.is_zero()) r += base[std::size_t(b)].image(t).scaled(g);
        }
        return r;
      },
      -1);
}

const MonoOp& kappa_op() {
  static const MonoOp op(
      [](const Triple& t) {
        Series xm = Series::var(kXM, t[2]), x3 = Series::var(kX3, t[1]), xp = Series::var(kXP, t[0]);
        return star(star(xm, x3), xp);
      },
      0);
  return op;
}

const MonoOp& kappa_inverse_op() {
  static const MonoOp op(
      [](const Triple& t) {
        Series xm = Series::var(kXM, t[2]), x3 = Series::var(kX3, t[1]), xp = Series::var(kXP, t[0]);
        return star(star(xp, x3, Ordering::kReversed), xm, Ordering::kReversed);
      },
      0);
  return op;
}

const OpSet& dl_ops() {
  static const OpSet s = make_set([](int a, const Triple& t) { return plain_lower(a, tri(t)); }, -1);
  return s;
}
const OpSet& du_ops() {
  static const OpSet s = contracted(dl_ops());
  return s;
}
const OpSet& dhl_native_ops() {
  static const OpSet s = make_set([](int a, const Triple& t) { return native_lower(a, tri(t)); }, -1);
  return s;
}
const OpSet& dhu_native_ops() {
  static const OpSet s = contracted(dhl_native_ops());
  return s;
}
const OpSet& dhl_ops() {
  static const OpSet s = make_set(
      [](int a, const Triple& t) {
        return kappa_op().apply(dhl_native_ops()[std::size_t(a)].apply(kappa_inverse_op().apply(tri(t))));
      },
      -1);
  return s;
}
const OpSet& dhu_ops() {
  static const OpSet s = contracted(dhl_ops());
  return s;
}

// -conj(D_A conj f) built from a lowered left table
OpSet right_from(const OpSet& left) {
  return make_set(
      [&left](int a, const Triple& t) { return -conjugate(left[std::size_t(a)].apply(conjugate(tri(t)))); }, -1);
}
const OpSet& rbar_up_ops() {
  static const OpSet s = right_from(dl_ops());
  return s;
}
const OpSet& rbar_dn_ops() {
  static const OpSet s = contracted(rbar_up_ops());
  return s;
}
const OpSet& rhat_up_ops() {
  static const OpSet s = right_from(dhl_ops());
  return s;
}
const OpSet& rhat_dn_ops() {
  static const OpSet s = contracted(rhat_up_ops());
  return s;
}
const OpSet& rhat_native_up_ops() {
  static const OpSet s = right_from(dhl_native_ops());
  return s;
}

const Scalar& q_minus6() {
  static const Scalar s = Scalar::q(-6);
  return s;
}

void check_index(int a) {
  if (a < 0 || a > kIdxTime) throw std::invalid_argument("derivative index out of range");
}

Series run(const OpSet& ops, int a, const Series& f, int time_sign = 1, bool scale6 = false) {
  check_index(a);
  if (a == kIdxTime) return time_sign > 0 ? time_derivative(f) : -time_derivative(f);
  Series r = ops[std::size_t(a)].apply(f);
  return scale6 ? r.scaled(q_minus6()) : r;
}

}  // namespace

Series jackson_derivative(const Series& f, int var, int base) {
  std::vector<Series::Term> t;
  t.reserve(f.size());
  for (auto& [k, c] : f.terms()) {
    int n = key_exp(k, var);
    if (!n) continue;
    t.emplace_back(k - key_var(var), c * q_number(n, base));
  }
  return Series::from_terms(std::move(t), shift_var(f.box(), var, -1));
}

Series rescale(const Series& f, int var, int power) {
  std::vector<Series::Term> t;
  t.reserve(f.size());
  for (auto& [k, c] : f.terms()) {
    int n = key_exp(k, var) * power;
    t.emplace_back(k, n ? c * Scalar::q(n) : c);
  }
  return Series::from_terms(std::move(t), f.box());
}

Series time_derivative(const Series& f) { return jackson_derivative(f, kT, 0); }

Series kappa(const Series& f, int chart) { return kappa_op().apply(f, chart); }
Series kappa_inverse(const Series& f, int chart) { return kappa_inverse_op().apply(f, chart); }

Series d_left(int a, const Series& f) { return run(du_ops(), a, f); }
Series d_left_lower(int a, const Series& f) { return run(dl_ops(), a, f); }
Series dhat_left(int a, const Series& f) { return run(dhu_ops(), a, f); }
Series dhat_left_lower(int a, const Series& f) { return run(dhl_ops(), a, f); }
Series dhat_left_native(int a, const Series& f) { return run(dhu_native_ops(), a, f); }
Series dhat_left_native_lower(int a, const Series& f) { return run(dhl_native_ops(), a, f); }
Series d_left_bar(int a, const Series& f) { return run(dhu_ops(), a, f, 1, true); }
Series d_left_bar_lower(int a, const Series& f) { return run(dhl_ops(), a, f, 1, true); }
Series d_right_bar(int a, const Series& f) { return run(rbar_up_ops(), a, f, -1); }
Series d_right_bar_lower(int a, const Series& f) { return run(rbar_dn_ops(), a, f, -1); }
Series dhat_right(int a, const Series& f) { return run(rhat_up_ops(), a, f, -1); }
Series dhat_right_lower(int a, const Series& f) { return run(rhat_dn_ops(), a, f, -1); }
Series dhat_right_native(int a, const Series& f) { return run(rhat_native_up_ops(), a, f, -1); }
Series d_right(int a, const Series& f) { return run(rhat_up_ops(), a, f, -1, true); }
Series d_right_lower(int a, const Series& f) { return run(rhat_dn_ops(), a, f, -1, true); }

ActionFn action_fn(Side side, Calculus calc) {
  if (side == Side::kLeft) return calc == Calculus::kPlain ? ActionFn(d_left) : ActionFn(dhat_left);
  return calc == Calculus::kPlain ? ActionFn(d_right_bar) : ActionFn(dhat_right);
}

Series act(const ActionVariant& v, const Series& f) {
  if (!v.lowered || v.index == kIdxTime) return action_fn(v.side, v.calculus)(v.index, f);
  if (v.side == Side::kLeft) return v.calculus == Calculus::kPlain ? d_left_lower(v.index, f) : dhat_left_lower(v.index, f);
  return v.calculus == Calculus::kPlain ? d_right_bar_lower(v.index, f) : dhat_right_lower(v.index, f);
}

Series laplacian_left(const Series& f) {
  Series r;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Scalar g = metric_lower(a, b);
      if (!g.is_zero()) r += d_left(a, d_left(b, f)).scaled(g);
    }
  return r;
}

Series laplacian_right(const Series& f) {
  Series r;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Scalar g = metric_lower(a, b);
      if (!g.is_zero()) r += d_right(b, d_right(a, f)).scaled(g);
    }
  return r;
}

}  // namespace qkg
