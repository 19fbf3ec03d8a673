#include <functional>
#include <map>

#include "qkg/detail/monoop.hpp"
#include "qkg/qcalculus.hpp"

namespace qkg {

using detail::MonoOp;
using detail::Triple;
using detail::tri;

namespace {

using Facts = std::function<Scalar(int, int, int)>;

Scalar facts_plain(int a, int b, int c) { return q_factorial(a, 4) * q_factorial(b, 2) * q_factorial(c, 4); }
Scalar facts_hatted(int a, int b, int c) { return q_factorial(a, -4) * q_factorial(b, -2) * q_factorial(c, -4); }

Series jack_n(Series f, int var, int base, int n) {
  for (int j = 0; j < n && !f.is_zero(); ++j) f = jackson_derivative(f, var, base);
  return f;
}

// multiply every term by the x-chart monomial (a, b, c) times coef
Series mul_x(const Series& f, const Triple& t, const Scalar& coef) {
  Key m = detail::key_of(t, kChartX);
  std::vector<Series::Term> out;
  out.reserve(f.size());
  for (auto& [k, c] : f.terms()) out.emplace_back(k + m, c * coef);
  return Series::from_terms(std::move(out));
}

// multiply each term by fn(a, b, c) of its x-chart triple
template <class F>
Series num_op(const Series& f, F fn) {
  std::vector<Series::Term> out;
  out.reserve(f.size());
  for (auto& [k, c] : f.terms()) out.emplace_back(k, c * fn(detail::triple_of(k, kChartX)));
  return Series::from_terms(std::move(out), f.box());
}

Series s_map(const Series& f) { return swap_pm(subst_q_inverse(f)); }

// the box of a translated series: x-degree of f becomes the joint degree
Box joint_box(const Box& fb) {
  Box r = fb;
  r.b[kGXY] = std::min(fb.b[kGX], fb.b[kGXY]);
  r.b[kGX] = r.b[kGY] = kInf;
  return r;
}

Series finish(Series r, const Series& f) {
  r.set_box(joint_box(f.box()));
  return r;
}

// sum x^(a,b,c) [(D_-)^c (D_3)^b (D_+)^a f](y) / facts(a,b,c), D_+ applied first
Series derivative_sum(const Series& f, const ActionFn& d, const Facts& facts) {
  int n = f.max_degree(kGX);
  Series r;
  Series fa = f;
  for (int a = 0; a <= n && !fa.is_zero(); ++a, fa = d(0, fa)) {
    Series fb = fa;
    for (int b = 0; a + b <= n && !fb.is_zero(); ++b, fb = d(1, fb)) {
      Series fc = fb;
      for (int c = 0; a + b + c <= n && !fc.is_zero(); ++c, fc = d(2, fc))
        r += mul_x(to_y(fc), {a, b, c}, facts(a, b, c).inverse());
    }
  }
  return finish(r, f);
}

Series explicit_native(const Series& f) {
  int d = f.max_degree(kGX);
  Series r;
  const Scalar base = -Scalar::q(-1) * Scalar::lambda() * Scalar::lambda_plus();
  for (int ip = 0; ip <= d; ++ip) {
    Series gp = jack_n(f, kXP, -4, ip);
    for (int i3 = 0; ip + i3 <= d && !gp.is_zero(); ++i3)
      for (int k = 0; k <= i3 && ip + i3 + k <= d; ++k) {
        Series g3 = jack_n(gp, kX3, -2, i3 + k);
        for (int im = 0; ip + i3 + k + im <= d && !g3.is_zero(); ++im) {
          Series g = jack_n(g3, kXM, -4, im);
          if (g.is_zero()) break;
          g = rescale(rescale(g, kXM, 2 * (k - i3)), kX3, -2 * ip);
          Scalar coef = base.pow(k) / (q_double_factorial(2 * k, -2) * q_factorial(im, -4) *
                                       q_factorial(i3 - k, -2) * q_factorial(ip, -4));
          Series gy = to_y(g) * Series::var(kYM, k);
          r += mul_x(gy, {ip + k, i3 - k, im}, coef);
        }
      }
  }
  return finish(r, f);
}

Series kappa_both(const Series& F) { return kappa(kappa(F, kChartX), kChartY); }

// U and its inverse from the inversion formula
Series u_series(const Series& f, bool inverse) {
  int d = f.max_degree(kGX);
  Series r;
  int base = inverse ? 4 : -4;
  Scalar lam = inverse ? Scalar::lambda() : -Scalar::lambda();
  for (int k = 0; 2 * k <= d; ++k) {
    Series g = jack_n(jack_n(f, kXP, base, k), kXM, base, k);
    if (g.is_zero()) continue;
    int sgn = inverse ? 1 : -1;
    g = num_op(g, [&](const Triple& t) { return Scalar::q(sgn * 2 * t[1] * (t[0] + t[2] + k)); });
    r += mul_x(g, {0, 2 * k, 0}, lam.pow(k) / q_factorial(k, base));
  }
  return r;
}

Series u_inverse_ominus(const Series& f) {
  int d = f.max_degree(kGX);
  Series r;
  const Scalar base = -Scalar::q() * Scalar::lambda() * Scalar::lambda_plus();
  for (int i = 0; 2 * i <= d; ++i) {
    Series g = num_op(f, [i](const Triple& t) {
      int n = t[0] + t[1] + t[2];
      Scalar s = Scalar::q((2 - 4 * i) * (t[0] + t[2]) + (1 - 2 * i) * t[1]);
      return n % 2 ? -s : s;
    });
    g = jack_n(g, kX3, -2, 2 * i);
    if (g.is_zero()) continue;
    g = num_op(g, [](const Triple& t) {
      return Scalar::q(-(2 * t[0] * (t[0] + t[1]) + 2 * t[2] * (t[2] + t[1]) + t[1] * t[1]));
    });
    r += mul_x(g, {i, 0, i}, base.pow(i) / q_double_factorial(2 * i, -2));
  }
  return r;
}

const MonoOp& u_op() {
  static const MonoOp op([](const Triple& t) { return u_series(tri(t), false); }, 0);
  return op;
}
const MonoOp& u_inverse_op() {
  static const MonoOp op([](const Triple& t) { return u_series(tri(t), true); }, 0);
  return op;
}
const MonoOp& native_inversion_op() {
  static const MonoOp op([](const Triple& t) { return u_op().apply(u_inverse_ominus(tri(t))); }, 0);
  return op;
}

Key y_part(Key k) {
  return key_var(kYP, key_exp(k, kYP)) | key_var(kY3, key_exp(k, kY3)) | key_var(kYM, key_exp(k, kYM));
}
Key x_part(Key k) {
  return key_var(kXP, key_exp(k, kXP)) | key_var(kX3, key_exp(k, kX3)) | key_var(kXM, key_exp(k, kXM));
}

}  // namespace

Series to_y(const Series& f) {
  std::vector<Series::Term> out;
  out.reserve(f.size());
  for (auto& [k, c] : f.terms()) out.emplace_back(k - x_part(k) + detail::relabel(x_part(k), kChartX, kChartY), c);
  return Series::from_terms(std::move(out));
}

Series y_to_x(const Series& f) {
  std::vector<Series::Term> out;
  out.reserve(f.size());
  for (auto& [k, c] : f.terms()) out.emplace_back(k - y_part(k) + detail::relabel(y_part(k), kChartY, kChartX), c);
  Series r = Series::from_terms(std::move(out));
  Box b = f.box();
  b.b[kGX] = std::min({b.b[kGX], b.b[kGY], b.b[kGXY]});
  b.b[kGY] = b.b[kGXY] = kInf;
  r.set_box(b);
  return r;
}

Series translate(const Series& f, Translation flavor) {
  if (flavor == Translation::kOplusBar) return derivative_sum(f, d_left_lower, facts_plain);
  return kappa_both(explicit_native(kappa_inverse(f)));
}

Series translate_explicit_native(const Series& f) { return explicit_native(f); }

Series translate_explicit_mirror(const Series& f) { return s_map(explicit_native(s_map(f))); }

Series translate_operator_form(const Series& f, Translation flavor) {
  int n = f.max_degree(kGX);
  Series r;
  const Scalar mq = -Scalar::q(), mqi = -Scalar::q(-1);
  for (int a = 0; a <= n; ++a)
    for (int b = 0; a + b <= n; ++b)
      for (int c = 0; a + b + c <= n; ++c) {
        Series g = f;
        if (flavor == Translation::kOplusBar) {
          for (int j = 0; j < a; ++j) g = d_left(2, g);
          for (int j = 0; j < b; ++j) g = d_left(1, g);
          for (int j = 0; j < c; ++j) g = d_left(0, g);
          if (g.is_zero()) continue;
          r += mul_x(to_y(g), {a, b, c}, mq.pow(a) * mqi.pow(c) / facts_plain(a, b, c));
        } else {
          for (int j = 0; j < a; ++j) g = dhat_left(0, g);
          for (int j = 0; j < b; ++j) g = dhat_left(1, g);
          for (int j = 0; j < c; ++j) g = dhat_left(2, g);
          if (g.is_zero()) continue;
          Series xm = kappa(tri({c, b, a}));
          r += (xm * to_y(g)).scaled(mq.pow(c) * mqi.pow(a) / facts_hatted(a, b, c));
        }
      }
  return finish(r, f);
}

Series u_operator(const Series& f) { return u_op().apply(f); }
Series u_inverse_operator(const Series& f) { return u_inverse_op().apply(f); }
Series invert_native(const Series& f) { return native_inversion_op().apply(f); }

Series invert_coordinates(const Series& f, Inversion flavor) {
  if (flavor == Inversion::kOminus) return kappa(invert_native(kappa_inverse(f)));
  return s_map(invert_native(s_map(f)));
}

Series apply_first(const Series& F, const SeriesMap& op) {
  std::map<Key, std::vector<Series::Term>> parts;
  for (auto& [k, c] : F.terms()) parts[y_part(k)].emplace_back(k - y_part(k), c);
  Series r;
  for (auto& [yk, t] : parts) {
    Series g = op(Series::from_terms(std::move(t)));
    std::vector<Series::Term> out;
    for (auto& [k, c] : g.terms()) out.emplace_back(k + yk, c);
    r += Series::from_terms(std::move(out));
  }
  r.set_box(F.box());
  return r;
}

Series apply_second(const Series& F, const SeriesMap& op) {
  std::map<Key, std::vector<Series::Term>> parts;
  for (auto& [k, c] : F.terms()) parts[k - y_part(k)].emplace_back(detail::relabel(y_part(k), kChartY, kChartX), c);
  Series r;
  for (auto& [rest, t] : parts) {
    Series g = op(Series::from_terms(std::move(t)));
    std::vector<Series::Term> out;
    for (auto& [k, c] : g.terms()) out.emplace_back(rest + detail::relabel(x_part(k), kChartX, kChartY), c);
    r += Series::from_terms(std::move(out));
  }
  r.set_box(F.box());
  return r;
}

Series multiply_xy(const Series& F, Ordering ord) {
  Series r;
  for (auto& [k, c] : F.terms()) {
    Key yk = y_part(k);
    r += star(Series::monomial(k - yk, c), Series::monomial(detail::relabel(yk, kChartY, kChartX)), ord);
  }
  Box b = F.box();
  b.b[kGX] = std::min({b.b[kGX], b.b[kGY], b.b[kGXY]});
  b.b[kGY] = b.b[kGXY] = kInf;
  r.set_box(b);
  return r;
}

Series set_zero(const Series& F, int chart) {
  auto v = chart_vars(chart);
  std::vector<Series::Term> out;
  for (auto& [k, c] : F.terms())
    if (!key_exp(k, v[0]) && !key_exp(k, v[1]) && !key_exp(k, v[2])) out.emplace_back(k, c);
  return Series::from_terms(std::move(out), F.box());
}

}  // namespace qkg
