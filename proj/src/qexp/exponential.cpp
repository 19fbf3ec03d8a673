#include <map>
#include <mutex>
#include <stdexcept>

#include "qkg/qexp.hpp"

namespace qkg {

namespace {

Scalar facts(int a, int b, int c) { return q_factorial(a, 4) * q_factorial(b, 2) * q_factorial(c, 4); }

Box exp_box(int n) {
  Box b;
  b.b[kGX] = n + 1;
  b.b[kGP] = n + 1;
  return b;
}

// i^n (-q^-1)^c (-q)^a / facts over x^(a,b,c) p^(c,b,a); the reversed reading
// puts the triple on p and its mirror on x with i^-n
Series plain_body(int n, bool ip_x) {
  std::vector<Series::Term> t;
  const Scalar i = Scalar::i(), mq = -Scalar::q(), mqi = -Scalar::q(-1);
  for (int d = 0; d <= n; ++d)
    for (int a = 0; a <= d; ++a)
      for (int b = 0; a + b <= d; ++b) {
        int c = d - a - b;
        Scalar coef = (ip_x ? i.pow(-d) : i.pow(d)) * mqi.pow(c) * mq.pow(a) / facts(a, b, c);
        std::array<int, kNumVars> e{};
        if (!ip_x) {
          e[kXP] = a, e[kX3] = b, e[kXM] = c;
          e[kPP] = c, e[kP3] = b, e[kPM] = a;
        } else {
          e[kPP] = a, e[kP3] = b, e[kPM] = c;
          e[kXP] = c, e[kX3] = b, e[kXM] = a;
        }
        t.emplace_back(key_make(e), std::move(coef));
      }
  return Series::from_terms(std::move(t), exp_box(n));
}

// reversed-order reading transported to standard order on both charts
Series bar_body(int n, bool ip_x) {
  Series s = swap_pm(subst_q_inverse(plain_body(n, ip_x)));
  return kappa(kappa(s, kChartX), kChartP);
}

Series p_scaled(const Series& f, int s) {
  std::vector<Series::Term> t;
  for (auto& [k, c] : f.terms()) {
    int d = key_degree(k, kGP);
    t.emplace_back(k, d ? c * Scalar::q(s * d) : c);
  }
  return Series::from_terms(std::move(t), f.box());
}

Series body_of(ExpKind kind, int n) {
  switch (kind) {
    case ExpKind::kXIp: return plain_body(n, false);
    case ExpKind::kIpX: return plain_body(n, true);
    case ExpKind::kBarXIp: return bar_body(n, false);
    case ExpKind::kBarIpX: return bar_body(n, true);
    case ExpKind::kStarIpX: return p_scaled(bar_body(n, true), 6);
    case ExpKind::kStarXIp: return p_scaled(bar_body(n, false), 6);
  }
  throw std::invalid_argument("unknown exponential kind");
}

bool is_left(ExpKind k) { return k == ExpKind::kXIp || k == ExpKind::kBarXIp || k == ExpKind::kStarXIp; }

}  // namespace

const char* exp_kind_name(ExpKind k) {
  switch (k) {
    case ExpKind::kXIp: return "exp(x|ip)";
    case ExpKind::kIpX: return "exp(ip|x)";
    case ExpKind::kBarXIp: return "expbar(x|ip)";
    case ExpKind::kBarIpX: return "expbar(ip|x)";
    case ExpKind::kStarIpX: return "exp*(ip|x)";
    case ExpKind::kStarXIp: return "exp*(x|ip)";
  }
  return "?";
}

QExponential build_exponential(ExpKind kind, int order) {
  if (order < 0) throw std::invalid_argument("exponential order must be non-negative");
  static std::mutex mu;
  static std::map<std::pair<int, int>, Series> cache;
  std::pair<int, int> key{int(kind), order};
  {
    std::lock_guard lk(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return {kind, order, it->second};
  }
  Series body = body_of(kind, order);
  std::lock_guard lk(mu);
  cache.emplace(key, body);
  return {kind, order, std::move(body)};
}

QExponential dual_exponential(ExpKind kind, int order) {
  if (kind != ExpKind::kStarIpX && kind != ExpKind::kStarXIp)
    throw std::invalid_argument("dual_exponential takes a dual kind");
  return build_exponential(kind, order);
}

ActionVariant matched_action(ExpKind kind, int index) {
  bool plain = kind == ExpKind::kXIp || kind == ExpKind::kIpX;
  return {is_left(kind) ? Side::kLeft : Side::kRight, plain ? Calculus::kPlain : Calculus::kHatted, index, false};
}

Series eigen_residual(const QExponential& e, const ActionVariant& v) {
  ActionVariant m = matched_action(e.kind, v.index);
  if (v.side != m.side || v.calculus != m.calculus)
    throw std::invalid_argument(std::string("action variant does not match ") + exp_kind_name(e.kind));
  if (v.index < 0 || v.index > 2) throw std::invalid_argument("eigen_residual takes a spatial index");
  if (v.lowered) {
    Series r;
    for (int b = 0; b < 3; ++b) {
      Scalar g = metric_lower(v.index, b);
      if (!g.is_zero()) r += eigen_residual(e, b).scaled(g);
    }
    return r;
  }
  return eigen_residual(e, v.index);
}

Series eigen_residual(const QExponential& e, int a) {
  if (a < 0 || a > 2) throw std::invalid_argument("eigen_residual takes a spatial index");
  const Scalar ii = Scalar::i().inverse();
  Series p = momentum(a);
  Series d;
  switch (e.kind) {
    case ExpKind::kXIp: d = d_left(a, e.body); break;
    case ExpKind::kIpX: d = d_right_bar(a, e.body); break;
    case ExpKind::kBarXIp: d = dhat_left(a, e.body); break;
    case ExpKind::kBarIpX: d = dhat_right(a, e.body); break;
    case ExpKind::kStarIpX: d = d_right(a, e.body); break;
    case ExpKind::kStarXIp: d = d_left_bar(a, e.body); break;
  }
  return d.scaled(ii) - (is_left(e.kind) ? star(e.body, p) : star(p, e.body));
}

Series addition_residual(ExpKind kind, int order) {
  Translation fl;
  if (kind == ExpKind::kXIp)
    fl = Translation::kOplusBar;
  else if (kind == ExpKind::kBarXIp)
    fl = Translation::kOplus;
  else
    throw std::invalid_argument("addition theorem is stated for exp(x|ip) and its bar form");
  QExponential e = build_exponential(kind, order);
  Series r = translate(e.body, fl) - star(to_y(e.body), e.body);
  Box b;
  b.b[kGXY] = order + 1;
  r.set_box(b);
  return r;
}

Series inverse_residual(ExpKind kind, int order) {
  Translation fl;
  Inversion inv;
  if (kind == ExpKind::kXIp)
    fl = Translation::kOplusBar, inv = Inversion::kOminusBar;
  else if (kind == ExpKind::kBarXIp)
    fl = Translation::kOplus, inv = Inversion::kOminus;
  else
    throw std::invalid_argument("inverse law is stated for exp(x|ip) and its bar form");
  QExponential e = build_exponential(kind, order);
  Series F = translate(e.body, fl);
  Series r = multiply_xy(apply_second(F, [inv](const Series& g) { return invert_coordinates(g, inv); })) - Series(1);
  Box b;
  b.b[kGX] = order + 1;
  r.set_box(b);
  return r;
}

ExpKind eigenfunction_kind(Eigenfunction which) {
  switch (which) {
    case Eigenfunction::kUp: return ExpKind::kXIp;
    case Eigenfunction::kUUp: return ExpKind::kIpX;
    case Eigenfunction::kUBarP: return ExpKind::kBarXIp;
    case Eigenfunction::kUBarUp: return ExpKind::kBarIpX;
    case Eigenfunction::kUStarUp: return ExpKind::kStarIpX;
    case Eigenfunction::kUStarP: return ExpKind::kStarXIp;
  }
  throw std::invalid_argument("unknown eigenfunction");
}

Series momentum_eigenfunction(Eigenfunction which, int order) {
  return build_exponential(eigenfunction_kind(which), order).body;
}

int classical_sign(ExpKind kind) { return is_left(kind) ? 1 : -1; }

}  // namespace qkg
