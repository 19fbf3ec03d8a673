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

// the constant d_B = act(B, x_B); anything else means the action and the
// coordinate do not pair
Scalar pairing_constant(const Series& s) {
  if (s.size() != 1 || s.terms()[0].first != 0)
    throw std::logic_error("extraction inconsistency: derivative of a coordinate is not constant");
  return s.terms()[0].second;
}

using Table = std::array<std::array<MonoOp, 3>, 3>;

template <class F>
Table make_table(F fn) {
  auto row = [&fn](int a) {
    return std::array<MonoOp, 3>{MonoOp([fn, a](const Triple& t) { return fn(a, 0, t); }, 0),
                                 MonoOp([fn, a](const Triple& t) { return fn(a, 1, t); }, 0),
                                 MonoOp([fn, a](const Triple& t) { return fn(a, 2, t); }, 0)};
  };
  return {row(0), row(1), row(2)};
}

const Table& l_plain() {
  static const Table t =
      make_table([](int a, int b, const Triple& m) { return extract_l(d_left, Ordering::kStandard, a, b, tri(m)); });
  return t;
}

const Table& l_hatted() {
  static const Table t = make_table(
      [](int a, int b, const Triple& m) { return extract_l(dhat_left, Ordering::kStandard, a, b, tri(m)); });
  return t;
}

const Table& r_closed() {
  static const Table t = make_table([](int c, int b, const Triple& m) {
    Series psi = conjugate(tri(m)), r;
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) {
        Scalar g = metric_lower(c, x) * metric_upper(y, b);
        if (!g.is_zero()) r += conjugate(l_hatted()[std::size_t(x)][std::size_t(y)].apply(psi)).scaled(g);
      }
    return r;
  });
  return t;
}

std::vector<Triple> basis(int d) {
  std::vector<Triple> out;
  for (int a = 0; a <= d; ++a)
    for (int b = 0; b <= d - a; ++b) out.push_back({a, b, d - a - b});
  return out;
}

// Gauss-Jordan over scalars; the matrix is square and invertible
std::vector<std::vector<Scalar>> invert(std::vector<std::vector<Scalar>> m) {
  std::size_t n = m.size();
  std::vector<std::vector<Scalar>> inv(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Scalar(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) throw std::logic_error("singular L-matrix block");
    std::swap(m[c], m[p]);
    std::swap(inv[c], inv[p]);
    Scalar iv = m[c][c].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      if (!m[c][j].is_zero()) m[c][j] *= iv;
      if (!inv[c][j].is_zero()) inv[c][j] *= iv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c].is_zero()) continue;
      Scalar f = m[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        if (!m[c][j].is_zero()) m[r][j] -= f * m[c][j];
        if (!inv[c][j].is_zero()) inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

struct BlockInverse {
  std::vector<Triple> basis;
  std::vector<std::vector<Scalar>> inv;
};

const BlockInverse& block_inverse(int d) {
  static std::mutex mu;
  static std::map<int, BlockInverse> cache;
  std::lock_guard lk(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  BlockInverse bi;
  bi.basis = basis(d);
  std::size_t n = bi.basis.size();
  std::map<Key, std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) idx[detail::key_of(bi.basis[i], kChartX)] = i;
  // block (D, B) holds the matrix of L^B_D
  std::vector<std::vector<Scalar>> big(3 * n, std::vector<Scalar>(3 * n));
  for (std::size_t dd = 0; dd < 3; ++dd)
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t j = 0; j < n; ++j)
        for (auto& [k, c] : l_plain()[b][dd].image(bi.basis[j]).terms()) big[dd * n + idx.at(k)][b * n + j] = c;
  bi.inv = invert(std::move(big));
  return cache.emplace(d, std::move(bi)).first->second;
}

const Table& r_block() {
  static const Table t = make_table([](int c, int b, const Triple& m) {
    int d = m[0] + m[1] + m[2];
    const BlockInverse& bi = block_inverse(d);
    std::size_t n = bi.basis.size(), j = 0;
    while (bi.basis[j] != m) ++j;
    std::vector<Series::Term> out;
    for (std::size_t i = 0; i < n; ++i) {
      const Scalar& v = bi.inv[std::size_t(b) * n + i][std::size_t(c) * n + j];
      if (!v.is_zero()) out.emplace_back(detail::key_of(bi.basis[i], kChartX), v);
    }
    return Series::from_terms(std::move(out));
  });
  return t;
}

void check_spatial(int a, int b) {
  if (a < 0 || a > 2 || b < 0 || b > 2) throw std::invalid_argument("L-matrix index out of range");
}

}  // namespace

Series extract_l(const ActionFn& act, Ordering ord, int a, int b, const Series& u) {
  check_spatial(a, b);
  Series xb = lowered_coordinate(b);
  Scalar d = pairing_constant(act(b, xb));
  return (act(a, star(u, xb, ord)) - star(act(a, u), xb, ord)).scaled(d.inverse());
}

Series extract_l_right(const ActionFn& act, Ordering ord, int a, int b, const Series& g) {
  check_spatial(a, b);
  Series xb = lowered_coordinate(b);
  Scalar d = pairing_constant(act(b, xb));
  return (act(a, star(xb, g, ord)) - star(xb, act(a, g), ord)).scaled(d.inverse());
}

Series l_matrix_action(Calculus calc, int a, int b, const Series& u) {
  check_spatial(a, b);
  const Table& t = calc == Calculus::kPlain ? l_plain() : l_hatted();
  return t[std::size_t(a)][std::size_t(b)].apply(u);
}

Series right_l_action(int c, int b, const Series& psi) {
  check_spatial(c, b);
  return r_closed()[std::size_t(c)][std::size_t(b)].apply(psi);
}

Series right_l_block_inverse(int c, int b, const Series& psi) {
  check_spatial(c, b);
  return r_block()[std::size_t(c)][std::size_t(b)].apply(psi);
}

}  // namespace qkg
