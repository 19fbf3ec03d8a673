#pragma once
// The two q-differential calculi on the commutative model: Jackson
// derivatives, left and right actions, L-matrix actions by probe extraction,
// antiderivatives, the scaling operator, q-translations and q-inversions.
//
// Index values: 0 '+', 1 '3', 2 '-', kIdxTime for the time derivative.
// Unless a function name says "lower", the derivative index is raised.

#include <functional>

#include "qkg/starcalc.hpp"

namespace qkg {

constexpr int kIdxTime = 3;

Series jackson_derivative(const Series& f, int var, int base);
Series rescale(const Series& f, int var, int power);  // f with var -> q^power var
Series time_derivative(const Series& f);

// Representation maps between the two normal orderings on one chart:
// kappa reads a commutative monomial in reversed order and re-expresses it in
// standard order; kappa_inverse undoes it.
Series kappa(const Series& f, int chart = kChartX);
Series kappa_inverse(const Series& f, int chart = kChartX);

// Left actions.
Series d_left(int a, const Series& f);               // d^A |> f
Series d_left_lower(int a, const Series& f);         // d_A |> f
Series dhat_left(int a, const Series& f);            // dhat^A |>bar f (standard-order basis)
Series dhat_left_lower(int a, const Series& f);
Series dhat_left_native(int a, const Series& f);     // same operator in the reversed-order basis
Series dhat_left_native_lower(int a, const Series& f);
Series d_left_bar(int a, const Series& f);           // d^A |>bar f = q^-6 dhat^A |>bar f
Series d_left_bar_lower(int a, const Series& f);
// Right actions, defined through conjugation.
Series d_right_bar(int a, const Series& f);          // f <|bar d^A = -conj(d_A |> conj f)
Series d_right_bar_lower(int a, const Series& f);
Series dhat_right(int a, const Series& f);           // f <| dhat^A = -conj(dhat_A |>bar conj f)
Series dhat_right_lower(int a, const Series& f);
Series dhat_right_native(int a, const Series& f);
Series d_right(int a, const Series& f);              // f <| d^A = q^-6 f <| dhat^A
Series d_right_lower(int a, const Series& f);

enum class Side { kLeft, kRight };
enum class Calculus { kPlain, kHatted };
// side x calculus: (left, plain) |>, (left, hatted) |>bar, (right, plain) <|bar,
// (right, hatted) <|.
struct ActionVariant {
  Side side = Side::kLeft;
  Calculus calculus = Calculus::kPlain;
  int index = 0;
  bool lowered = false;
};
Series act(const ActionVariant& v, const Series& f);
using ActionFn = std::function<Series(int, const Series&)>;
ActionFn action_fn(Side side, Calculus calc);

// (L)^A_B |> u by probe extraction: (act(A, u * x_B) - act(A, u) * x_B) / d_B
// with d_B = act(B, x_B).
Series l_matrix_action(Calculus calc, int a, int b, const Series& u);
// Generic extraction for an arbitrary action and star ordering.
Series extract_l(const ActionFn& act, Ordering ord, int a, int b, const Series& u);
// Right-sided extraction: ((x_B * g) <| A - x_B * (g <| A)) / d'_B.
Series extract_l_right(const ActionFn& act, Ordering ord, int a, int b, const Series& g);
// psi <| (L)^C_B for the plain calculus, closed form through the hatted L.
Series right_l_action(int c, int b, const Series& psi);
// Same operator from the block inverse of the left L table (reference).
Series right_l_block_inverse(int c, int b, const Series& psi);

// Formal antiderivative for the lowered plain left derivative d_A (or time).
Series antiderivative(int a, const Series& f);
// Lambda^power: spatial degree d picks up q^{4 power d}; t is untouched.
Series scale_operator(const Series& f, const mpq_class& power);

// q-translations: f(x) -> F(x, y) on the x and y charts.
enum class Translation { kOplus, kOplusBar };
Series translate(const Series& f, Translation flavor);
// oplus from the explicit double-sum formula in the reversed-order basis,
// without the kappa transport
Series translate_explicit_native(const Series& f);
// oplus-bar from the mirrored explicit formula
Series translate_explicit_mirror(const Series& f);
// oplus-bar as the exponential of plain derivatives, oplus as the exponential
// of hatted derivatives
Series translate_operator_form(const Series& f, Translation flavor);

enum class Inversion { kOminus, kOminusBar };
Series invert_coordinates(const Series& f, Inversion flavor);
Series invert_native(const Series& f);
Series u_operator(const Series& f);
Series u_inverse_operator(const Series& f);

// Coproduct helpers over the (x, y) pair.
Series to_y(const Series& f);
Series y_to_x(const Series& f);
using SeriesMap = std::function<Series(const Series&)>;
Series apply_first(const Series& F, const SeriesMap& op);   // acts on x, y passive
Series apply_second(const Series& F, const SeriesMap& op);  // acts on y, x passive
// m(x-part (*) y-part) with y renamed to x
Series multiply_xy(const Series& F, Ordering ord = Ordering::kStandard);
Series set_zero(const Series& F, int chart);

// Laplacians: sum g_AB d^A d^B |> f and sum g_AB (f <| d^A) <| d^B
Series laplacian_left(const Series& f);
Series laplacian_right(const Series& f);

}  // namespace qkg
