#pragma once
// Truncated q-exponentials on the joint (x, p) chart, their dual forms and
// the eigenvalue, addition and inversion laws at the truncation boundary.

#include "qkg/qcalculus.hpp"

namespace qkg {

enum class ExpKind {
  kXIp,      // exp(x|ip), eigenfunction of the plain left action
  kIpX,      // exp(i^-1 p|x), plain right action
  kBarXIp,   // bar exp(x|ip), hatted left action
  kBarIpX,   // bar exp(i^-1 p|x), hatted right action
  kStarIpX,  // exp*(ip|x), right action f <| d^A
  kStarXIp,  // exp*(x|i^-1 p), left action d^A |>bar f
};
const char* exp_kind_name(ExpKind k);

struct QExponential {
  ExpKind kind;
  int order;
  Series body;  // box: x- and p-degree N+1
};

QExponential build_exponential(ExpKind kind, int order);
// kStarIpX / kStarXIp from the matching bar exponential
QExponential dual_exponential(ExpKind kind, int order);

// side and calculus of the action that has the exponential as eigenfunction
ActionVariant matched_action(ExpKind kind, int index);
// i^-1 act(A, e) - e (*) p^A, or the mirrored form for right actions; the
// variant must match the kind (std::invalid_argument otherwise)
Series eigen_residual(const QExponential& e, const ActionVariant& v);
Series eigen_residual(const QExponential& e, int index);

// translate(e) - e(y|.) (*) e(x|.), p-parts of the y copy on the left;
// kXIp uses oplus-bar, kBarXIp uses oplus
Series addition_residual(ExpKind kind, int order);
// m((id (x) inversion) translate(e)) - 1
Series inverse_residual(ExpKind kind, int order);

enum class Eigenfunction { kUp, kUUp, kUBarP, kUBarUp, kUStarUp, kUStarP };
// u_p, u^p, u-bar_p, u-bar^p and the duals with vol = 1
Series momentum_eigenfunction(Eigenfunction which, int order);
ExpKind eigenfunction_kind(Eigenfunction which);

// +1 when the q = 1 limit is exp(i g(x, p)), -1 for exp(-i g(x, p))
int classical_sign(ExpKind kind);

// p^A on the momentum chart
inline Series momentum(int a) { return upper_coordinate(a, kChartP); }

}  // namespace qkg
