#pragma once

// Large-sample behaviour of the log-RML statistic T.
//
// Under a Lindley(l) truth the fitted xgamma parameter converges to the
// pseudo-true t~(l), the maximiser of g(t) = E_LD[ln f_XG(X; t)]; under an
// xgamma(t) truth the fitted Lindley parameter converges to l~(t), the
// maximiser of h(l) = E_XG[ln f_LD(X; l)]. With d(x) = ln f_LD(x; l*) -
// ln f_XG(x; t*) evaluated at the (true, pseudo-true) pair,
//
//   T/n -> AM = E[d(X)],   Var(T)/n -> AV = Var[d(X)],
//
// and T is asymptotically N(n AM, n AV).

#include <cstddef>

#include "rml/distributions.hpp"
#include "rml/numerics.hpp"

namespace rml {

struct AsymptoticSummary {
    Model truth;
    double pseudo_true_param;  // t~ for a Lindley truth, l~ for an xgamma truth
    double am;
    double av;

    /// The closest member of the other family.
    Model pseudo_true() const { return {other(truth.family()), pseudo_true_param}; }
};

/// g(t) = E_LD(l)[ln f_XG(X; t)].
double lindley_to_xgamma_objective(double lambda, double theta, const QuadratureSpec& spec = {});
/// dg/dt = 2/t - 1/(1+t) + E_LD[(X^2/2)/(1 + t X^2/2)] - (2+l)/(l(1+l)).
double lindley_to_xgamma_score(double lambda, double theta, const QuadratureSpec& spec = {});

/// h(l) = E_XG(t)[ln f_LD(X; l)].
double xgamma_to_lindley_objective(double theta, double lambda, const QuadratureSpec& spec = {});
/// dh/dl = 2/l - 1/(1+l) - (3+t)/(t(1+t)). No quadrature needed.
double xgamma_to_lindley_score(double theta, double lambda) noexcept;

/// Maximiser of g. Numerical: nested quadrature inside a bracketed root search.
double pseudo_true_theta(double lambda, const QuadratureSpec& spec = {});

/// Maximiser of h, closed form: positive root of c l^2 + (c-1) l - 2 = 0,
/// c = (3+t)/(t(1+t)).
double pseudo_true_lambda(double theta);

/// Pseudo-true counterpart of `truth` in the other family.
Model pseudo_true(const Model& truth, const QuadratureSpec& spec = {});

/// AM and AV for the given truth. AM uses the expanded expectation
///   2 ln(l*/t*) + ln((1+t*)/(1+l*)) + (t*-l*) E[X] + E ln(1+X) - E ln(1 + t* X^2/2),
/// AV is Var[d(X)] by direct quadrature.
AsymptoticSummary asymptotic_summary(const Model& truth, const QuadratureSpec& spec = {});

/// Var[d(X)] via the variance-of-a-sum expansion
///   a^2 V[X] + V[L1] + V[L2] + 2a Cov(X,L1) - 2a Cov(X,L2) - 2 Cov(L1,L2),
/// a = t* - l*, L1 = ln(1+X), L2 = ln(1 + t* X^2/2). Cross-check for AV.
double asymptotic_variance_expansion(const Model& truth, double pseudo_true_param, const QuadratureSpec& spec = {});

/// Normal approximation to P(correct selection) for a sample of size n:
/// Phi(sqrt(n) AM / sqrt(AV)) under a Lindley truth (T > 0 is correct),
/// Phi(-sqrt(n) AM / sqrt(AV)) under an xgamma truth.
double pcs_asymptotic(Family truth, double am, double av, std::size_t n);
double pcs_asymptotic(const AsymptoticSummary& summary, std::size_t n);
double pcs_asymptotic(const Model& truth, std::size_t n, const QuadratureSpec& spec = {});

} // namespace rml
