#pragma once

// Scalar special functions used by the closed-form SIR distributions.
// All functions are pure and throw DomainError on non-finite or
// out-of-domain arguments.

namespace relaycci::specfun {

inline constexpr int kSeriesBudget = 500;   ///< max ₂F₁ series terms
inline constexpr int kFractionBudget = 300; ///< max continued-fraction steps

/// ln Γ(x) for x > 0 (Lanczos, g = 7).
double log_gamma(double x);

/// ln B(p, q) for p, q > 0.
double log_beta(double p, double q);

/// B(p, q) = Γ(p)Γ(q)/Γ(p+q).
double beta(double p, double q);

/// Regularized incomplete beta I_u(p, q) for u in [0, 1].
///
/// Evaluated with the modified Lentz continued fraction; the argument is
/// reflected through I_u(p,q) = 1 - I_{1-u}(q,p) when u > (p+1)/(p+q+2).
/// Throws ConvergenceError after kFractionBudget steps.
double reg_inc_beta(double u, double p, double q);

/// Gauss hypergeometric ₂F₁(a, b; c; z) for z <= 0.
///
/// The argument is mapped onto w = z/(z-1) in [0, 1) with the Pfaff
/// transformation ₂F₁(a,b;c;z) = (1-z)^(-a) ₂F₁(a, c-b; c; w) and the
/// resulting power series is summed until the tail bound drops below
/// double precision. Convergence slows as z -> -inf; if kSeriesBudget
/// terms are not enough a ConvergenceError is thrown.
double gauss_2f1_neg(double a, double b, double c, double z);

}  // namespace relaycci::specfun
