#pragma once

#include <cstddef>
#include <span>

#include "relaycci/channel.hpp"

namespace relaycci {

/// Lower/upper bounds on the end-to-end SIR of one channel realization.
/// Invariant: lower == upper / K (computed that way, so it holds exactly).
struct SirBounds {
    double lower;
    double upper;
};

/// CDF and survival function of one hop SIR, each accurate in its own tail.
struct HopDistribution {
    double cdf;
    double ccdf;
};

/// P|f|^2 / |h|^2. Throws DomainError if interferer_gain is not > 0.
double hop_sir(double power, double desired_gain, double interferer_gain);

/// (sum 1/gamma_i)^-1; 0 if any hop SIR is 0.
///
/// Evaluated as g_min / (1 + sum_{i != min} g_min/g_i): the denominator lies
/// in [1, K] in floating point, so min/K <= result <= min holds exactly.
double end_to_end_sir(std::span<const double> hop_sirs);

/// upper = min gamma_i, lower = upper / K.
SirBounds sir_bounds(std::span<const double> hop_sirs);

/// Scale a2 = alpha*inr / (P*beta*snr_desired) of the beta-prime hop SIR law.
double hop_scale(const HopParams& hop, double power);

/// Beta-prime density of the hop SIR. Throws DomainError for x < 0, and at
/// x == 0 when alpha < 1 (the density is unbounded there).
double hop_sir_pdf(const HopParams& hop, double power, double x);

/// Hop SIR CDF in the hypergeometric form
///   (a2 x)^alpha / (alpha B(alpha,beta)) 2F1(alpha, alpha+beta; alpha+1; -a2 x).
/// For a2 x > 1 the same form is applied to the reciprocal SIR (beta-prime
/// with shapes swapped and scale 1/a2), which yields the survival function.
HopDistribution hop_sir_distribution(const HopParams& hop, double power, double x);

double hop_sir_cdf(const HopParams& hop, double power, double x);

/// Same CDF through the incomplete beta: I_{a2x/(1+a2x)}(alpha, beta).
double hop_sir_cdf_incbeta(const HopParams& hop, double power, double x);

/// Mean hop SIR P*beta*snr / ((beta-1)*inr); +infinity when beta <= 1.
double hop_mean_sir(const HopParams& hop, double power);

/// Index (0-based) of the hop with the smallest mean SIR.
///
/// Hops with an infinite mean (beta <= 1) take precedence over every
/// finite-mean hop and are ranked among themselves by a2, largest first.
/// Ties go to the lowest index.
std::size_t worst_hop(const SystemConfig& config);

}  // namespace relaycci
