#pragma once

#include <cstddef>
#include <optional>

#include "relaycci/channel.hpp"

namespace relaycci {

/// K identical hops sharing transmit power P.
struct SymmetricChain {
    HopParams hop;
    std::size_t hops = 1;
    double power = 1.0;

    /// a3 = alpha*inr / (P*beta*snr_desired).
    double scale() const;
    SystemConfig to_config(double mod_const = 2.0) const;
};

/// Chain built from config if all hops are identical.
std::optional<SymmetricChain> as_symmetric(const SystemConfig& config);

/// K copies of the worst hop of config (the worst-hop approximation).
SymmetricChain worst_hop_chain(const SystemConfig& config);

/// Leading behaviour b x^t of the end-to-end SIR density at x -> 0.
struct AsymptoticParams {
    double t;
    double b;
};

struct GainReport {
    double diversity;
    double coding;
};

struct OutageQuery {
    double threshold;  ///< gamma_th, linear, > 0
};

/// Outage bracket for one threshold: low = F_upper(th), high = F_upper(K th).
struct OutageBounds {
    double low;
    double high;
};

// CDF of the upper bound min_i gamma_i.

/// Exact order-statistics product 1 - prod_i (1 - F_i(x)).
double upper_bound_cdf_general(const SystemConfig& config, double x);
/// 1 - (1 - F_sym(x))^K.
double upper_bound_cdf_symmetric(const SymmetricChain& chain, double x);
/// 1 - (1 - F_worst(x))^K with the worst hop from worst_hop().
double upper_bound_cdf_worst_hop(const SystemConfig& config, double x);

// CDF of the lower bound min_i gamma_i / K: F_lower(x) = F_upper(K x).

double lower_bound_cdf_general(const SystemConfig& config, double x);
double lower_bound_cdf_symmetric(const SymmetricChain& chain, double x);
double lower_bound_cdf_worst_hop(const SystemConfig& config, double x);

OutageBounds outage_bounds(const SystemConfig& config, OutageQuery query);
OutageBounds outage_bounds_worst_hop(const SystemConfig& config, OutageQuery query);

/// First-order small-x expansion of upper_bound_cdf_general:
/// sum_i (a2_i x)^alpha_i / (alpha_i B(alpha_i, beta_i)).
double upper_bound_cdf_asymptote(const SystemConfig& config, double x);

/// t = alpha - 1, b = K a3^alpha / B(alpha, beta).
AsymptoticParams asymptotic_params(double alpha, double beta, double a3,
                                   std::size_t hops);
AsymptoticParams asymptotic_params(const SymmetricChain& chain);

/// Coding gain of a density b x^t near zero:
///   l * (2^t b Gamma(t + 3/2) / (sqrt(pi) (t + 1)))^(-1/(t+1)).
double coding_gain_from_asymptote(const AsymptoticParams& params, double mod_const);

/// Diversity alpha and the closed-form coding gain
///   (l P beta snr / (alpha inr)) * (sqrt(pi) alpha B(alpha,beta)
///                                   / (2^(alpha-1) K Gamma(alpha+1/2)))^(1/alpha).
/// Assembled in log space.
GainReport gains(const SymmetricChain& chain, double mod_const);

/// Rayleigh desired links (alpha = 1): G_d = 1, G_c = 2 l P snr / (K inr).
/// Ignores chain.hop.alpha and chain.hop.beta.
GainReport gains_rayleigh_desired(const SymmetricChain& chain, double mod_const);

/// Rayleigh interferers (beta = 1): G_d = alpha,
///   G_c = (l P snr / (alpha inr)) (sqrt(pi) / (2^(alpha-1) K Gamma(alpha+1/2)))^(1/alpha).
/// Ignores chain.hop.beta.
GainReport gains_rayleigh_interference(const SymmetricChain& chain, double mod_const);

}  // namespace relaycci
