#include "relaycci/analysis.hpp"

#include <cmath>
#include <numbers>

#include "relaycci/errors.hpp"
#include "relaycci/sir.hpp"
#include "relaycci/specfun.hpp"

namespace relaycci {
namespace {

void require_nonneg(double x) {
    if (!(x >= 0.0)) throw DomainError("bound CDF: x must be >= 0");
}

// log(1 - F) with whichever of cdf / ccdf carries the precision.
double log_survival(const HopDistribution& d) {
    return d.cdf < 0.5 ? std::log1p(-d.cdf) : std::log(d.ccdf);
}

double symmetric_upper(const HopParams& hop, double power, std::size_t hops, double x) {
    require_nonneg(x);
    const auto d = hop_sir_distribution(hop, power, x);
    return -std::expm1(static_cast<double>(hops) * log_survival(d));
}

double log_coding_prefactor(const SymmetricChain& chain, double mod_const) {
    // ln(l P beta snr / (alpha inr)) = ln l - ln a3
    return std::log(mod_const) - std::log(chain.scale());
}

}  // namespace

double SymmetricChain::scale() const { return hop_scale(hop, power); }

SystemConfig SymmetricChain::to_config(double mod_const) const {
    return SystemConfig::symmetric(hop, hops, power, mod_const);
}

std::optional<SymmetricChain> as_symmetric(const SystemConfig& config) {
    if (!config.is_symmetric()) return std::nullopt;
    return SymmetricChain{config.hops.front(), config.hop_count(), config.power};
}

SymmetricChain worst_hop_chain(const SystemConfig& config) {
    return {config.hops.at(worst_hop(config)), config.hop_count(), config.power};
}

double upper_bound_cdf_general(const SystemConfig& config, double x) {
    require_nonneg(x);
    double log_surv = 0.0;
    for (const auto& hop : config.hops) {
        log_surv += log_survival(hop_sir_distribution(hop, config.power, x));
    }
    return -std::expm1(log_surv);
}

double upper_bound_cdf_symmetric(const SymmetricChain& chain, double x) {
    return symmetric_upper(chain.hop, chain.power, chain.hops, x);
}

double upper_bound_cdf_worst_hop(const SystemConfig& config, double x) {
    const auto& hop = config.hops.at(worst_hop(config));
    return symmetric_upper(hop, config.power, config.hop_count(), x);
}

double lower_bound_cdf_general(const SystemConfig& config, double x) {
    return upper_bound_cdf_general(config, static_cast<double>(config.hop_count()) * x);
}

double lower_bound_cdf_symmetric(const SymmetricChain& chain, double x) {
    return upper_bound_cdf_symmetric(chain, static_cast<double>(chain.hops) * x);
}

double lower_bound_cdf_worst_hop(const SystemConfig& config, double x) {
    return upper_bound_cdf_worst_hop(config, static_cast<double>(config.hop_count()) * x);
}

OutageBounds outage_bounds(const SystemConfig& config, OutageQuery query) {
    if (!(query.threshold > 0.0)) throw DomainError("outage threshold must be > 0");
    return {upper_bound_cdf_general(config, query.threshold),
            lower_bound_cdf_general(config, query.threshold)};
}

OutageBounds outage_bounds_worst_hop(const SystemConfig& config, OutageQuery query) {
    if (!(query.threshold > 0.0)) throw DomainError("outage threshold must be > 0");
    return {upper_bound_cdf_worst_hop(config, query.threshold),
            lower_bound_cdf_worst_hop(config, query.threshold)};
}

double upper_bound_cdf_asymptote(const SystemConfig& config, double x) {
    require_nonneg(x);
    if (x == 0.0) return 0.0;
    double sum = 0.0;
    for (const auto& hop : config.hops) {
        const double y = hop_scale(hop, config.power) * x;
        sum += std::exp(hop.alpha * std::log(y) - std::log(hop.alpha) -
                        specfun::log_beta(hop.alpha, hop.beta));
    }
    return sum;
}

AsymptoticParams asymptotic_params(double alpha, double beta, double a3,
                                   std::size_t hops) {
    if (!(alpha > 0.0) || !(beta > 0.0) || !(a3 > 0.0) || hops == 0) {
        throw DomainError("asymptotic_params: parameters must be positive");
    }
    const double log_b = std::log(static_cast<double>(hops)) + alpha * std::log(a3) -
                         specfun::log_beta(alpha, beta);
    return {alpha - 1.0, std::exp(log_b)};
}

AsymptoticParams asymptotic_params(const SymmetricChain& chain) {
    return asymptotic_params(chain.hop.alpha, chain.hop.beta, chain.scale(), chain.hops);
}

double coding_gain_from_asymptote(const AsymptoticParams& p, double mod_const) {
    const double d = p.t + 1.0;
    const double log_inner = p.t * std::numbers::ln2 + std::log(p.b) +
                             specfun::log_gamma(p.t + 1.5) -
                             0.5 * std::log(std::numbers::pi) - std::log(d);
    return mod_const * std::exp(-log_inner / d);
}

GainReport gains(const SymmetricChain& chain, double mod_const) {
    const double alpha = chain.hop.alpha;
    const double log_inner = 0.5 * std::log(std::numbers::pi) + std::log(alpha) +
                             specfun::log_beta(alpha, chain.hop.beta) -
                             (alpha - 1.0) * std::numbers::ln2 -
                             specfun::log_gamma(alpha + 0.5);
    // K kept as a separate factor so that K-scaling is exact at alpha = 1
    const double k_factor = std::pow(static_cast<double>(chain.hops), -1.0 / alpha);
    return {alpha,
            std::exp(log_coding_prefactor(chain, mod_const) + log_inner / alpha) * k_factor};
}

GainReport gains_rayleigh_desired(const SymmetricChain& chain, double mod_const) {
    const double k = static_cast<double>(chain.hops);
    return {1.0, 2.0 * mod_const * chain.power * chain.hop.snr_desired / (k * chain.hop.inr)};
}

GainReport gains_rayleigh_interference(const SymmetricChain& chain, double mod_const) {
    const double alpha = chain.hop.alpha;
    const double log_pref = std::log(mod_const * chain.power * chain.hop.snr_desired /
                                     (alpha * chain.hop.inr));
    const double log_inner = 0.5 * std::log(std::numbers::pi) -
                             (alpha - 1.0) * std::numbers::ln2 -
                             std::log(static_cast<double>(chain.hops)) -
                             specfun::log_gamma(alpha + 0.5);
    return {alpha, std::exp(log_pref + log_inner / alpha)};
}

}  // namespace relaycci
