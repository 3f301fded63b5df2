#include "relaycci/sir.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "relaycci/errors.hpp"
#include "relaycci/specfun.hpp"

namespace relaycci {
namespace {

void require_nonneg(double x, const char* what) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw DomainError(std::string(what) + ": x must be finite and >= 0");
    }
}

// y^p / (p B(p,q)) * 2F1(p, p+q; p+1; -y), i.e. I_{y/(1+y)}(p, q).
double beta_prime_cdf_series(double y, double p, double q) {
    const double lead = std::exp(p * std::log(y) - std::log(p) - specfun::log_beta(p, q));
    return lead * specfun::gauss_2f1_neg(p, p + q, p + 1.0, -y);
}

}  // namespace

double hop_sir(double power, double desired_gain, double interferer_gain) {
    if (!(interferer_gain > 0.0)) {
        throw DomainError("hop_sir: interferer gain must be > 0");
    }
    return power * desired_gain / interferer_gain;
}

double end_to_end_sir(std::span<const double> hop_sirs) {
    if (hop_sirs.empty()) throw DomainError("end_to_end_sir: no hops");
    const auto min_it = std::min_element(hop_sirs.begin(), hop_sirs.end());
    const double g_min = *min_it;
    if (g_min <= 0.0) return 0.0;
    double denom = 1.0;
    for (auto it = hop_sirs.begin(); it != hop_sirs.end(); ++it) {
        if (it != min_it) denom += g_min / *it;
    }
    return g_min / denom;
}

SirBounds sir_bounds(std::span<const double> hop_sirs) {
    if (hop_sirs.empty()) throw DomainError("sir_bounds: no hops");
    const double upper = *std::min_element(hop_sirs.begin(), hop_sirs.end());
    return {upper / static_cast<double>(hop_sirs.size()), upper};
}

double hop_scale(const HopParams& hop, double power) {
    return (hop.alpha / hop.beta) * (hop.inr / power) / hop.snr_desired;
}

double hop_sir_pdf(const HopParams& hop, double power, double x) {
    require_nonneg(x, "hop_sir_pdf");
    const double a2 = hop_scale(hop, power);
    const double y = a2 * x;
    if (y == 0.0) {
        if (hop.alpha < 1.0) {
            throw DomainError("hop_sir_pdf: density is unbounded at 0 for alpha < 1");
        }
        return hop.alpha == 1.0 ? a2 / specfun::beta(hop.alpha, hop.beta) : 0.0;
    }
    const double log_pdf = std::log(a2) - specfun::log_beta(hop.alpha, hop.beta) +
                           (hop.alpha - 1.0) * std::log(y) -
                           (hop.alpha + hop.beta) * std::log1p(y);
    return std::exp(log_pdf);
}

HopDistribution hop_sir_distribution(const HopParams& hop, double power, double x) {
    require_nonneg(x, "hop_sir_cdf");
    const double y = hop_scale(hop, power) * x;
    if (y == 0.0) return {0.0, 1.0};
    if (std::isinf(y)) return {1.0, 0.0};
    if (y <= 1.0) {
        const double cdf = beta_prime_cdf_series(y, hop.alpha, hop.beta);
        return {cdf, 1.0 - cdf};
    }
    const double ccdf = beta_prime_cdf_series(1.0 / y, hop.beta, hop.alpha);
    return {1.0 - ccdf, ccdf};
}

double hop_sir_cdf(const HopParams& hop, double power, double x) {
    return hop_sir_distribution(hop, power, x).cdf;
}

double hop_sir_cdf_incbeta(const HopParams& hop, double power, double x) {
    require_nonneg(x, "hop_sir_cdf_incbeta");
    const double y = hop_scale(hop, power) * x;
    return specfun::reg_inc_beta(y / (1.0 + y), hop.alpha, hop.beta);
}

double hop_mean_sir(const HopParams& hop, double power) {
    if (hop.beta <= 1.0) return std::numeric_limits<double>::infinity();
    return power * hop.beta * hop.snr_desired / ((hop.beta - 1.0) * hop.inr);
}

std::size_t worst_hop(const SystemConfig& config) {
    if (config.hops.empty()) throw DomainError("worst_hop: no hops");
    std::size_t best = 0;
    // Ranking key: infinite-mean hops first (by -a2), then finite means.
    auto key = [&](const HopParams& h) {
        const double mean = hop_mean_sir(h, config.power);
        return std::isinf(mean) ? std::pair{0, -hop_scale(h, config.power)}
                                : std::pair{1, mean};
    };
    auto best_key = key(config.hops[0]);
    for (std::size_t i = 1; i < config.hops.size(); ++i) {
        const auto k = key(config.hops[i]);
        if (k < best_key) {
            best = i;
            best_key = k;
        }
    }
    return best;
}

}  // namespace relaycci
