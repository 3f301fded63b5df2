#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "relaycci/random.hpp"

namespace relaycci {

/// Fading and interference parameters of one hop. All powers are linear
/// ratios relative to unit noise variance.
struct HopParams {
    double alpha = 1.0;        ///< Nakagami shape of the desired link
    double beta = 1.0;         ///< Nakagami shape of the interferer
    double snr_desired = 1.0;  ///< average SNR of the desired link
    double inr = 1.0;          ///< average INR of the interferer

    /// Throws DomainError unless every field is finite and > 0.
    void validate() const;

    bool operator==(const HopParams&) const = default;
};

/// A K-hop amplify-and-forward chain with a common transmit power.
struct SystemConfig {
    std::vector<HopParams> hops;
    double power = 1.0;      ///< transmit power P (linear)
    double mod_const = 2.0;  ///< constellation constant l (2 for BPSK)

    /// K identical hops.
    static SystemConfig symmetric(const HopParams& hop, std::size_t hop_count,
                                  double power, double mod_const = 2.0);

    std::size_t hop_count() const noexcept { return hops.size(); }
    bool is_symmetric() const noexcept;
    void validate() const;

    bool operator==(const SystemConfig&) const = default;
};

/// `count` i.i.d. Nakagami-m interferers of the given shape and mean power.
struct InterfererSpec {
    double shape = 1.0;
    double inr = 1.0;
    int count = 1;

    void validate() const;
    bool operator==(const InterfererSpec&) const = default;
};

/// Single Nakagami-m interferer standing in for a set of interferers.
struct EquivalentInterferer {
    double shape;
    double inr;

    bool operator==(const EquivalentInterferer&) const = default;
};

/// Draw |g|^2 for a Nakagami-m link: Gamma(shape, mean_power/shape).
double sample_power_gain(double shape, double mean_power, RandomStream& rng);

/// Gamma(shape, scale) variate. Marsaglia-Tsang for shape >= 1; for
/// shape < 1 a Gamma(shape+1) draw is scaled by U^(1/shape).
double sample_gamma(double shape, double scale, RandomStream& rng);

/// Exact reduction of N i.i.d. interferers: shape m*N, power N*inr.
EquivalentInterferer aggregate_iid_interferers(const InterfererSpec& spec);

/// Two-moment Gamma match of a sum of independent interferer groups.
/// Mean mu = sum(count*inr), variance v = sum(count*inr^2/shape);
/// returns shape mu^2/v and power mu. Throws DomainError on an empty list.
EquivalentInterferer aggregate_nonidentical_interferers(
    std::span<const InterfererSpec> specs);

}  // namespace relaycci
