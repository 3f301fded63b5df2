#include "relaycci/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relaycci/errors.hpp"

namespace relaycci {
namespace {

void require_positive(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
        throw DomainError(std::string(name) + " must be finite and > 0");
    }
}

}  // namespace

void HopParams::validate() const {
    require_positive(alpha, "alpha");
    require_positive(beta, "beta");
    require_positive(snr_desired, "snr_desired");
    require_positive(inr, "inr");
}

SystemConfig SystemConfig::symmetric(const HopParams& hop, std::size_t hop_count,
                                     double power, double mod_const) {
    SystemConfig cfg;
    cfg.hops.assign(hop_count, hop);
    cfg.power = power;
    cfg.mod_const = mod_const;
    return cfg;
}

bool SystemConfig::is_symmetric() const noexcept {
    return !hops.empty() &&
           std::all_of(hops.begin(), hops.end(),
                       [&](const HopParams& h) { return h == hops.front(); });
}

void SystemConfig::validate() const {
    if (hops.empty()) throw DomainError("system needs at least one hop");
    for (const auto& h : hops) h.validate();
    require_positive(power, "power");
    require_positive(mod_const, "mod_const");
}

void InterfererSpec::validate() const {
    require_positive(shape, "interferer shape");
    require_positive(inr, "interferer inr");
    if (count < 1) throw DomainError("interferer count must be >= 1");
}

double sample_gamma(double shape, double scale, RandomStream& rng) {
    if (shape == 1.0) return -std::log(rng.uniform()) * scale;
    if (shape < 1.0) {
        const double g = sample_gamma(shape + 1.0, scale, rng);
        return g * std::pow(rng.uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v * scale;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v * scale;
    }
}

double sample_power_gain(double shape, double mean_power, RandomStream& rng) {
    return sample_gamma(shape, mean_power / shape, rng);
}

EquivalentInterferer aggregate_iid_interferers(const InterfererSpec& spec) {
    spec.validate();
    const double n = static_cast<double>(spec.count);
    return {spec.shape * n, spec.inr * n};
}

EquivalentInterferer aggregate_nonidentical_interferers(
    std::span<const InterfererSpec> specs) {
    if (specs.empty()) throw DomainError("interferer list is empty");
    const auto same_law = [&](const InterfererSpec& s) {
        return s.shape == specs.front().shape && s.inr == specs.front().inr;
    };
    if (std::all_of(specs.begin(), specs.end(), same_law)) {
        // Identical groups sum to an exact Gamma.
        InterfererSpec pooled = specs.front();
        pooled.count = 0;
        for (const auto& s : specs) {
            s.validate();
            pooled.count += s.count;
        }
        return aggregate_iid_interferers(pooled);
    }
    double mean = 0.0;
    double var = 0.0;
    for (const auto& s : specs) {
        s.validate();
        const double n = static_cast<double>(s.count);
        mean += n * s.inr;
        var += n * s.inr * s.inr / s.shape;
    }
    return {mean * mean / var, mean};
}

}  // namespace relaycci
