#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "relaycci/analysis.hpp"
#include "relaycci/channel.hpp"

namespace relaycci {

/// Monte-Carlo run parameters.
///
/// Trials are split into chunks of `chunk` consecutive trials; chunk j draws
/// from RandomStream(seed, j). Results depend on (seed, chunk, trials) only,
/// never on `workers`.
struct McConfig {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    std::uint64_t chunk = 65'536;
    unsigned workers = 1;  ///< 0 = std::thread::hardware_concurrency()

    void validate() const;

    /// Copy with a seed derived from (seed, id), for independent sub-experiments.
    McConfig substream(std::uint64_t id) const;

    bool operator==(const McConfig&) const = default;
};

/// Empirical probability with binomial standard error.
struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;

    static McEstimate from_count(std::uint64_t hits, std::uint64_t trials);
};

struct BoundOutageEstimates {
    McEstimate upper;  ///< P(min gamma_i < th)
    McEstimate lower;  ///< P(min gamma_i / K < th)
};

struct E2eSample {
    double e2e;
    double upper;
    double lower;
};

/// Outage of the exact end-to-end SIR: fraction of trials with gamma_e2e < th.
McEstimate simulate_outage(const SystemConfig& config, OutageQuery query,
                           const McConfig& mc);

/// Empirical CDFs of both SIR bounds at th, from the same realizations.
BoundOutageEstimates simulate_bound_outages(const SystemConfig& config,
                                            OutageQuery query, const McConfig& mc);

/// Per-trial (e2e, upper, lower) triples, in trial order.
std::vector<E2eSample> sample_e2e_batch(const SystemConfig& config, const McConfig& mc);

/// config with every hop's snr_desired multiplied by 10^(snr_db/10).
SystemConfig at_snr_db(const SystemConfig& base, double snr_db);

/// Least-squares slope of log10(outage) against log10(snr) over the points.
///
/// Each point runs simulate_outage on at_snr_db(base, point) with its own
/// substream. Throws DomainError for fewer than two distinct points and when
/// the closed-form outage lower bound at some point is under 100/trials.
double estimate_diversity_slope(const SystemConfig& base, OutageQuery query,
                                std::span<const double> snr_points_db,
                                const McConfig& mc);

}  // namespace relaycci
