#include "relaycci/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "relaycci/errors.hpp"
#include "relaycci/random.hpp"
#include "relaycci/sir.hpp"

namespace relaycci {
namespace {

constexpr double kOutageFloorCount = 100.0;

unsigned resolve_workers(unsigned requested, std::uint64_t chunks) {
    unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                : requested;
    return static_cast<unsigned>(std::min<std::uint64_t>(n, chunks));
}

// Runs fn(rng, first_trial, count) for every chunk and returns the per-chunk
// results in chunk order.
template <class Result, class Fn>
std::vector<Result> run_chunks(const McConfig& mc, Fn&& fn) {
    mc.validate();
    const std::uint64_t chunks = (mc.trials + mc.chunk - 1) / mc.chunk;
    std::vector<Result> results(chunks);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t j; (j = next.fetch_add(1)) < chunks;) {
            const std::uint64_t first = j * mc.chunk;
            const std::uint64_t count = std::min(mc.chunk, mc.trials - first);
            RandomStream rng(mc.seed, j);
            results[j] = fn(rng, first, count);
        }
    };
    const unsigned workers = resolve_workers(mc.workers, chunks);
    if (workers <= 1) {
        worker();
        return results;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    pool.clear();
    return results;
}

// Draws one realization of every hop SIR into out.
class ChainSampler {
public:
    explicit ChainSampler(const SystemConfig& config) : config_(config) {
        config_.validate();
    }

    std::size_t hops() const { return config_.hop_count(); }

    void draw(RandomStream& rng, std::vector<double>& out) const {
        out.resize(config_.hop_count());
        for (std::size_t i = 0; i < out.size(); ++i) {
            const auto& h = config_.hops[i];
            const double desired = sample_power_gain(h.alpha, h.snr_desired, rng);
            double interferer;
            do {
                interferer = sample_power_gain(h.beta, h.inr, rng);
            } while (!(interferer > 0.0));
            out[i] = hop_sir(config_.power, desired, interferer);
        }
    }

private:
    const SystemConfig& config_;
};

void require_query(OutageQuery q) {
    if (!(q.threshold > 0.0) || !std::isfinite(q.threshold)) {
        throw DomainError("outage threshold must be finite and > 0");
    }
}

}  // namespace

void McConfig::validate() const {
    if (trials < 1) throw DomainError("mc.trials must be >= 1");
    if (chunk < 1) throw DomainError("mc.chunk must be >= 1");
    if (chunk > trials) throw DomainError("mc.chunk must not exceed mc.trials");
}

McConfig McConfig::substream(std::uint64_t id) const {
    McConfig out = *this;
    out.seed = mix64(seed ^ mix64(id + 0x632BE59BD9B4E019ull));
    return out;
}

McEstimate McEstimate::from_count(std::uint64_t hits, std::uint64_t trials) {
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(hits) / n;
    return {p, std::sqrt(p * (1.0 - p) / n), trials};
}

McEstimate simulate_outage(const SystemConfig& config, OutageQuery query,
                           const McConfig& mc) {
    require_query(query);
    const ChainSampler sampler(config);
    const auto counts = run_chunks<std::uint64_t>(
        mc, [&](RandomStream& rng, std::uint64_t, std::uint64_t n) {
            std::vector<double> g;
            std::uint64_t hits = 0;
            for (std::uint64_t t = 0; t < n; ++t) {
                sampler.draw(rng, g);
                if (end_to_end_sir(g) < query.threshold) ++hits;
            }
            return hits;
        });
    std::uint64_t hits = 0;
    for (auto c : counts) hits += c;
    return McEstimate::from_count(hits, mc.trials);
}

BoundOutageEstimates simulate_bound_outages(const SystemConfig& config,
                                            OutageQuery query, const McConfig& mc) {
    require_query(query);
    const ChainSampler sampler(config);
    struct Counts {
        std::uint64_t upper = 0;
        std::uint64_t lower = 0;
    };
    const auto counts = run_chunks<Counts>(
        mc, [&](RandomStream& rng, std::uint64_t, std::uint64_t n) {
            std::vector<double> g;
            Counts c;
            for (std::uint64_t t = 0; t < n; ++t) {
                sampler.draw(rng, g);
                const SirBounds b = sir_bounds(g);
                if (b.upper < query.threshold) ++c.upper;
                if (b.lower < query.threshold) ++c.lower;
            }
            return c;
        });
    Counts total;
    for (const auto& c : counts) {
        total.upper += c.upper;
        total.lower += c.lower;
    }
    return {McEstimate::from_count(total.upper, mc.trials),
            McEstimate::from_count(total.lower, mc.trials)};
}

std::vector<E2eSample> sample_e2e_batch(const SystemConfig& config, const McConfig& mc) {
    const ChainSampler sampler(config);
    std::vector<E2eSample> out(mc.trials);
    run_chunks<char>(mc, [&](RandomStream& rng, std::uint64_t first, std::uint64_t n) {
        std::vector<double> g;
        for (std::uint64_t t = 0; t < n; ++t) {
            sampler.draw(rng, g);
            const SirBounds b = sir_bounds(g);
            out[first + t] = {end_to_end_sir(g), b.upper, b.lower};
        }
        return char{};
    });
    return out;
}

SystemConfig at_snr_db(const SystemConfig& base, double snr_db) {
    SystemConfig out = base;
    const double gain = std::pow(10.0, snr_db / 10.0);
    for (auto& h : out.hops) h.snr_desired *= gain;
    return out;
}

double estimate_diversity_slope(const SystemConfig& base, OutageQuery query,
                                std::span<const double> snr_points_db,
                                const McConfig& mc) {
    require_query(query);
    mc.validate();
    if (snr_points_db.size() < 2) {
        throw DomainError("diversity slope needs at least two SNR points");
    }
    const auto [lo, hi] = std::minmax_element(snr_points_db.begin(), snr_points_db.end());
    if (*lo == *hi) throw DomainError("diversity slope: SNR points are all identical");

    const double floor = kOutageFloorCount / static_cast<double>(mc.trials);
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < snr_points_db.size(); ++i) {
        const SystemConfig cfg = at_snr_db(base, snr_points_db[i]);
        if (outage_bounds(cfg, query).low < floor) {
            throw DomainError("diversity slope: expected outage at " +
                              std::to_string(snr_points_db[i]) +
                              " dB is below the 100/trials reliability floor");
        }
        const McEstimate est = simulate_outage(cfg, query, mc.substream(i));
        if (est.mean <= 0.0) {
            throw DomainError("diversity slope: zero empirical outage at " +
                              std::to_string(snr_points_db[i]) + " dB");
        }
        xs.push_back(snr_points_db[i] / 10.0);
        ys.push_back(std::log10(est.mean));
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace relaycci
