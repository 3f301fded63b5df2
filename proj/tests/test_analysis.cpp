#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"
#include "relaycci/analysis.hpp"
#include "relaycci/errors.hpp"
#include "relaycci/sir.hpp"
#include "relaycci/specfun.hpp"

using namespace relaycci;

namespace {

// Symmetric chain with a3 == scale (P = inr = 1).
SymmetricChain chain_with_scale(double alpha, double beta, double scale, std::size_t k) {
    return {HopParams{alpha, beta, alpha / (beta * scale), 1.0}, k, 1.0};
}

SymmetricChain chain(double alpha, double beta, double snr, double inr, double power,
                     std::size_t k) {
    return {HopParams{alpha, beta, snr, inr}, k, power};
}

}  // namespace

TEST_CASE("upper_bound_cdf_general") {
    const SystemConfig cfg{{HopParams{1.3, 0.7, 2.0, 1.0}, HopParams{2.1, 1.9, 0.5, 3.0}}, 1.5};
    CHECK(upper_bound_cdf_general(cfg, 0.0) == 0.0);

    SystemConfig one{{HopParams{1.3, 0.7, 2.0, 1.0}}, 1.5};
    for (double x : {1e-3, 0.3, 7.0}) {
        CHECK(oracle::rel_err(upper_bound_cdf_general(one, x), hop_sir_cdf(one.hops[0], 1.5, x)) <
              1e-14);
    }
    const auto two = chain_with_scale(1.0, 1.0, 1.0, 2).to_config();
    CHECK(upper_bound_cdf_general(two, 1.0) == doctest::Approx(0.75).epsilon(1e-14));

    // product form against the per-hop CDFs
    for (double x : oracle::logspace(1e-3, 1e2, 11)) {
        const double f0 = hop_sir_cdf(cfg.hops[0], cfg.power, x);
        const double f1 = hop_sir_cdf(cfg.hops[1], cfg.power, x);
        CHECK(std::fabs(upper_bound_cdf_general(cfg, x) - (1.0 - (1.0 - f0) * (1.0 - f1))) < 1e-14);
    }
    CHECK_THROWS_AS(upper_bound_cdf_general(cfg, -1.0), DomainError);
}

TEST_CASE("upper_bound_cdf_symmetric") {
    CHECK(upper_bound_cdf_symmetric(chain_with_scale(1.0, 1.0, 1.0, 1), 1.0) ==
          doctest::Approx(0.5).epsilon(1e-14));
    CHECK(upper_bound_cdf_symmetric(chain_with_scale(1.0, 1.0, 1.0, 3), 1.0) ==
          doctest::Approx(0.875).epsilon(1e-14));
    CHECK(upper_bound_cdf_symmetric(chain(2.3, 0.8, 5.0, 2.0, 1.0, 4), 0.0) == 0.0);
    // general product on identical hops
    const auto c = chain(1.2, 0.8, 3.0, 1.0, 2.0, 5);
    for (double x : oracle::logspace(1e-4, 1e3, 15)) {
        CHECK(oracle::rel_err(upper_bound_cdf_symmetric(c, x),
                              upper_bound_cdf_general(c.to_config(), x)) < 1e-13);
    }
}

TEST_CASE("upper_bound_cdf_worst_hop") {
    const auto c = chain(2.3, 1.0, 10.0, 1.0, 1.0, 3);
    for (double x : {1e-3, 0.5, 4.0, 1e3}) {
        CHECK(upper_bound_cdf_worst_hop(c.to_config(), x) == upper_bound_cdf_symmetric(c, x));
    }
    const SystemConfig one{{HopParams{0.9, 2.5, 3.0, 1.0}}, 1.0};
    CHECK(upper_bound_cdf_worst_hop(one, 0.7) == hop_sir_cdf(one.hops[0], 1.0, 0.7));

    // Two hops, hop 0 is worst (means 2 vs 2r). Replacing hop 1 by a copy of
    // hop 0 over-counts; the error vanishes as the chain becomes symmetric.
    auto two_hop = [](double r) {
        return SystemConfig{{HopParams{1.2, 2.0, 1.0, 1.0}, HopParams{1.2, 2.0, r, 1.0}}, 1.0};
    };
    const double x = 0.05;
    double prev_err = INFINITY;
    for (double r : {100.0, 10.0, 3.0, 1.5, 1.0}) {
        const auto cfg = two_hop(r);
        CHECK(worst_hop(cfg) == 0);
        const double exact = upper_bound_cdf_general(cfg, x);
        const double approx = upper_bound_cdf_worst_hop(cfg, x);
        CHECK(approx >= exact);
        const double err = (approx - exact) / exact;
        CHECK(err < prev_err);
        prev_err = err;
    }
    CHECK(prev_err < 1e-14);
    // spot value against the general product
    const auto cfg = two_hop(10.0);
    const double f0 = hop_sir_cdf(cfg.hops[0], 1.0, x);
    const double f1 = hop_sir_cdf(cfg.hops[1], 1.0, x);
    CHECK(upper_bound_cdf_general(cfg, x) == doctest::Approx(f0 + f1 - f0 * f1).epsilon(1e-13));
    CHECK(upper_bound_cdf_worst_hop(cfg, x) ==
          doctest::Approx(1.0 - (1.0 - f0) * (1.0 - f0)).epsilon(1e-13));
}

TEST_CASE("lower_bound_cdf") {
    const auto c1 = chain(1.7, 0.9, 4.0, 1.0, 1.0, 1);
    for (double x : {0.01, 1.0, 30.0}) {
        CHECK(lower_bound_cdf_symmetric(c1, x) == upper_bound_cdf_symmetric(c1, x));
        CHECK(lower_bound_cdf_general(c1.to_config(), x) ==
              upper_bound_cdf_general(c1.to_config(), x));
    }
    CHECK(lower_bound_cdf_symmetric(chain_with_scale(1.0, 1.0, 1.0, 2), 0.5) ==
          doctest::Approx(0.75).epsilon(1e-14));

    const SystemConfig mixed{{HopParams{1.2, 0.8, 2.0, 1.0}, HopParams{2.3, 1.0, 1.0, 2.0},
                              HopParams{0.9, 3.0, 5.0, 1.0}},
                             1.0};
    for (double x : oracle::logspace(1e-5, 1e3, 60)) {
        CHECK(lower_bound_cdf_general(mixed, x) >= upper_bound_cdf_general(mixed, x));
        CHECK(lower_bound_cdf_worst_hop(mixed, x) >= upper_bound_cdf_worst_hop(mixed, x));
        CHECK(lower_bound_cdf_general(mixed, x) == upper_bound_cdf_general(mixed, 3.0 * x));
    }
}

TEST_CASE("outage_bounds") {
    const auto k1 = chain(1.4, 2.0, 3.0, 1.0, 1.0, 1).to_config();
    const auto b1 = outage_bounds(k1, {0.8});
    CHECK(b1.low == b1.high);

    const auto b2 = outage_bounds(chain_with_scale(1.0, 1.0, 1.0, 2).to_config(), {1.0});
    CHECK(b2.low == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(b2.high == doctest::Approx(8.0 / 9.0).epsilon(1e-14));
    CHECK_THROWS_AS(outage_bounds(k1, {0.0}), DomainError);
}

TEST_CASE("asymptotic_params") {
    auto p = asymptotic_params(1.0, 1.0, 1.0, 1);
    CHECK(p.t == 0.0);
    CHECK(p.b == doctest::Approx(1.0).epsilon(1e-15));

    const auto c = chain(1.0, 2.0, 1.0, 1.0, 1.0, 2);
    CHECK(c.scale() == 0.5);
    p = asymptotic_params(c);
    CHECK(p.t == 0.0);
    CHECK(p.b == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(asymptotic_params(0.0, 1.0, 1.0, 2), DomainError);
}

TEST_CASE("asymptote: F_upper(x) / (b x^(t+1)/(t+1)) -> 1") {
    for (double alpha : {0.8, 1.0, 2.3}) {
        for (double beta : {0.8, 1.0, 3.0}) {
            const auto c = chain(alpha, beta, 10.0, 1.0, 1.0, 3);
            const auto p = asymptotic_params(c);
            // x with F_upper(x) < 1e-4
            double x = 1.0;
            while (upper_bound_cdf_symmetric(c, x) >= 1e-4) x /= 2.0;
            x /= 64.0;
            const double lead = p.b * std::pow(x, p.t + 1.0) / (p.t + 1.0);
            CHECK(oracle::rel_err(upper_bound_cdf_symmetric(c, x), lead) < 1e-2);
            CHECK(oracle::rel_err(upper_bound_cdf_asymptote(c.to_config(), x), lead) < 1e-13);
        }
    }
}

TEST_CASE("asymptotic_params matches the finite-difference density near 0") {
    for (double alpha : {0.8, 1.2, 2.3}) {
        for (double beta : {0.8, 2.0}) {
            for (std::size_t k : {2u, 6u}) {
                const auto c = chain(alpha, beta, 3.0, 1.0, 1.0, k);
                const auto p = asymptotic_params(c);
                const double x = 1e-12 / c.scale();
                const double h = 1e-3 * x;
                const double fd = (upper_bound_cdf_symmetric(c, x + h) -
                                   upper_bound_cdf_symmetric(c, x - h)) / (2.0 * h);
                CHECK_MESSAGE(oracle::rel_err(fd, p.b * std::pow(x, p.t)) < 1e-6,
                              "alpha=" << alpha << " beta=" << beta << " K=" << k);
            }
        }
    }
}

TEST_CASE("bound-gap law F_lower/F_upper -> K^alpha") {
    for (double alpha : {1.0, 2.0}) {
        for (std::size_t k : {2u, 3u, 6u}) {
            const auto c = chain(alpha, 1.5, 1.0, 1.0, 1.0, k);
            double x = 1.0;
            while (upper_bound_cdf_symmetric(c, x) >= 1e-6) x /= 2.0;
            const double ratio = lower_bound_cdf_symmetric(c, x) / upper_bound_cdf_symmetric(c, x);
            CHECK(oracle::rel_err(ratio, std::pow(static_cast<double>(k), alpha)) < 1e-2);
        }
    }
}

TEST_CASE("beta-independence of the alpha = 1 asymptote") {
    for (std::size_t k : {2u, 6u}) {
        const double x = 1e-5 / static_cast<double>(k);
        const double f08 = upper_bound_cdf_symmetric(chain(1.0, 0.8, 1.0, 1.0, 1.0, k), x);
        const double f10 = upper_bound_cdf_symmetric(chain(1.0, 1.0, 1.0, 1.0, 1.0, k), x);
        CHECK(f10 < 1e-4);
        CHECK(oracle::rel_err(f08 / f10, 1.0) < 0.02);
        const double lead = static_cast<double>(k) * x;
        CHECK(oracle::rel_err(f08, lead) < 0.03);
        CHECK(oracle::rel_err(f10, lead) < 0.03);
    }
}

TEST_CASE("diversity slope of the closed form at 45-50 dB") {
    for (double alpha : {0.8, 1.0, 1.2, 2.0, 2.3, 3.0}) {
        auto f = [&](double snr_db) {
            return upper_bound_cdf_symmetric(
                chain(alpha, 1.0, std::pow(10.0, snr_db / 10.0), 1.0, 1.0, 3), 1.0);
        };
        const double slope = (std::log10(f(50.0)) - std::log10(f(45.0))) / 0.5;
        CHECK(oracle::rel_err(slope, -alpha) < 0.02);
    }
}

TEST_CASE("coding gain: general form and the two special cases") {
    // Rayleigh desired links, hand-evaluated: 2*2*1*100/(2*10) = 20.
    CHECK(gains(chain(1.0, 1.7, 100.0, 10.0, 1.0, 2), 2.0).coding ==
          doctest::Approx(20.0).epsilon(1e-13));
    CHECK(gains_rayleigh_desired(chain(1.0, 1.7, 100.0, 10.0, 1.0, 2), 2.0).coding == 20.0);

    for (double power : {0.5, 1.0, 4.0}) {
        for (double snr : {1.0, 31.6, 1e4}) {
            for (double inr : {0.1, 1.0, 10.0}) {
                for (std::size_t k : {1u, 2u, 3u, 6u}) {
                    for (double l : {1.0, 2.0, 4.0}) {
                        for (double beta : {0.8, 1.0, 2.5}) {
                            const auto c = chain(1.0, beta, snr, inr, power, k);
                            const auto g = gains(c, l);
                            CHECK(g.diversity == 1.0);
                            CHECK(oracle::rel_err(g.coding, gains_rayleigh_desired(c, l).coding) <
                                  1e-12);
                        }
                        for (double alpha : {0.8, 1.2, 2.3, 3.0}) {
                            const auto c = chain(alpha, 1.0, snr, inr, power, k);
                            CHECK(oracle::rel_err(gains(c, l).coding,
                                                  gains_rayleigh_interference(c, l).coding) < 1e-12);
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("coding gain equals the generic asymptote formula") {
    for (double alpha : {0.8, 1.0, 1.5, 2.3, 4.0}) {
        for (double beta : {0.8, 1.0, 3.0}) {
            const auto c = chain(alpha, beta, 20.0, 2.0, 1.5, 4);
            const auto g = gains(c, 2.0);
            CHECK(g.diversity == alpha);
            CHECK(oracle::rel_err(g.coding, coding_gain_from_asymptote(asymptotic_params(c), 2.0)) <
                  1e-12);
            // G_d = t + 1
            CHECK(asymptotic_params(c).t + 1.0 == g.diversity);
        }
    }
}

TEST_CASE("coding gain stays finite for large shapes") {
    const auto g = gains(chain(60.0, 40.0, 1e3, 1.0, 1.0, 6), 2.0);
    CHECK(std::isfinite(g.coding));
    CHECK(g.coding > 0.0);
    CHECK(oracle::rel_err(g.coding,
                          coding_gain_from_asymptote(
                              asymptotic_params(chain(60.0, 40.0, 1e3, 1.0, 1.0, 6)), 2.0)) < 1e-10);
}

TEST_CASE("Rayleigh-desired coding gain: interference accumulation") {
    const auto c2 = chain(1.0, 0.8, 50.0, 3.0, 2.0, 2);
    const auto c4 = chain(1.0, 0.8, 50.0, 3.0, 2.0, 4);
    CHECK(gains_rayleigh_desired(c2, 2.0).coding / gains_rayleigh_desired(c4, 2.0).coding == 2.0);
    CHECK(gains_rayleigh_desired(c2, 2.0).diversity == 1.0);
    const auto c2b = chain(1.0, 3.0, 50.0, 3.0, 2.0, 2);
    CHECK(gains_rayleigh_desired(c2b, 2.0).coding == gains_rayleigh_desired(c2, 2.0).coding);
    CHECK(oracle::rel_err(gains(c2b, 2.0).coding, gains(c2, 2.0).coding) < 1e-12);
}

TEST_CASE("coding gain monotonicity on parameter grids") {
    const std::vector<double> shapes{0.8, 1.0, 1.5, 2.0, 3.0};
    for (double alpha : shapes) {
        for (double beta : shapes) {
            double prev = INFINITY;
            for (std::size_t k = 1; k <= 8; ++k) {
                const double gc = gains(chain(alpha, beta, 10.0, 1.0, 1.0, k), 2.0).coding;
                CHECK(gc < prev);
                prev = gc;
            }
            prev = INFINITY;
            for (double inr : {0.1, 0.5, 1.0, 5.0, 20.0}) {
                const double gc = gains(chain(alpha, beta, 10.0, inr, 1.0, 3), 2.0).coding;
                CHECK(gc < prev);
                prev = gc;
            }
            prev = 0.0;
            for (double snr : {0.1, 1.0, 10.0, 1e3}) {
                const double gc = gains(chain(alpha, beta, snr, 1.0, 1.0, 3), 2.0).coding;
                CHECK(gc > prev);
                prev = gc;
            }
        }
    }
    // Decreasing in alpha at every beta on the grid.
    for (double beta : shapes) {
        double prev = INFINITY;
        for (double alpha : shapes) {
            const double gc = gains(chain(alpha, beta, 10.0, 1.0, 1.0, 3), 2.0).coding;
            CHECK(gc < prev);
            prev = gc;
        }
    }
    // In beta the direction depends on alpha: decreasing for alpha < 1,
    // flat at alpha = 1, increasing for alpha > 1.
    for (double alpha : shapes) {
        std::vector<double> gc;
        for (double beta : shapes) gc.push_back(gains(chain(alpha, beta, 10.0, 1.0, 1.0, 3), 2.0).coding);
        for (std::size_t i = 1; i < gc.size(); ++i) {
            if (alpha < 1.0) CHECK(gc[i] < gc[i - 1]);
            if (alpha == 1.0) CHECK(oracle::rel_err(gc[i], gc[0]) < 1e-12);
            if (alpha > 1.0) CHECK(gc[i] > gc[i - 1]);
        }
    }
}
