#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "hchain/propagation.hpp"
#include "hchain/squeezing.hpp"
#include "test_util.hpp"

using namespace hchain;
using Catch::Matchers::WithinAbs;

namespace {
constexpr double pi = 3.14159265358979323846;

double angle_distance(double a, double b) {
    double d = std::fmod(std::abs(a - b), pi);
    return std::min(d, pi - d);
}
} // namespace

TEST_CASE("squeezing extraction inverts the forward map", "[squeezing]") {
    for (double omega : {0.7, 1.0, 1.9}) {
        for (double r : {0.0, 1e-6, 0.3, 1.0, 2.0, 4.0}) {
            for (double theta : {0.0, 0.4, 1.1, 2.2, 3.0}) {
                const ModeQuadratures q = squeezed_quadratures(omega, r, theta);
                const SqueezedMode m = extract_squeezing(q, omega);
                CHECK_THAT(m.r, WithinAbs(r, 1e-10 * std::max(1.0, r)));
                if (r >= 1e-4)
                    CHECK(angle_distance(m.theta, theta) < 1e-10);
            }
        }
    }
}

TEST_CASE("zero squeezing has no angle", "[squeezing]") {
    const SqueezedMode m = extract_squeezing(squeezed_quadratures(1.3, 0.0, 2.0), 1.3);
    CHECK(m.theta_degenerate);
    CHECK(m.r == 0.0);
    CHECK(m.theta == 0.0);
}

TEST_CASE("sub-vacuum quadratures are rejected", "[squeezing]") {
    ModeQuadratures q;
    q.qq = 0.4;
    q.pp = 0.4;
    q.qp = 0.0;
    CHECK_THROWS_AS(extract_squeezing(q, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(squeezed_quadratures(-1.0, 0.2, 0.0), std::invalid_argument);
}

TEST_CASE("sudden switch squeezing matches the extracted profile", "[squeezing]") {
    const ChainParams params{8, 1.0};
    const double c = 0.7;
    for (double t : {0.0, 0.4, 2.7}) {
        std::vector<ModeQuadratures> quads;
        for (std::size_t l = 1; l <= 8; ++l)
            quads.push_back(sudden_switch_quadratures(params, l, c, t));
        const SqueezingProfile extracted = extract_profile(quads, params, c);
        const SqueezingProfile expected = sudden_switch_profile(params, c, t);
        for (std::size_t i = 0; i < 8; ++i) {
            CHECK_THAT(extracted[i].r, WithinAbs(expected[i].r, 1e-10));
            if (expected[i].r > 1e-6)
                CHECK(angle_distance(extracted[i].theta, expected[i].theta) < 1e-9);
        }
    }
}

TEST_CASE("squeeze angles precess at the mode frequency", "[squeezing]") {
    const ChainParams params{8, 1.0};
    const double c = 0.5, t0 = 0.2, dt = 1e-3;
    for (std::size_t l = 1; l < 8; ++l) {
        const double w = eigenfrequency(params, l, c);
        const SqueezedMode a =
            extract_squeezing(sudden_switch_quadratures(params, l, c, t0), w);
        const SqueezedMode b =
            extract_squeezing(sudden_switch_quadratures(params, l, c, t0 + dt), w);
        // Unwrap across the fold at pi before differencing.
        double diff = b.theta - a.theta;
        if (diff < -pi / 2.0)
            diff += pi;
        CHECK_THAT(diff / dt, WithinAbs(w, 1e-4));
    }
}

TEST_CASE("weak bound for uniform squeezing", "[squeezing]") {
    const ChainParams params{8, 1.0};
    for (double r : {0.2, 0.7, 1.5}) {
        SqueezingProfile profile;
        for (std::size_t l = 1; l <= 8; ++l)
            profile.push_back({l, eigenfrequency(params, l, 0.3), r, 0.0, false});
        CHECK_THAT(max_entanglement_weak(profile, params),
                   WithinAbs(2.0 * r / std::log(2.0), 1e-12));
    }
}

TEST_CASE("weak bound grows linearly for small couplings", "[squeezing]") {
    const ChainParams params{8, 1.0};
    const double c = 0.01;
    const double bound = max_entanglement_weak(sudden_switch_profile(params, c), params);
    CHECK_THAT(bound, WithinAbs(c / std::log(2.0), 0.05 * c / std::log(2.0)));

    // The leading-order agreement tightens as the coupling shrinks.
    const double c2 = 0.002;
    const double bound2 = max_entanglement_weak(sudden_switch_profile(params, c2), params);
    CHECK(std::abs(bound2 / (c2 / std::log(2.0)) - 1.0) <
          std::abs(bound / (c / std::log(2.0)) - 1.0));
}

TEST_CASE("strong bound series behaviour", "[squeezing]") {
    const ChainParams params{8, 1.0};

    SECTION("gamma decays as exp(-8r) for uniform squeezing") {
        const auto gamma_at = [&](double r) {
            SqueezingProfile profile;
            for (std::size_t l = 1; l <= 8; ++l)
                profile.push_back({l, eigenfrequency(params, l, 0.5), r, 0.0, false});
            return max_entanglement_strong(profile, params).gamma;
        };
        CHECK_THAT(gamma_at(1.5) / gamma_at(1.0), WithinAbs(std::exp(-4.0), 1e-9));
    }

    SECTION("first correction raises the bound") {
        const SqueezingProfile profile = sudden_switch_profile(params, 2.0);
        const StrongBound b0 = max_entanglement_strong(profile, params, 0);
        const StrongBound b1 = max_entanglement_strong(profile, params, 1);
        const StrongBound b2 = max_entanglement_strong(profile, params, 2);
        CHECK(b0.series_valid);
        CHECK(b1.gamma == b0.gamma);
        CHECK(b1.value >= b0.value);
        CHECK(b2.value <= b1.value); // alternating series
        CHECK(b2.value >= b0.value);
    }

    SECTION("unsqueezed uncoupled chain sits at the series boundary") {
        SqueezingProfile profile;
        for (std::size_t l = 1; l <= 8; ++l)
            profile.push_back({l, 1.0, 0.0, 0.0, true});
        const StrongBound b = max_entanglement_strong(profile, params, 2);
        CHECK_FALSE(b.series_valid);
        CHECK_THAT(b.gamma, WithinAbs(1.0, 1e-12));
        CHECK_THAT(b.value, WithinAbs(0.0, 1e-12)); // falls back to alpha = 1
    }

    SECTION("order outside 0..2 is rejected") {
        const SqueezingProfile profile = sudden_switch_profile(params, 0.5);
        CHECK_THROWS_AS(max_entanglement_strong(profile, params, 3), std::invalid_argument);
        CHECK_THROWS_AS(max_entanglement_strong(profile, params, -1), std::invalid_argument);
    }
}

TEST_CASE("regime indicator reproduces the uniform-squeezing ladder", "[squeezing]") {
    const ChainParams params{8, 1.0};
    const double c = 0.3;
    const double e2r[4] = {1.2, 8.0 / 3.0, 22.0 / 3.0, 20.0};
    const Regime expected[4] = {Regime::weak, Regime::crossover, Regime::strong,
                                Regime::strong};
    const double lhs_over_n[4] = {0.09, 0.2, 0.55, 1.5};
    const double rhs_over_n[4] = {0.82, 0.37, 0.14, 0.05};

    for (int k = 0; k < 4; ++k) {
        SqueezingProfile profile;
        const double r = 0.5 * std::log(e2r[k]);
        for (std::size_t l = 1; l <= 8; ++l)
            profile.push_back({l, eigenfrequency(params, l, c), r, 0.0, false});
        const RegimeIndicator ind = regime_indicator(profile, params, c);
        CHECK(ind.regime == expected[k]);
        CHECK_THAT(ind.lhs / 8.0, WithinAbs(lhs_over_n[k], 0.1 * lhs_over_n[k]));
        CHECK_THAT(ind.rhs / 8.0, WithinAbs(rhs_over_n[k], 0.1 * rhs_over_n[k]));
    }
}

TEST_CASE("regime indicator on the mixed-squeezing rows", "[squeezing]") {
    const ChainParams params{8, 1.0};
    const double c = 0.05;
    const auto build = [&](std::initializer_list<double> rs) {
        SqueezingProfile profile;
        std::size_t l = 1;
        for (double r : rs)
            profile.push_back({l, eigenfrequency(params, l, c), r, 0.0, false}), ++l;
        return profile;
    };
    const SqueezingProfile upper =
        build({0.98, 1.07, 0.89, 0.72, 0.89, 1.07, 0.98, 0.0});
    const SqueezingProfile lower =
        build({1.92, 2.26, 1.90, 2.37, 1.90, 2.26, 1.92, 0.0});

    const RegimeIndicator iu = regime_indicator(upper, params, c);
    CHECK_THAT(iu.lhs, WithinAbs(0.6, 0.06));
    CHECK_THAT(iu.rhs, WithinAbs(2.1, 0.21));
    CHECK(iu.regime == Regime::weak);

    const RegimeIndicator il = regime_indicator(lower, params, c);
    CHECK_THAT(il.lhs, WithinAbs(6.0, 0.6));
    CHECK_THAT(il.rhs, WithinAbs(1.1, 0.11));
    CHECK(il.regime == Regime::strong);
}

TEST_CASE("dissipated work", "[squeezing]") {
    SECTION("single-mode values") {
        // sinh(ln 2) = (2 - 1/2)/2 = 3/4, so r = ln 2 at omega = 1 costs 9/16.
        SqueezingProfile full;
        for (std::size_t l = 1; l <= 4; ++l)
            full.push_back({l, 1.0, 0.0, 0.0, true});
        full[0].r = std::log(2.0);
        full[1].r = 0.5 * std::log(2.0);
        const DissipatedWork w = dissipated_work(full);
        CHECK_THAT(w.per_mode[0], WithinAbs(9.0 / 16.0, 1e-12));
        CHECK_THAT(w.per_mode[1], WithinAbs(1.0 / 8.0, 1e-12));
        CHECK_THAT(w.per_mode[2], WithinAbs(0.0, 0.0));
        CHECK_THAT(w.total, WithinAbs(9.0 / 16.0 + 1.0 / 8.0, 1e-12));
    }
    SECTION("sudden switch work grows with coupling") {
        const ChainParams params{8, 1.0};
        double prev = 0.0;
        for (double c : {1.0, 2.0, 4.0, 8.0}) {
            const DissipatedWork w = dissipated_work(sudden_switch_profile(params, c));
            CHECK(w.total > prev);
            prev = w.total;
        }
    }
}

TEST_CASE("profile validation", "[squeezing]") {
    const ChainParams params{8, 1.0};
    SqueezingProfile profile = sudden_switch_profile(params, 0.5);
    SECTION("wrong size") {
        profile.pop_back();
        CHECK_THROWS_AS(max_entanglement_weak(profile, params), std::invalid_argument);
    }
    SECTION("wrong order") {
        std::swap(profile[2].mode, profile[3].mode);
        CHECK_THROWS_AS(max_entanglement_strong(profile, params, 1), std::invalid_argument);
    }
    SECTION("bad frequency") {
        profile[0].omega = 0.0;
        CHECK_THROWS_AS(regime_indicator(profile, params, 0.5), std::invalid_argument);
    }
}
