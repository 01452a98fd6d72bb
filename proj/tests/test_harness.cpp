#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "rsp/harness.hpp"

using namespace rsp;
using rsp::test::close;
using rsp::test::fixed_channels;
using rsp::test::fixed_desired_m2;
using rsp::test::maximal_channels;

TEST_CASE("enumeration of the maximal two-qubit case") {
    const EnumerationResult result = enumerate_all(fixed_desired_m2(), maximal_channels(2));
    CHECK(result.branches.size() == 32);  // 4 x 4 x {aux}
    CHECK(close(result.total_probability, 1.0, 1e-10));
    CHECK(close(result.total_success_probability, 1.0, 1e-12));
    CHECK(result.min_success_fidelity >= 1.0 - 1e-10);
    int successes = 0;
    for (const BranchRecord& rec : result.branches) {
        if (rec.aux_bit == 0) {
            ++successes;
            CHECK(close(rec.probability, 1.0 / 16.0, 1e-12));
        } else {
            CHECK(rec.probability <= 1e-15);
        }
    }
    CHECK(successes == 16);
}

TEST_CASE("enumeration matches the closed form away from the maximum") {
    const DesiredStateSpec desired = fixed_desired_m2();
    const EnumerationResult result =
        enumerate_all(desired, ChannelSpec::from_x(2, {0.6, std::sqrt(0.5)}));
    CHECK(close(result.total_success_probability, 0.72, 1e-10));
    CHECK(close(result.total_probability, 1.0, 1e-10));

    Rng rng(71);
    const EnumerationResult one =
        enumerate_all(random_desired(1, rng), ChannelSpec::from_x(1, {std::sqrt(0.5)}));
    CHECK(close(one.total_success_probability, 1.0, 1e-12));
}

TEST_CASE("per-outcome success mass is independent of the outcome") {
    const ChannelSpec channels = fixed_channels(3);
    const EnumerationResult result = enumerate_all(rsp::test::fixed_desired_m3(), channels);
    const double want = channels.x_product() * channels.x_product();
    for (std::size_t i = 0; i < 8; ++i) {
        double mass = 0.0;
        for (const BranchRecord& rec : result.branches) {
            if (rec.aux_bit == 0 && bits_to_index(rec.i_bits) == i) {
                mass += rec.probability;
            }
        }
        CHECK(close(mass, want, 1e-10));
    }
}

TEST_CASE("enumeration respects the order cap") {
    CHECK_THROWS_AS(enumerate_all(fixed_desired_m2(), fixed_channels(2), 1), CapacityError);
}

TEST_CASE("sampling is deterministic and certain at the maximum") {
    const SampleStats certain = sample(fixed_desired_m2(), maximal_channels(2), 10000, 99);
    CHECK(certain.success_count == certain.trials);
    CHECK(certain.empirical_tsp == 1.0);

    const SampleStats a = sample(fixed_desired_m2(), fixed_channels(2), 5000, 1234);
    const SampleStats b = sample(fixed_desired_m2(), fixed_channels(2), 5000, 1234);
    CHECK(a.success_count == b.success_count);
    CHECK(a.empirical_tsp == b.empirical_tsp);
    CHECK(a.rng_seed == 1234);

    const SampleStats c = sample(fixed_desired_m2(), fixed_channels(2), 5000, 1235);
    CHECK(c.success_count != a.success_count);  // different seed, different path
}

TEST_CASE("sampling tracks the formula within binomial error") {
    const DesiredStateSpec desired = fixed_desired_m2();
    const ChannelSpec channels = ChannelSpec::from_x(2, {0.5, 0.5});
    const long trials = 100000;
    const SampleStats stats = sample(desired, channels, trials, 2024);
    const double p = 4.0 * std::pow(0.25, 2);  // 0.25
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    CHECK(std::abs(stats.empirical_tsp - p) < 5.0 * sigma);
}

TEST_CASE("sampling agrees with enumeration") {
    Rng rng(83);
    for (int rep = 0; rep < 3; ++rep) {
        const DesiredStateSpec desired = random_desired(2, rng);
        const ChannelSpec channels = random_channels(2, rng);
        const double p = enumerate_all(desired, channels).total_success_probability;
        const long trials = 20000;
        const SampleStats stats = sample(desired, channels, trials, 7 + rep);
        const double sigma = std::sqrt(std::max(p * (1.0 - p), 1e-12) / trials);
        CHECK(std::abs(stats.empirical_tsp - p) < 5.0 * sigma);
    }
}

TEST_CASE("sweep surface hits its corners") {
    const auto axis = uniform_axis(11);
    const SweepResult result = sweep_tsp(2, {axis, axis});
    CHECK(result.tsp.size() == 121);
    CHECK(result.tsp.front() == 0.0);
    CHECK(result.tsp.back() == 1.0);  // clipped rounding overshoot at the corner
    for (double v : result.tsp) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    // Nondecreasing along the fast axis and the slow axis.
    for (std::size_t r = 0; r < 11; ++r) {
        for (std::size_t c = 1; c < 11; ++c) {
            CHECK(result.tsp[r * 11 + c] >= result.tsp[r * 11 + c - 1]);
            CHECK(result.tsp[c * 11 + r] >= result.tsp[(c - 1) * 11 + r]);
        }
    }
}

TEST_CASE("sweep rejects out-of-range coefficients") {
    CHECK_THROWS_AS(sweep_tsp(1, {{0.0, 0.8}}), ValidationError);
    CHECK_THROWS_AS(sweep_tsp(2, {{0.1}}), ValidationError);
}

TEST_CASE("the randomized verification suite passes on this library") {
    CHECK_FALSE(verify_random_specs(5, 2026).has_value());
}
