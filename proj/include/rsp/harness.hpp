#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rsp/metrics.hpp"
#include "rsp/protocol.hpp"

namespace rsp {

// Seeded generator with a platform-independent uniform draw.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform in [0, 1) with 53 bits of mantissa.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::uint64_t next() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

struct EnumerationResult {
    // All (i, j, aux) branches, aux fastest, then j, then i.
    std::vector<BranchRecord> branches;
    double total_probability = 0.0;
    double total_success_probability = 0.0;
    // Minimum fidelity over success branches that carry a state; 1 when none do.
    double min_success_fidelity = 1.0;
};

struct SampleStats {
    long trials = 0;
    long success_count = 0;
    double empirical_tsp = 0.0;
    std::uint64_t rng_seed = 0;
};

struct SweepResult {
    int m = 0;
    std::vector<std::vector<double>> axes;
    // Row-major over the axes, last axis fastest; clipped into [0, 1].
    std::vector<double> tsp;
};

inline constexpr int kDefaultEnumerationCap = 8;

// Runs every branch of the protocol and aggregates.
EnumerationResult enumerate_all(const DesiredStateSpec& desired, const ChannelSpec& channels,
                                int m_cap = kDefaultEnumerationCap);

// Samples whole protocol runs outcome-by-outcome per the Born rule.
SampleStats sample(const DesiredStateSpec& desired, const ChannelSpec& channels, long trials,
                   std::uint64_t seed);

// Success-probability surface over a per-axis grid of x values in [0, 1/sqrt(2)].
SweepResult sweep_tsp(int m, const std::vector<std::vector<double>>& grid);
std::vector<double> uniform_axis(std::size_t resolution);

// Formula metrics combined with the enumerated total.
MetricsReport metrics_report(const DesiredStateSpec& desired, const ChannelSpec& channels);

// Random valid specs, used by the verification command and in tests.
DesiredStateSpec random_desired(int m, Rng& rng);
ChannelSpec random_channels(int m, Rng& rng);

struct Violation {
    std::string check;
    std::string detail;
    int m = 0;
    std::vector<double> alphas;
    std::vector<double> etas;
    std::vector<double> channel_x;
};

// Runs the invariant suite over `count` random specs at each m in {1, 2, 3};
// returns the first violated check, if any.
std::optional<Violation> verify_random_specs(int count, std::uint64_t seed);

}  // namespace rsp
