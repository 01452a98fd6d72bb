#include "rsp/harness.hpp"

#include <algorithm>
#include <cmath>

#include "rsp/protocol_run.hpp"

namespace rsp {

namespace {

std::size_t pick_from(const std::vector<double>& dist, double u) {
    double acc = 0.0;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        acc += dist[k];
        if (u < acc) {
            return k;
        }
    }
    return dist.size() - 1;  // u landed in rounding slack
}

}  // namespace

EnumerationResult enumerate_all(const DesiredStateSpec& desired, const ChannelSpec& channels,
                                int m_cap) {
    if (desired.m() > m_cap) {
        throw CapacityError("enumeration capped at m=" + std::to_string(m_cap));
    }
    const ProtocolRun run(desired, channels);
    const std::size_t l = desired.dim();

    EnumerationResult result;
    result.branches.reserve(2 * l * l);
    bool any_fidelity = false;
    for (std::size_t i = 0; i < l; ++i) {
        const std::vector<int> i_bits = index_to_bits(i, desired.m());
        for (std::size_t j = 0; j < l; ++j) {
            const std::vector<int> j_bits = index_to_bits(j, desired.m());
            for (int aux = 0; aux <= 1; ++aux) {
                BranchRecord rec = run.branch(i_bits, j_bits, /*skip_equalizer=*/false, aux);
                result.total_probability += rec.probability;
                if (rec.aux_bit == 0) {
                    result.total_success_probability += rec.probability;
                    if (rec.fidelity_to_target) {
                        any_fidelity = true;
                        result.min_success_fidelity =
                            std::min(result.min_success_fidelity, *rec.fidelity_to_target);
                    }
                }
                result.branches.push_back(std::move(rec));
            }
        }
    }
    if (!any_fidelity) {
        result.min_success_fidelity = 1.0;
    }
    return result;
}

SampleStats sample(const DesiredStateSpec& desired, const ChannelSpec& channels, long trials,
                   std::uint64_t seed) {
    if (trials < 1) {
        throw ValidationError("sampling needs at least one trial");
    }
    const ProtocolRun run(desired, channels);
    const std::size_t l = desired.dim();

    // The protocol restarts from the same channel state every trial, so the
    // three Born distributions can be tabulated once up front.
    const std::vector<double> p_i = run.step1_distribution();
    std::vector<std::vector<double>> p_j(l);
    std::vector<std::vector<double>> p_success(l, std::vector<double>(l, 0.0));
    for (std::size_t i = 0; i < l; ++i) {
        p_j[i] = run.step3_distribution(i);
        for (std::size_t j = 0; j < l; ++j) {
            if (p_j[i][j] > 0.0) {
                p_success[i][j] = run.aux_success_probability(i, j);
            }
        }
    }

    Rng rng(seed);
    SampleStats stats;
    stats.trials = trials;
    stats.rng_seed = seed;
    for (long t = 0; t < trials; ++t) {
        const std::size_t i = pick_from(p_i, rng.uniform());
        const std::size_t j = pick_from(p_j[i], rng.uniform());
        if (rng.uniform() < p_success[i][j]) {
            ++stats.success_count;
        }
    }
    stats.empirical_tsp = static_cast<double>(stats.success_count) / static_cast<double>(trials);
    return stats;
}

std::vector<double> uniform_axis(std::size_t resolution) {
    if (resolution < 2) {
        throw ValidationError("sweep axes need at least two points");
    }
    const double hi = 1.0 / std::sqrt(2.0);
    std::vector<double> axis(resolution);
    for (std::size_t k = 0; k < resolution; ++k) {
        axis[k] = hi * static_cast<double>(k) / static_cast<double>(resolution - 1);
    }
    return axis;
}

SweepResult sweep_tsp(int m, const std::vector<std::vector<double>>& grid) {
    if (m < 1) {
        throw ValidationError("sweep needs m >= 1");
    }
    if (grid.size() != static_cast<std::size_t>(m)) {
        throw ValidationError("sweep needs one axis per channel");
    }
    const double hi = 1.0 / std::sqrt(2.0);
    std::size_t total = 1;
    for (const auto& axis : grid) {
        if (axis.empty()) {
            throw ValidationError("sweep axes must be nonempty");
        }
        for (double x : axis) {
            if (!std::isfinite(x) || x < 0.0 || x > hi) {
                throw ValidationError("sweep values must lie in [0, 1/sqrt(2)]");
            }
        }
        total *= axis.size();
    }

    SweepResult result;
    result.m = m;
    result.axes = grid;
    result.tsp.resize(total);
    std::vector<std::size_t> idx(m, 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::vector<double> xs(m);
        for (int k = 0; k < m; ++k) {
            xs[k] = grid[k][idx[k]];
        }
        // TSP is a probability; clip the rounding overshoot at the corner.
        result.tsp[flat] =
            std::clamp(tsp_formula(ChannelSpec::from_x(m, xs)), 0.0, 1.0);
        for (int k = m - 1; k >= 0; --k) {
            if (++idx[k] < grid[k].size()) {
                break;
            }
            idx[k] = 0;
        }
    }
    return result;
}

MetricsReport metrics_report(const DesiredStateSpec& desired, const ChannelSpec& channels) {
    MetricsReport report;
    report.m = desired.m();
    report.qs = desired.m();
    report.qq = 3 * desired.m();
    report.tsp_formula = tsp_formula(channels);
    report.tsp_enumerated = enumerate_all(desired, channels).total_success_probability;
    report.cic = cic(channels);
    report.qc = report.cic;
    report.gamma = intrinsic_efficiency(report.qs, report.qq, report.qc, report.tsp_formula);
    return report;
}

DesiredStateSpec random_desired(int m, Rng& rng) {
    const std::size_t l = std::size_t{1} << m;
    std::vector<double> alphas(l);
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (double& a : alphas) {
            a = rng.uniform();
            norm2 += a * a;
        }
    } while (norm2 < 1e-12);
    const double scale = 1.0 / std::sqrt(norm2);
    for (double& a : alphas) {
        a *= scale;
    }
    std::vector<double> etas(l, 0.0);
    for (std::size_t i = 1; i < l; ++i) {
        etas[i] = rng.uniform(0.0, 2.0 * 3.141592653589793);
    }
    return DesiredStateSpec(m, std::move(alphas), std::move(etas));
}

ChannelSpec random_channels(int m, Rng& rng) {
    std::vector<double> xs(m);
    for (double& x : xs) {
        x = rng.uniform(0.0, 1.0 / std::sqrt(2.0));
    }
    return ChannelSpec::from_x(m, std::move(xs));
}

std::optional<Violation> verify_random_specs(int count, std::uint64_t seed) {
    if (count < 1) {
        throw ValidationError("verification needs at least one spec");
    }
    Rng rng(seed);
    for (int m = 1; m <= 3; ++m) {
        for (int trial = 0; trial < count; ++trial) {
            const DesiredStateSpec desired = random_desired(m, rng);
            const ChannelSpec channels = random_channels(m, rng);
            auto fail = [&](const std::string& check, const std::string& detail) {
                return Violation{check,          detail,          m,
                                 desired.alphas(), desired.etas(), channels.xs()};
            };

            const MeasurementBasis omega = build_omega(desired, sign_pattern(m));
            if (!is_unitary(omega.omega, kAlgebraTol)) {
                return fail("omega-unitarity", "Omega failed the 1e-12 unitarity check");
            }

            const EnumerationResult enums = enumerate_all(desired, channels);
            if (std::abs(enums.total_probability - 1.0) > kPhysicsTol) {
                return fail("born-completeness",
                            "branch probabilities sum to " +
                                std::to_string(enums.total_probability));
            }
            if (enums.min_success_fidelity < 1.0 - kPhysicsTol) {
                return fail("success-fidelity",
                            "a success branch has fidelity " +
                                std::to_string(enums.min_success_fidelity));
            }
            const double expect_tsp = tsp_formula(channels);
            if (std::abs(enums.total_success_probability - expect_tsp) > kPhysicsTol) {
                return fail("tsp-law", "enumerated TSP " +
                                           std::to_string(enums.total_success_probability) +
                                           " != formula " + std::to_string(expect_tsp));
            }

            // Per-outcome success mass is (prod x)^2 regardless of i.
            const double xprod2 = channels.x_product() * channels.x_product();
            const std::size_t l = desired.dim();
            for (std::size_t i = 0; i < l; ++i) {
                double mass = 0.0;
                for (const BranchRecord& rec : enums.branches) {
                    if (rec.aux_bit == 0 && bits_to_index(rec.i_bits) == i) {
                        mass += rec.probability;
                    }
                }
                if (std::abs(mass - xprod2) > kPhysicsTol) {
                    return fail("outcome-probability-law",
                                "success mass at one step-1 outcome is " + std::to_string(mass));
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace rsp
