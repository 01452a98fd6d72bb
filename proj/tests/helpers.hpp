#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "rsp/harness.hpp"
#include "rsp/protocol.hpp"

namespace rsp::test {

inline bool close(double a, double b, double tol = 1e-12) {
    return std::abs(a - b) <= tol;
}

inline bool close(const Complex& a, const Complex& b, double tol = 1e-12) {
    return std::abs(a - b) <= tol;
}

// Largest entrywise deviation after aligning the global phase of `actual`
// to `expected` via their inner product.
inline double diff_up_to_phase(const CVector& expected, const CVector& actual) {
    Complex overlap = inner_product(actual, expected);
    const double mag = std::abs(overlap);
    const Complex phase = mag > 1e-300 ? overlap / mag : Complex{1.0, 0.0};
    double worst = 0.0;
    for (std::size_t k = 0; k < expected.dim(); ++k) {
        worst = std::max(worst, std::abs(expected[k] - phase * actual[k]));
    }
    return worst;
}

inline double diff_up_to_phase(const StateVector& expected, const StateVector& actual) {
    return diff_up_to_phase(expected.amplitudes(), actual.amplitudes());
}

inline CVector normalized(std::vector<Complex> entries) {
    double norm2 = 0.0;
    for (const Complex& z : entries) {
        norm2 += std::norm(z);
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (Complex& z : entries) {
        z *= scale;
    }
    return CVector(std::move(entries));
}

inline std::vector<double> unit_magnitudes(std::vector<double> raw) {
    double norm2 = 0.0;
    for (double a : raw) {
        norm2 += a * a;
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (double& a : raw) {
        a *= scale;
    }
    return raw;
}

// Fixed specs reused across the suites.
inline DesiredStateSpec fixed_desired_m2() {
    return DesiredStateSpec(2, {0.1, 0.7, 0.5, 0.5}, {0.0, 1.1, 2.2, 3.3});
}

inline DesiredStateSpec fixed_desired_m3() {
    return DesiredStateSpec(3, unit_magnitudes({0.2, 0.4, 0.22, 0.34, 0.42, 0.12, 0.36, 0.4}),
                            {0.0, 0.7, 1.3, 2.1, 2.9, 3.7, 4.5, 5.3});
}

inline ChannelSpec fixed_channels(int m) {
    switch (m) {
        case 1: return ChannelSpec::from_x(1, {0.4});
        case 2: return ChannelSpec::from_x(2, {0.3, 0.55});
        default: return ChannelSpec::from_x(3, {0.5, 0.6, 0.55});
    }
}

inline ChannelSpec maximal_channels(int m) {
    return ChannelSpec::from_x(m, std::vector<double>(m, std::sqrt(0.5)));
}

inline StateVector random_state(const std::vector<QubitId>& qubits, Rng& rng) {
    std::vector<Complex> amps(std::size_t{1} << qubits.size());
    for (Complex& z : amps) {
        z = Complex{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    }
    return StateVector(qubits, normalized(std::move(amps)));
}

}  // namespace rsp::test
