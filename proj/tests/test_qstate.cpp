#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "rsp/qstate.hpp"

using namespace rsp;
using rsp::test::close;
using rsp::test::normalized;

namespace {

std::vector<QubitId> qubits(std::initializer_list<int> labels) {
    std::vector<QubitId> out;
    for (int l : labels) {
        out.push_back(QubitId{l});
    }
    return out;
}

CVector ghz_triple(double x, double y) {
    std::vector<Complex> amps(8, Complex{0.0, 0.0});
    amps[0] = x;
    amps[7] = y;
    return CVector(std::move(amps));
}

const CMatrix kPauliX(2, 2, {0.0, 1.0, 1.0, 0.0});

CMatrix plus_minus_1q() {
    const double h = 1.0 / std::sqrt(2.0);
    return CMatrix(2, 2, {h, h, h, -h});
}

}  // namespace

TEST_CASE("product_state keeps a single GHZ factor as-is") {
    const double x = 0.6, y = 0.8;
    const StateVector s = product_state({{qubits({1, 2, 3}), ghz_triple(x, y)}});
    CHECK(s.num_qubits() == 3);
    CHECK(close(s.amplitudes()[0], Complex{x, 0.0}));
    CHECK(close(s.amplitudes()[7], Complex{y, 0.0}));
}

TEST_CASE("product_state with x=1 channels is the all-zero string") {
    const StateVector s = product_state(
        {{qubits({1, 2, 3}), ghz_triple(1.0, 0.0)}, {qubits({4, 5, 6}), ghz_triple(1.0, 0.0)}});
    CHECK(close(s.amplitudes()[0], Complex{1.0, 0.0}));
    for (std::size_t k = 1; k < 64; ++k) {
        CHECK(s.amplitudes()[k] == Complex{0.0, 0.0});
    }
}

TEST_CASE("product_state of two GHZ factors populates indices 0, 7, 56, 63") {
    const double x0 = 0.3, x1 = 0.55;
    const double y0 = std::sqrt(1 - x0 * x0), y1 = std::sqrt(1 - x1 * x1);
    const StateVector s = product_state(
        {{qubits({1, 2, 3}), ghz_triple(x0, y0)}, {qubits({4, 5, 6}), ghz_triple(x1, y1)}});
    CHECK(close(s.amplitudes()[0], Complex{x0 * x1, 0.0}));
    CHECK(close(s.amplitudes()[7], Complex{x0 * y1, 0.0}));
    CHECK(close(s.amplitudes()[56], Complex{y0 * x1, 0.0}));
    CHECK(close(s.amplitudes()[63], Complex{y0 * y1, 0.0}));
    double rest = 0.0;
    for (std::size_t k = 0; k < 64; ++k) {
        if (k != 0 && k != 7 && k != 56 && k != 63) {
            rest += std::abs(s.amplitudes()[k]);
        }
    }
    CHECK(rest == 0.0);
}

TEST_CASE("product_state rejects duplicate labels and unnormalized factors") {
    CHECK_THROWS_AS(product_state({{qubits({1, 2, 3}), ghz_triple(0.6, 0.8)},
                                   {qubits({3, 4, 5}), ghz_triple(0.6, 0.8)}}),
                    RegisterError);
    CHECK_THROWS_AS(product_state({{qubits({1, 2, 3}), ghz_triple(0.6, 0.9)}}), ValidationError);
}

TEST_CASE("apply_unitary identity leaves the state unchanged") {
    Rng rng(5);
    const StateVector s = rsp::test::random_state(qubits({1, 2, 3}), rng);
    const StateVector out = apply_unitary(s, qubits({2}), CMatrix::identity(2));
    CHECK(max_abs_diff(out.amplitudes(), s.amplitudes()) == 0.0);
}

TEST_CASE("apply_unitary X on the last qubit of |000>") {
    std::vector<Complex> zero(8, Complex{0.0, 0.0});
    zero[0] = 1.0;
    const StateVector s(qubits({1, 2, 3}), CVector(zero));
    const StateVector out = apply_unitary(s, qubits({3}), kPauliX);
    CHECK(close(out.amplitudes()[1], Complex{1.0, 0.0}));  // |001>
}

TEST_CASE("the step-2 correction reorders the outcome-(0,1) residual") {
    // Residual transcribed for the step-1 outcome (0,1) at fixed numbers,
    // on the four surviving components |0000>, |0011>, |1100>, |1111> of
    // qubits (2,3,5,6).
    const double a0 = 0.1, a1 = 0.7, a2 = 0.5, a3 = 0.5;
    const double e1 = 1.1, e2 = 2.2, e3 = 3.3;
    const double x0 = 0.3, x1 = 0.55;
    const double y0 = std::sqrt(1 - x0 * x0), y1 = std::sqrt(1 - x1 * x1);
    auto ph = [](double eta) { return std::exp(Complex{0.0, eta}); };

    std::vector<Complex> resid(16, Complex{0.0, 0.0});
    resid[0] = a1 * x0 * x1;
    resid[3] = -a0 * ph(e1) * x0 * y1;
    resid[12] = a3 * ph(e2) * y0 * x1;
    resid[15] = -a2 * ph(e3) * y0 * y1;
    const StateVector state(qubits({2, 3, 5, 6}), normalized(resid));

    // diag(e^{i e1}, -e^{-i e1}, e^{i(e3-e2)}, -e^{i(e2-e3)}) on qubits (2,5).
    const CMatrix correction = CMatrix::diagonal(
        {ph(e1), -ph(-e1), ph(e3 - e2), -ph(e2 - e3)});
    const StateVector out = apply_unitary(state, qubits({2, 5}), correction);

    std::vector<Complex> want(16, Complex{0.0, 0.0});
    want[0] = a1 * ph(e1) * x0 * x1;
    want[3] = a0 * x0 * y1;
    want[12] = a3 * ph(e3) * y0 * x1;
    want[15] = a2 * ph(e2) * y0 * y1;
    CHECK(max_abs_diff(out.amplitudes(), normalized(want)) < 1e-12);
}

TEST_CASE("apply_unitary rejects non-unitary input and unknown qubits") {
    Rng rng(9);
    const StateVector s = rsp::test::random_state(qubits({1, 2}), rng);
    CHECK_THROWS_AS(apply_unitary(s, qubits({1}), CMatrix::diagonal({Complex{2.0, 0.0},
                                                                     Complex{1.0, 0.0}})),
                    ValidationError);
    CHECK_THROWS_AS(apply_unitary(s, qubits({7}), CMatrix::identity(2)), RegisterError);
}

TEST_CASE("computational measurement of |0> is certain") {
    const StateVector s(qubits({1}), CVector({1.0, 0.0}));
    const MeasurementRecord rec = measure_in_basis(s, qubits({1}), CMatrix::identity(2), 0);
    CHECK(rec.probability == 1.0);
    CHECK_FALSE(rec.post_state.has_value());  // nothing remains
    const MeasurementRecord miss = measure_in_basis(s, qubits({1}), CMatrix::identity(2), 1);
    CHECK(miss.probability == 0.0);
    CHECK_FALSE(miss.post_state.has_value());
}

TEST_CASE("plus/minus measurement of |0> splits evenly") {
    const StateVector s(qubits({1, 2}), CVector({1.0, 0.0, 0.0, 0.0}));
    for (int outcome = 0; outcome < 2; ++outcome) {
        const MeasurementRecord rec = measure_in_basis(s, qubits({1}), plus_minus_1q(), outcome);
        CHECK(close(rec.probability, 0.5));
        REQUIRE(rec.post_state.has_value());
        CHECK(close(rec.post_state->amplitudes()[0], Complex{1.0, 0.0}));
    }
}

TEST_CASE("measuring the first channel outcome reproduces the companion state") {
    const double a0 = 0.1, a1 = 0.7, a2 = 0.5, a3 = 0.5;
    const double e1 = 1.1, e2 = 2.2, e3 = 3.3;
    const double x0 = 0.3, x1 = 0.55;
    const double y0 = std::sqrt(1 - x0 * x0), y1 = std::sqrt(1 - x1 * x1);
    auto ph = [](double eta) { return std::exp(Complex{0.0, eta}); };

    const StateVector phi = product_state(
        {{qubits({1, 2, 3}), ghz_triple(x0, y0)}, {qubits({4, 5, 6}), ghz_triple(x1, y1)}});
    const CMatrix omega(4, 4,
                        {a0, a1 * ph(-e1), a2 * ph(-e2), a3 * ph(-e3),    //
                         a1, -a0 * ph(-e1), a3 * ph(-e2), -a2 * ph(-e3),  //
                         a2, -a3 * ph(-e1), -a0 * ph(-e2), a1 * ph(-e3),  //
                         a3, a2 * ph(-e1), -a1 * ph(-e2), -a0 * ph(-e3)});
    const MeasurementRecord rec = measure_in_basis(phi, qubits({1, 4}), omega, 0);
    REQUIRE(rec.post_state.has_value());
    CHECK(rec.post_state->qubit_register() == qubits({2, 3, 5, 6}));

    std::vector<Complex> want(16, Complex{0.0, 0.0});
    want[0] = a0 * x0 * x1;
    want[3] = a1 * ph(e1) * x0 * y1;
    want[12] = a2 * ph(e2) * y0 * x1;
    want[15] = a3 * ph(e3) * y0 * y1;
    const CVector expected = normalized(want);
    CHECK(rsp::test::diff_up_to_phase(expected, rec.post_state->amplitudes()) < 1e-12);
    // The record's probability is the squared norm of the projection.
    double norm2 = 0.0;
    for (const Complex& z : want) {
        norm2 += std::norm(z);
    }
    CHECK(close(rec.probability, norm2, 1e-12));
}

TEST_CASE("Born completeness over a random basis") {
    Rng rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        const StateVector s = rsp::test::random_state(qubits({1, 2, 3}), rng);
        // Basis: diagonal phases composed with H on both measured qubits.
        std::vector<Complex> phases(4);
        for (Complex& z : phases) {
            z = std::exp(Complex{0.0, rng.uniform(0.0, 6.28)});
        }
        const CMatrix basis =
            mat_mul(CMatrix::diagonal(phases), kron(plus_minus_1q(), plus_minus_1q()));
        double total = 0.0;
        for (int outcome = 0; outcome < 4; ++outcome) {
            total += measure_in_basis(s, qubits({1, 3}), basis, outcome).probability;
        }
        CHECK(close(total, 1.0, 1e-10));
    }
}

TEST_CASE("computational-basis measurement reproduces amplitude marginals") {
    Rng rng(37);
    const StateVector s = rsp::test::random_state(qubits({1, 2}), rng);
    for (int outcome = 0; outcome < 2; ++outcome) {
        const MeasurementRecord rec =
            measure_in_basis(s, qubits({1}), CMatrix::identity(2), outcome);
        const double want = std::norm(s.amplitudes()[2 * outcome]) +
                            std::norm(s.amplitudes()[2 * outcome + 1]);
        CHECK(close(rec.probability, want, 1e-14));
    }
}

TEST_CASE("unitary then its adjoint restores the state") {
    Rng rng(41);
    const StateVector s = rsp::test::random_state(qubits({1, 2, 3}), rng);
    std::vector<Complex> phases(4);
    for (Complex& z : phases) {
        z = std::exp(Complex{0.0, rng.uniform(0.0, 6.28)});
    }
    const CMatrix u = mat_mul(CMatrix::diagonal(phases), kron(plus_minus_1q(), plus_minus_1q()));
    const StateVector there = apply_unitary(s, qubits({3, 1}), u);
    const StateVector back = apply_unitary(there, qubits({3, 1}), u.adjoint());
    CHECK(max_abs_diff(back.amplitudes(), s.amplitudes()) < 1e-10);
}

TEST_CASE("fidelity basics") {
    Rng rng(43);
    const StateVector v = rsp::test::random_state(qubits({1, 2}), rng);
    CHECK(close(fidelity(v, v), 1.0, 1e-12));

    std::vector<Complex> rotated;
    for (const Complex& z : v.amplitudes().entries()) {
        rotated.push_back(z * std::exp(Complex{0.0, 0.77}));
    }
    const StateVector w(qubits({1, 2}), CVector(rotated));
    CHECK(close(fidelity(v, w), 1.0, 1e-12));

    const StateVector zero(qubits({1}), CVector({1.0, 0.0}));
    const StateVector one(qubits({1}), CVector({0.0, 1.0}));
    CHECK(fidelity(zero, one) == 0.0);
    CHECK_THROWS_AS(fidelity(zero, v), ShapeError);
}
