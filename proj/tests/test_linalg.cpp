#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "rsp/linalg.hpp"

using namespace rsp;
using rsp::test::close;

namespace {

const CMatrix kPauliX(2, 2, {0.0, 1.0, 1.0, 0.0});
const CMatrix kPauliZ(2, 2, {1.0, 0.0, 0.0, -1.0});

CMatrix hadamard_power(int k) {
    const double h = 1.0 / std::sqrt(2.0);
    CMatrix out = CMatrix::identity(1);
    const CMatrix had(2, 2, {h, h, h, -h});
    for (int q = 0; q < k; ++q) {
        out = kron(out, had);
    }
    return out;
}

CMatrix random_small_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    std::vector<Complex> e(rows * cols);
    for (Complex& z : e) {
        z = Complex{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    }
    return CMatrix(rows, cols, std::move(e));
}

// Random unitary assembled from pieces that are unitary by construction.
CMatrix random_unitary(Rng& rng, int qubits) {
    const std::size_t n = std::size_t{1} << qubits;
    std::vector<Complex> d1(n), d2(n);
    for (std::size_t k = 0; k < n; ++k) {
        d1[k] = std::exp(Complex{0.0, rng.uniform(0.0, 6.28)});
        d2[k] = std::exp(Complex{0.0, rng.uniform(0.0, 6.28)});
    }
    return mat_mul(CMatrix::diagonal(d1), mat_mul(hadamard_power(qubits), CMatrix::diagonal(d2)));
}

}  // namespace

TEST_CASE("mat_vec identity returns the input") {
    const CVector v({{1.0, 2.0}, {0.5, -0.25}, {0.0, 0.0}, {-3.0, 1.0}});
    const CVector out = mat_vec(CMatrix::identity(4), v);
    CHECK(max_abs_diff(out, v) == 0.0);
}

TEST_CASE("mat_vec diagonal sign flip") {
    const CMatrix d = CMatrix::diagonal({Complex{1.0, 0.0}, Complex{-1.0, 0.0}});
    const CVector out = mat_vec(d, CVector({{0.3, 0.1}, {0.8, -0.2}}));
    CHECK(close(out[0], Complex{0.3, 0.1}));
    CHECK(close(out[1], Complex{-0.8, 0.2}));
}

TEST_CASE("mat_vec Pauli-X flips a bit") {
    const CVector out = mat_vec(kPauliX, CVector({{1.0, 0.0}, {0.0, 0.0}}));
    CHECK(close(out[0], Complex{0.0, 0.0}));
    CHECK(close(out[1], Complex{1.0, 0.0}));
}

TEST_CASE("mat_vec rejects shape mismatch") {
    CHECK_THROWS_AS(mat_vec(CMatrix::identity(4), CVector::zeros(3)), ShapeError);
}

TEST_CASE("kron of identities is the bigger identity") {
    const CMatrix out = kron(CMatrix::identity(2), CMatrix::identity(2));
    CHECK(max_abs_diff(out, CMatrix::identity(4)) == 0.0);
}

TEST_CASE("kron of column vectors is bilinear") {
    const CVector a({{0.6, 0.0}, {0.8, 0.0}});
    const CVector b({{0.28, 0.0}, {0.96, 0.0}});
    const CVector out = kron(a, b);
    CHECK(close(out[0], Complex{0.6 * 0.28, 0.0}));
    CHECK(close(out[1], Complex{0.6 * 0.96, 0.0}));
    CHECK(close(out[2], Complex{0.8 * 0.28, 0.0}));
    CHECK(close(out[3], Complex{0.8 * 0.96, 0.0}));
}

TEST_CASE("kron(X, Z) maps |00> to |10>") {
    // Expanding the 4x4 product by hand: column 0 of X(x)Z has its only
    // nonzero entry +1 at row 2.
    const CVector out = mat_vec(kron(kPauliX, kPauliZ), CVector({1.0, 0.0, 0.0, 0.0}));
    CHECK(close(out[0], Complex{0.0, 0.0}));
    CHECK(close(out[1], Complex{0.0, 0.0}));
    CHECK(close(out[2], Complex{1.0, 0.0}));
    CHECK(close(out[3], Complex{0.0, 0.0}));
}

TEST_CASE("kron associativity on random small matrices") {
    Rng rng(11);
    for (int rep = 0; rep < 25; ++rep) {
        const CMatrix a = random_small_matrix(rng, 2, 3);
        const CMatrix b = random_small_matrix(rng, 3, 2);
        const CMatrix c = random_small_matrix(rng, 2, 2);
        CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-14);
    }
}

TEST_CASE("kron rejects results beyond the dense-storage bound") {
    CHECK_THROWS_AS(kron(CVector::zeros(std::size_t{1} << 13), CVector::zeros(std::size_t{1} << 14)),
                    CapacityError);
    const CMatrix tall(std::size_t{1} << 13, 2, std::vector<Complex>(std::size_t{1} << 14));
    CHECK_THROWS_AS(kron(tall, tall), CapacityError);
}

TEST_CASE("is_unitary accepts the identity and rejects a stretch") {
    CHECK(is_unitary(CMatrix::identity(8), 1e-12));
    CHECK_FALSE(is_unitary(CMatrix::diagonal({Complex{1.0, 0.0}, Complex{2.0, 0.0}}), 1e-12));
    CHECK_THROWS_AS(is_unitary(CMatrix(2, 3, std::vector<Complex>(6)), 1e-12), ShapeError);
}

TEST_CASE("a measurement matrix built from a valid spec is unitary") {
    // Entries transcribed for a concrete numeric spec: squares sum to 1.
    const double a0 = 0.1, a1 = 0.7, a2 = 0.5, a3 = 0.5;
    const double e1 = 1.1, e2 = 2.2, e3 = 3.3;
    auto p = [](double eta) { return std::exp(Complex{0.0, -eta}); };
    const CMatrix omega(4, 4,
                        {a0, a1 * p(e1), a2 * p(e2), a3 * p(e3),      //
                         a1, -a0 * p(e1), a3 * p(e2), -a2 * p(e3),    //
                         a2, -a3 * p(e1), -a0 * p(e2), a1 * p(e3),    //
                         a3, a2 * p(e1), -a1 * p(e2), -a0 * p(e3)});
    CHECK(is_unitary(omega, 1e-12));
}

TEST_CASE("mat_vec by a unitary preserves the Euclidean norm") {
    Rng rng(23);
    for (int rep = 0; rep < 20; ++rep) {
        const CMatrix u = random_unitary(rng, 3);
        REQUIRE(is_unitary(u, 1e-12));
        std::vector<Complex> raw(8);
        for (Complex& z : raw) {
            z = Complex{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        }
        const CVector v(raw);
        CHECK(std::abs(mat_vec(u, v).norm() - v.norm()) < 1e-10);
    }
}

TEST_CASE("constructors reject non-finite entries") {
    CHECK_THROWS_AS(CVector({Complex{std::nan(""), 0.0}}), ValidationError);
    CHECK_THROWS_AS(CMatrix(1, 1, {Complex{0.0, INFINITY}}), ValidationError);
}
