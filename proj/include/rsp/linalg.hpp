#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "rsp/errors.hpp"

namespace rsp {

using Complex = std::complex<double>;

// Default tolerances: physical assertions vs. algebraic identity checks.
inline constexpr double kPhysicsTol = 1e-10;
inline constexpr double kAlgebraTol = 1e-12;

// Dense-storage bound, in complex entries (2^26 ~ 1 GiB of amplitudes).
inline constexpr std::size_t kMaxEntries = std::size_t{1} << 26;

// Dense complex vector. Immutable after construction.
class CVector {
public:
    explicit CVector(std::vector<Complex> entries);
    static CVector zeros(std::size_t dim);

    std::size_t dim() const { return entries_.size(); }
    const Complex& operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<Complex>& entries() const { return entries_; }

    double norm() const;

private:
    std::vector<Complex> entries_;
};

// Dense row-major complex matrix. Immutable after construction.
class CMatrix {
public:
    CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    static CMatrix identity(std::size_t n);
    static CMatrix diagonal(const std::vector<Complex>& diag);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Complex& operator()(std::size_t r, std::size_t c) const {
        return entries_[r * cols_ + c];
    }
    const std::vector<Complex>& entries() const { return entries_; }

    CMatrix adjoint() const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> entries_;
};

CVector mat_vec(const CMatrix& m, const CVector& v);
CMatrix mat_mul(const CMatrix& a, const CMatrix& b);

// Kronecker products; the left factor owns the most significant index bits.
CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);

// True iff max-entry norm of (M*M^dagger - I) < tol.
bool is_unitary(const CMatrix& m, double tol);

Complex inner_product(const CVector& a, const CVector& b);
double max_abs_diff(const CVector& a, const CVector& b);
double max_abs_diff(const CMatrix& a, const CMatrix& b);

}  // namespace rsp
