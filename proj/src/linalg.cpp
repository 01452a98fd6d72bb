#include "rsp/linalg.hpp"

#include <cmath>
#include <string>

namespace rsp {

namespace {

void check_finite(const std::vector<Complex>& entries, const char* what) {
    for (const Complex& z : entries) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw ValidationError(std::string(what) + ": non-finite entry");
        }
    }
}

void check_capacity(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw ShapeError("matrix dimensions must be positive");
    }
    if (rows > kMaxEntries / cols) {
        throw CapacityError("matrix of " + std::to_string(rows) + "x" + std::to_string(cols) +
                            " exceeds the dense-storage bound");
    }
}

}  // namespace

CVector::CVector(std::vector<Complex> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) {
        throw ShapeError("vector dimension must be >= 1");
    }
    if (entries_.size() > kMaxEntries) {
        throw CapacityError("vector of dim " + std::to_string(entries_.size()) +
                            " exceeds the dense-storage bound");
    }
    check_finite(entries_, "CVector");
}

CVector CVector::zeros(std::size_t dim) {
    return CVector(std::vector<Complex>(dim, Complex{0.0, 0.0}));
}

double CVector::norm() const {
    double s = 0.0;
    for (const Complex& z : entries_) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    check_capacity(rows_, cols_);
    if (entries_.size() != rows_ * cols_) {
        throw ShapeError("matrix entry count does not match rows*cols");
    }
    check_finite(entries_, "CMatrix");
}

CMatrix CMatrix::identity(std::size_t n) {
    std::vector<Complex> e(n * n, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        e[i * n + i] = Complex{1.0, 0.0};
    }
    return CMatrix(n, n, std::move(e));
}

CMatrix CMatrix::diagonal(const std::vector<Complex>& diag) {
    const std::size_t n = diag.size();
    std::vector<Complex> e(n * n, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        e[i * n + i] = diag[i];
    }
    return CMatrix(n, n, std::move(e));
}

CMatrix CMatrix::adjoint() const {
    std::vector<Complex> e(rows_ * cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            e[c * rows_ + r] = std::conj((*this)(r, c));
        }
    }
    return CMatrix(cols_, rows_, std::move(e));
}

CVector mat_vec(const CMatrix& m, const CVector& v) {
    if (m.cols() != v.dim()) {
        throw ShapeError("mat_vec: matrix has " + std::to_string(m.cols()) +
                         " columns but vector has dim " + std::to_string(v.dim()));
    }
    std::vector<Complex> out(m.rows(), Complex{0.0, 0.0});
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Complex acc{0.0, 0.0};
        for (std::size_t c = 0; c < m.cols(); ++c) {
            acc += m(r, c) * v[c];
        }
        out[r] = acc;
    }
    return CVector(std::move(out));
}

CMatrix mat_mul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("mat_mul: inner dimensions disagree");
    }
    std::vector<Complex> out(a.rows() * b.cols(), Complex{0.0, 0.0});
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex ark = a(r, k);
            if (ark == Complex{0.0, 0.0}) {
                continue;
            }
            for (std::size_t c = 0; c < b.cols(); ++c) {
                out[r * b.cols() + c] += ark * b(k, c);
            }
        }
    }
    return CMatrix(a.rows(), b.cols(), std::move(out));
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    check_capacity(a.rows() * b.rows(), a.cols() * b.cols());
    const std::size_t rows = a.rows() * b.rows();
    const std::size_t cols = a.cols() * b.cols();
    std::vector<Complex> out(rows * cols);
    for (std::size_t ar = 0; ar < a.rows(); ++ar) {
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const Complex f = a(ar, ac);
            for (std::size_t br = 0; br < b.rows(); ++br) {
                for (std::size_t bc = 0; bc < b.cols(); ++bc) {
                    out[(ar * b.rows() + br) * cols + (ac * b.cols() + bc)] = f * b(br, bc);
                }
            }
        }
    }
    return CMatrix(rows, cols, std::move(out));
}

CVector kron(const CVector& a, const CVector& b) {
    if (a.dim() > kMaxEntries / b.dim()) {
        throw CapacityError("kron: vector exceeds the dense-storage bound");
    }
    std::vector<Complex> out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            out[i * b.dim() + j] = a[i] * b[j];
        }
    }
    return CVector(std::move(out));
}

bool is_unitary(const CMatrix& m, double tol) {
    if (m.rows() != m.cols()) {
        throw ShapeError("is_unitary: matrix is not square");
    }
    const std::size_t n = m.rows();
    // Max-entry norm of M*M^dagger - I, without forming the product matrix.
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            Complex acc{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k) {
                acc += m(r, k) * std::conj(m(c, k));
            }
            if (r == c) {
                acc -= 1.0;
            }
            if (std::abs(acc) >= tol) {
                return false;
            }
        }
    }
    return true;
}

Complex inner_product(const CVector& a, const CVector& b) {
    if (a.dim() != b.dim()) {
        throw ShapeError("inner_product: dimension mismatch");
    }
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

double max_abs_diff(const CVector& a, const CVector& b) {
    if (a.dim() != b.dim()) {
        throw ShapeError("max_abs_diff: dimension mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError("max_abs_diff: shape mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return worst;
}

}  // namespace rsp
