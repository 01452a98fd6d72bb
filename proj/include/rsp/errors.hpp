#pragma once

#include <stdexcept>
#include <string>

namespace rsp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Dimension/shape mismatch between operands.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Input violates a documented precondition (normalization, coefficient range, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// Qubit label problems: duplicates, unknown labels, targets outside the register.
class RegisterError : public Error {
public:
    using Error::Error;
};

// Requested object exceeds the configured dense-storage bound.
class CapacityError : public Error {
public:
    using Error::Error;
};

// A closed-form construction failed its own consistency check.
class ConstructionError : public Error {
public:
    using Error::Error;
};

// No valid sign pattern of the required form exists (or the general
// strategy failed validation) at this order. Carries the first violated
// (row, row', column) triple of the anticommuting-pair condition.
class UnsupportedOrderError : public Error {
public:
    UnsupportedOrderError(int m, int row, int row_prime, int column, const std::string& what)
        : Error(what), m_(m), row_(row), row_prime_(row_prime), column_(column) {}

    int order() const { return m_; }
    int row() const { return row_; }
    int row_prime() const { return row_prime_; }
    int column() const { return column_; }

private:
    int m_;
    int row_;
    int row_prime_;
    int column_;
};

}  // namespace rsp
