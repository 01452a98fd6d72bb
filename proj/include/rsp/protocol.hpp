#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsp/qstate.hpp"

namespace rsp {

// Bit-role conventions used throughout this library:
//   * channel k (0-based) carries coefficients (x_k, y_k) and owns the qubit
//     triple (3k+1, 3k+2, 3k+3); the receiver's qubit of that triple is 3k+3;
//   * i_k is the step-1 outcome bit read from qubit 3k+1, j_k the step-3
//     outcome bit from qubit 3k+2 (0 for |+>, 1 for |->);
//   * k = 0 is the most significant bit of every m-bit index.

// Target state: 2^m magnitudes alpha_i >= 0 with sum alpha_i^2 = 1 and
// phases eta_i in [0, 2pi), eta_0 = 0.
class DesiredStateSpec {
public:
    DesiredStateSpec(int m, std::vector<double> alphas, std::vector<double> etas);

    int m() const { return m_; }
    std::size_t dim() const { return std::size_t{1} << m_; }
    const std::vector<double>& alphas() const { return alphas_; }
    const std::vector<double>& etas() const { return etas_; }

private:
    int m_;
    std::vector<double> alphas_;
    std::vector<double> etas_;
};

// m GHZ-type channel triples x_k|000> + y_k|111> with 0 <= x_k <= y_k and
// y_k derived as sqrt(1 - x_k^2).
class ChannelSpec {
public:
    static ChannelSpec from_x(int m, std::vector<double> xs);

    int m() const { return m_; }
    const std::vector<double>& xs() const { return xs_; }
    const std::vector<double>& ys() const { return ys_; }

    // Product of the smaller coefficients, Prod_k x_k.
    double x_product() const;
    // True when every channel is maximally entangled (x_k == y_k within tol).
    bool maximal(double tol = kAlgebraTol) const;

private:
    ChannelSpec(int m, std::vector<double> xs, std::vector<double> ys);

    int m_;
    std::vector<double> xs_;
    std::vector<double> ys_;
};

// The +-1 table s(r, c) behind the measurement basis: row r of Omega places
// s(r,c) * alpha_{r XOR c} * exp(-i eta_c) at column c. Rows are mutually
// orthogonal for every choice of alpha exactly when
//   s(r,c) s(r',c) == -s(r,d^c) s(r',d^c)  with d = r XOR r', for all c.
class SignPattern {
public:
    struct Witness {
        int row;
        int row_prime;
        int column;
    };

    SignPattern(int m, std::vector<std::int8_t> signs);

    int m() const { return m_; }
    std::size_t dim() const { return std::size_t{1} << m_; }
    int sign(std::size_t r, std::size_t c) const {
        return signs_[r * dim() + c];
    }

    // First violated (r, r', c) of the anticommuting-pair condition, if any.
    std::optional<Witness> validate() const;

private:
    int m_;
    std::vector<std::int8_t> signs_;
};

struct MeasurementBasis {
    CMatrix omega;
};

// One fully specified branch: step-1 outcome i, step-3 outcome j, auxiliary
// outcome. aux_bit == 1 is the heralded failure branch and carries no state.
struct BranchRecord {
    std::vector<int> i_bits;
    std::vector<int> j_bits;
    int aux_bit = 0;
    double probability = 0.0;
    std::optional<StateVector> final_state;
    std::optional<double> fidelity_to_target;
};

// Bit helpers (bit 0 = most significant).
std::vector<int> index_to_bits(std::size_t index, int m);
std::size_t bits_to_index(const std::vector<int>& bits);

StateVector build_desired_state(const DesiredStateSpec& spec);
StateVector build_channel_state(const ChannelSpec& spec);

// Sign tables for m <= 3 are fixed; for m >= 4 a recursive doubling attempt
// is validated and UnsupportedOrderError is thrown when it fails (no valid
// table of this form exists beyond m = 3).
SignPattern sign_pattern(int m);

// Omega(r, c) = s(r,c) * alpha_{r XOR c} * exp(-i eta_c); unitary for every
// normalized spec.
MeasurementBasis build_omega(const DesiredStateSpec& desired, const SignPattern& signs);

// Diagonal step-2 correction for step-1 outcome i:
// entry c = s(i,c) * exp(i (eta_{i XOR c} - eta_c)). Identity for i = 0.
CMatrix phase_correction_unitary(const std::vector<int>& i_bits, const DesiredStateSpec& desired,
                                 const SignPattern& signs);

// Step-4 block unitary [[D, F], [F, -D]] over (aux, receiver qubits), the
// auxiliary bit indexing the blocks: D[b] = Prod_{k: b_k=1} x_k/y_k,
// F[b] = sqrt(1 - D[b]^2). Apply with the auxiliary qubit as first target.
CMatrix amplitude_equalizer(const ChannelSpec& channels);

// Step-5 recovery: tensor product over receiver qubits of sigma_x^{i_k}
// applied after sigma_z^{j_k}.
CMatrix pauli_recovery(const std::vector<int>& i_bits, const std::vector<int>& j_bits);
std::string recovery_name(const std::vector<int>& i_bits, const std::vector<int>& j_bits);

// Runs the five-step protocol with all measurement outcomes forced to
// (i_bits, j_bits, aux_outcome) and returns that branch's record; the
// probability is the product of the forced branches' Born probabilities.
// skip_equalizer omits step 4 (legal only for maximal channels).
BranchRecord run_branch(const DesiredStateSpec& desired, const ChannelSpec& channels,
                        const std::vector<int>& i_bits, const std::vector<int>& j_bits,
                        bool skip_equalizer, int aux_outcome = 0);

// Normalized intermediate states of the full (non-shortcut) pipeline:
// post-step-1 residual, post-step-2, post-step-3, post-step-4 aux=0 state,
// and the recovered final state.
std::vector<StateVector> verify_intermediate_trace(const DesiredStateSpec& desired,
                                                   const ChannelSpec& channels,
                                                   const std::vector<int>& i_bits,
                                                   const std::vector<int>& j_bits);

}  // namespace rsp
