#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rsp/linalg.hpp"

namespace rsp {

// Qubit label. Positive integers follow the protocol's numbering 1..3m;
// label 0 is reserved for the single auxiliary qubit "A".
struct QubitId {
    int label = 0;

    static QubitId aux() { return QubitId{0}; }
    bool is_aux() const { return label == 0; }
    std::string name() const { return is_aux() ? "A" : std::to_string(label); }

    auto operator<=>(const QubitId&) const = default;
};

// Normalized state over an ordered qubit register. The first register qubit
// is the most significant bit of the amplitude index, so a basis string read
// left-to-right matches the register order. Immutable.
class StateVector {
public:
    StateVector(std::vector<QubitId> qubits, CVector amplitudes);

    std::size_t num_qubits() const { return register_.size(); }
    const std::vector<QubitId>& qubit_register() const { return register_; }
    const CVector& amplitudes() const { return amps_; }

    // Position of a qubit in the register; RegisterError if absent.
    std::size_t slot_of(QubitId q) const;

private:
    std::vector<QubitId> register_;
    CVector amps_;
};

struct MeasurementRecord {
    std::vector<QubitId> measured_qubits;
    int outcome_index = 0;
    // Squared norm of the unnormalized projected component.
    double probability = 0.0;
    // Absent when the branch probability is below 1e-15 (zero-probability
    // branch: skipped, not an error) or when no qubits remain.
    std::optional<StateVector> post_state;
};

using StateFactor = std::pair<std::vector<QubitId>, CVector>;

// Tensor product of the given factors, register order = concatenation order.
// Each factor must be normalized within 1e-10 and the sublists disjoint.
StateVector product_state(const std::vector<StateFactor>& factors);

// Applies u on the target subspace (first target = most significant bit of
// u's index), identity elsewhere. u must be unitary within 1e-10.
StateVector apply_unitary(const StateVector& state, const std::vector<QubitId>& targets,
                          const CMatrix& u);

// Projective measurement in an arbitrary orthonormal basis on a qubit subset.
// Row `outcome` of `basis`, expressed in the computational basis of the
// targets, is the measurement vector; the projection amplitude conjugates
// that row. Measured qubits are removed from the register of the post state.
MeasurementRecord measure_in_basis(const StateVector& state, const std::vector<QubitId>& targets,
                                   const CMatrix& basis, int outcome);

// |<a|b>|^2; global-phase invariant. Registers must have equal size
// (labels are not compared).
double fidelity(const StateVector& a, const StateVector& b);

}  // namespace rsp
