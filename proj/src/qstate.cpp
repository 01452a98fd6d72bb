#include "rsp/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace rsp {

namespace {

constexpr double kZeroBranchCutoff = 1e-15;

void check_targets(const StateVector& state, const std::vector<QubitId>& targets) {
    std::set<QubitId> seen;
    for (QubitId q : targets) {
        if (!seen.insert(q).second) {
            throw RegisterError("duplicate target qubit " + q.name());
        }
        state.slot_of(q);  // throws if unknown
    }
}

// Scatter the bits of `sub` (MSB-first over `slots`) into a full index.
std::size_t place_bits(std::size_t base, const std::vector<std::size_t>& slots, std::size_t sub,
                       std::size_t n) {
    std::size_t idx = base;
    for (std::size_t k = 0; k < slots.size(); ++k) {
        const std::size_t bit = (sub >> (slots.size() - 1 - k)) & 1u;
        const std::size_t pos = n - 1 - slots[k];
        idx = (idx & ~(std::size_t{1} << pos)) | (bit << pos);
    }
    return idx;
}

}  // namespace

StateVector::StateVector(std::vector<QubitId> qubits, CVector amplitudes)
    : register_(std::move(qubits)), amps_(std::move(amplitudes)) {
    if (register_.empty()) {
        throw RegisterError("state register must contain at least one qubit");
    }
    std::set<QubitId> seen;
    for (QubitId q : register_) {
        if (!seen.insert(q).second) {
            throw RegisterError("duplicate qubit label " + q.name() + " in register");
        }
    }
    const std::size_t want = std::size_t{1} << register_.size();
    if (amps_.dim() != want) {
        throw ShapeError("amplitude dimension does not match register size");
    }
    if (std::abs(amps_.norm() - 1.0) > kPhysicsTol) {
        throw ValidationError("state vector is not normalized");
    }
}

std::size_t StateVector::slot_of(QubitId q) const {
    for (std::size_t i = 0; i < register_.size(); ++i) {
        if (register_[i] == q) {
            return i;
        }
    }
    throw RegisterError("qubit " + q.name() + " is not in the register");
}

StateVector product_state(const std::vector<StateFactor>& factors) {
    if (factors.empty()) {
        throw RegisterError("product_state needs at least one factor");
    }
    std::vector<QubitId> reg;
    std::set<QubitId> seen;
    for (const auto& [qubits, vec] : factors) {
        if (vec.dim() != (std::size_t{1} << qubits.size())) {
            throw ShapeError("factor dimension does not match its qubit count");
        }
        if (std::abs(vec.norm() - 1.0) > kPhysicsTol) {
            throw ValidationError("product_state factor is not normalized");
        }
        for (QubitId q : qubits) {
            if (!seen.insert(q).second) {
                throw RegisterError("qubit " + q.name() + " appears in two factors");
            }
            reg.push_back(q);
        }
    }
    CVector amps = factors[0].second;
    for (std::size_t i = 1; i < factors.size(); ++i) {
        amps = kron(amps, factors[i].second);
    }
    return StateVector(std::move(reg), std::move(amps));
}

StateVector apply_unitary(const StateVector& state, const std::vector<QubitId>& targets,
                          const CMatrix& u) {
    if (targets.empty()) {
        throw RegisterError("apply_unitary needs at least one target");
    }
    check_targets(state, targets);
    const std::size_t k = targets.size();
    const std::size_t udim = std::size_t{1} << k;
    if (u.rows() != udim || u.cols() != udim) {
        throw ShapeError("unitary dimension does not match target count");
    }
    if (!is_unitary(u, kPhysicsTol)) {
        throw ValidationError("apply_unitary: matrix is not unitary");
    }

    const std::size_t n = state.num_qubits();
    std::vector<std::size_t> slots;
    slots.reserve(k);
    for (QubitId q : targets) {
        slots.push_back(state.slot_of(q));
    }

    const auto& in = state.amplitudes();
    std::vector<Complex> out(in.dim(), Complex{0.0, 0.0});
    for (std::size_t idx = 0; idx < in.dim(); ++idx) {
        std::size_t row = 0;
        for (std::size_t t = 0; t < k; ++t) {
            row = (row << 1) | ((idx >> (n - 1 - slots[t])) & 1u);
        }
        Complex acc{0.0, 0.0};
        for (std::size_t col = 0; col < udim; ++col) {
            const Complex w = u(row, col);
            if (w == Complex{0.0, 0.0}) {
                continue;
            }
            acc += w * in[place_bits(idx, slots, col, n)];
        }
        out[idx] = acc;
    }
    return StateVector(state.qubit_register(), CVector(std::move(out)));
}

MeasurementRecord measure_in_basis(const StateVector& state, const std::vector<QubitId>& targets,
                                   const CMatrix& basis, int outcome) {
    if (targets.empty()) {
        throw RegisterError("measure_in_basis needs at least one target");
    }
    check_targets(state, targets);
    const std::size_t k = targets.size();
    const std::size_t bdim = std::size_t{1} << k;
    if (basis.rows() != bdim || basis.cols() != bdim) {
        throw ShapeError("basis dimension does not match target count");
    }
    if (outcome < 0 || static_cast<std::size_t>(outcome) >= bdim) {
        throw ValidationError("measurement outcome out of range");
    }
    if (!is_unitary(basis, kPhysicsTol)) {
        throw ValidationError("measurement basis is not unitary");
    }

    const std::size_t n = state.num_qubits();
    std::vector<std::size_t> slots;
    std::vector<QubitId> rest;
    std::vector<std::size_t> rest_slots;
    for (QubitId q : targets) {
        slots.push_back(state.slot_of(q));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (std::find(slots.begin(), slots.end(), i) == slots.end()) {
            rest.push_back(state.qubit_register()[i]);
            rest_slots.push_back(i);
        }
    }

    const auto& in = state.amplitudes();
    const std::size_t rdim = std::size_t{1} << rest.size();
    std::vector<Complex> resid(rdim, Complex{0.0, 0.0});
    double prob = 0.0;
    for (std::size_t r = 0; r < rdim; ++r) {
        const std::size_t base = place_bits(0, rest_slots, r, n);
        Complex acc{0.0, 0.0};
        for (std::size_t c = 0; c < bdim; ++c) {
            acc += std::conj(basis(outcome, c)) * in[place_bits(base, slots, c, n)];
        }
        resid[r] = acc;
        prob += std::norm(acc);
    }

    MeasurementRecord rec;
    rec.measured_qubits = targets;
    rec.outcome_index = outcome;
    rec.probability = prob;
    if (prob >= kZeroBranchCutoff && !rest.empty()) {
        const double scale = 1.0 / std::sqrt(prob);
        for (Complex& z : resid) {
            z *= scale;
        }
        rec.post_state = StateVector(std::move(rest), CVector(std::move(resid)));
    }
    return rec;
}

double fidelity(const StateVector& a, const StateVector& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw ShapeError("fidelity: register sizes differ");
    }
    return std::norm(inner_product(a.amplitudes(), b.amplitudes()));
}

}  // namespace rsp
