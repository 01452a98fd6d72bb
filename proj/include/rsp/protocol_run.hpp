#pragma once

#include <bit>

#include "rsp/protocol.hpp"

namespace rsp {

// Executor that builds the protocol objects (Omega, channel state, target)
// once and runs forced branches against them. run_branch and
// verify_intermediate_trace are one-shot wrappers around this; the
// enumeration and sampling harness keeps one instance per spec pair.
class ProtocolRun {
public:
    ProtocolRun(const DesiredStateSpec& desired, const ChannelSpec& channels);

    const DesiredStateSpec& desired() const { return desired_; }
    const ChannelSpec& channels() const { return channels_; }
    const CMatrix& omega() const { return omega_; }

    BranchRecord branch(const std::vector<int>& i_bits, const std::vector<int>& j_bits,
                        bool skip_equalizer, int aux_outcome) const;

    std::vector<StateVector> trace(const std::vector<int>& i_bits,
                                   const std::vector<int>& j_bits) const;

    // Born distributions for outcome sampling: P(i) over step-1 outcomes,
    // P(j | i) over step-3 outcomes, and P(aux=0 | i, j).
    std::vector<double> step1_distribution() const;
    std::vector<double> step3_distribution(std::size_t i_index) const;
    double aux_success_probability(std::size_t i_index, std::size_t j_index) const;

    // Rows (-1)^{j.c} / 2^{m/2}: the |+->^m measurement written in the
    // computational basis.
    static CMatrix plus_minus_basis(int m);

private:
    struct Step3State {
        double step1_probability = 0.0;
        double step3_probability = 0.0;
        std::optional<StateVector> state;
    };

    Step3State run_to_step3(std::size_t i_index, std::size_t j_index) const;

    DesiredStateSpec desired_;
    ChannelSpec channels_;
    SignPattern signs_;
    CMatrix omega_;
    StateVector channel_state_;
    StateVector target_;
    std::vector<QubitId> step1_qubits_;
    std::vector<QubitId> step3_qubits_;
    std::vector<QubitId> receiver_qubits_;
};

}  // namespace rsp
