#include "rsp/protocol.hpp"

#include <cmath>
#include <numbers>

#include "rsp/protocol_run.hpp"

namespace rsp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<std::int8_t> signs_from_rows(const std::vector<const char*>& rows) {
    std::vector<std::int8_t> s;
    s.reserve(rows.size() * rows.size());
    for (const char* row : rows) {
        for (const char* p = row; *p; ++p) {
            s.push_back(*p == '+' ? 1 : -1);
        }
    }
    return s;
}

// Sign tables of the fixed small-order measurement bases. Row r, column c
// carries the sign in front of alpha_{r XOR c}.
SignPattern fixed_pattern(int m) {
    switch (m) {
        case 1:
            return SignPattern(1, signs_from_rows({"++",  //
                                                   "+-"}));
        case 2:
            return SignPattern(2, signs_from_rows({"++++",  //
                                                   "+-+-",  //
                                                   "+--+",  //
                                                   "++--"}));
        case 3:
            return SignPattern(3, signs_from_rows({"++++++++",  //
                                                   "+-+-+-+-",  //
                                                   "+--+-++-",  //
                                                   "++--++--",  //
                                                   "+-+--+-+",  //
                                                   "++----++",  //
                                                   "+--++--+",  //
                                                   "++++----"}));
        default:
            throw ValidationError("no fixed sign table at this order");
    }
}

// gamma(r, j): sign of the twisted product e_r * e_j = gamma(r,j) e_{r XOR j},
// the transposed-index view of a sign table (s(r,c) = gamma(r, r XOR c)).
std::vector<std::int8_t> gamma_of(const SignPattern& s) {
    const std::size_t n = s.dim();
    std::vector<std::int8_t> g(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t j = 0; j < n; ++j) {
            g[r * n + j] = static_cast<std::int8_t>(s.sign(r, r ^ j));
        }
    }
    return g;
}

// Cayley-Dickson style doubling of a twisted-product sign table. The output
// is an attempt only; callers must validate it.
std::vector<std::int8_t> double_gamma(const std::vector<std::int8_t>& g, std::size_t n) {
    const std::size_t n2 = 2 * n;
    std::vector<std::int8_t> out(n2 * n2);
    auto base = [&](std::size_t r, std::size_t j) { return g[r * n + j]; };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out[i * n2 + j] = base(i, j);
            out[i * n2 + (j + n)] = base(j, i);
            out[(i + n) * n2 + j] =
                static_cast<std::int8_t>(j == 0 ? base(i, 0) : -base(i, j));
            out[(i + n) * n2 + (j + n)] =
                static_cast<std::int8_t>(j == 0 ? -base(j, i) : base(j, i));
        }
    }
    return out;
}

const Complex kI{0.0, 1.0};

CMatrix pauli_x() {
    return CMatrix(2, 2, {0.0, 1.0, 1.0, 0.0});
}

CMatrix pauli_z() {
    return CMatrix(2, 2, {1.0, 0.0, 0.0, -1.0});
}

void check_bits(const std::vector<int>& bits, int m, const char* what) {
    if (static_cast<int>(bits.size()) != m) {
        throw ValidationError(std::string(what) + ": expected " + std::to_string(m) + " bits");
    }
    for (int b : bits) {
        if (b != 0 && b != 1) {
            throw ValidationError(std::string(what) + ": bits must be 0 or 1");
        }
    }
}

}  // namespace

DesiredStateSpec::DesiredStateSpec(int m, std::vector<double> alphas, std::vector<double> etas)
    : m_(m), alphas_(std::move(alphas)), etas_(std::move(etas)) {
    if (m_ < 1) {
        throw ValidationError("desired state needs m >= 1");
    }
    const std::size_t l = dim();
    if (alphas_.size() != l || etas_.size() != l) {
        throw ValidationError("desired state needs 2^m magnitudes and 2^m phases");
    }
    double sum = 0.0;
    for (double a : alphas_) {
        if (!std::isfinite(a) || a < 0.0) {
            throw ValidationError("magnitudes must be finite and nonnegative");
        }
        sum += a * a;
    }
    if (std::abs(sum - 1.0) > kPhysicsTol) {
        throw ValidationError("magnitudes do not satisfy the normalization condition");
    }
    for (double e : etas_) {
        if (!std::isfinite(e) || e < 0.0 || e >= kTwoPi) {
            throw ValidationError("phases must lie in [0, 2pi)");
        }
    }
    if (etas_[0] != 0.0) {
        throw ValidationError("eta_0 must be 0 (the reference phase)");
    }
}

ChannelSpec::ChannelSpec(int m, std::vector<double> xs, std::vector<double> ys)
    : m_(m), xs_(std::move(xs)), ys_(std::move(ys)) {}

ChannelSpec ChannelSpec::from_x(int m, std::vector<double> xs) {
    if (m < 1) {
        throw ValidationError("channels need m >= 1");
    }
    if (xs.size() != static_cast<std::size_t>(m)) {
        throw ValidationError("expected one x coefficient per channel");
    }
    std::vector<double> ys(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double x = xs[k];
        if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
            throw ValidationError("channel coefficients must lie in [0, 1]");
        }
        const double y = std::sqrt(std::max(0.0, 1.0 - x * x));
        if (x > y + kAlgebraTol) {
            throw ValidationError("channel coefficient x_" + std::to_string(k) +
                                  " exceeds its partner (|x| <= |y| requires x <= 1/sqrt(2))");
        }
        ys[k] = y;
    }
    return ChannelSpec(m, std::move(xs), std::move(ys));
}

double ChannelSpec::x_product() const {
    double p = 1.0;
    for (double x : xs_) {
        p *= x;
    }
    return p;
}

bool ChannelSpec::maximal(double tol) const {
    for (std::size_t k = 0; k < xs_.size(); ++k) {
        if (std::abs(xs_[k] - ys_[k]) > tol) {
            return false;
        }
    }
    return true;
}

SignPattern::SignPattern(int m, std::vector<std::int8_t> signs)
    : m_(m), signs_(std::move(signs)) {
    if (m_ < 1) {
        throw ValidationError("sign pattern needs m >= 1");
    }
    const std::size_t l = dim();
    if (signs_.size() != l * l) {
        throw ValidationError("sign pattern has wrong size");
    }
    for (std::int8_t v : signs_) {
        if (v != 1 && v != -1) {
            throw ValidationError("sign pattern entries must be +1 or -1");
        }
    }
    for (std::size_t c = 0; c < l; ++c) {
        if (sign(0, c) != 1) {
            throw ValidationError("sign pattern row 0 must be all +1");
        }
    }
}

std::optional<SignPattern::Witness> SignPattern::validate() const {
    const std::size_t l = dim();
    for (std::size_t r = 0; r < l; ++r) {
        for (std::size_t rp = r + 1; rp < l; ++rp) {
            const std::size_t d = r ^ rp;
            for (std::size_t c = 0; c < l; ++c) {
                if (sign(r, c) * sign(rp, c) != -sign(r, c ^ d) * sign(rp, c ^ d)) {
                    return Witness{static_cast<int>(r), static_cast<int>(rp),
                                   static_cast<int>(c)};
                }
            }
        }
    }
    return std::nullopt;
}

std::vector<int> index_to_bits(std::size_t index, int m) {
    std::vector<int> bits(m);
    for (int k = 0; k < m; ++k) {
        bits[k] = static_cast<int>((index >> (m - 1 - k)) & 1u);
    }
    return bits;
}

std::size_t bits_to_index(const std::vector<int>& bits) {
    std::size_t idx = 0;
    for (int b : bits) {
        idx = (idx << 1) | static_cast<std::size_t>(b);
    }
    return idx;
}

StateVector build_desired_state(const DesiredStateSpec& spec) {
    std::vector<Complex> amps(spec.dim());
    for (std::size_t i = 0; i < spec.dim(); ++i) {
        amps[i] = spec.alphas()[i] * std::exp(kI * spec.etas()[i]);
    }
    std::vector<QubitId> reg;
    for (int k = 1; k <= spec.m(); ++k) {
        reg.push_back(QubitId{k});
    }
    return StateVector(std::move(reg), CVector(std::move(amps)));
}

StateVector build_channel_state(const ChannelSpec& spec) {
    std::vector<StateFactor> factors;
    for (int k = 0; k < spec.m(); ++k) {
        std::vector<Complex> ghz(8, Complex{0.0, 0.0});
        ghz[0] = spec.xs()[k];
        ghz[7] = spec.ys()[k];
        factors.push_back({{QubitId{3 * k + 1}, QubitId{3 * k + 2}, QubitId{3 * k + 3}},
                           CVector(std::move(ghz))});
    }
    return product_state(factors);
}

SignPattern sign_pattern(int m) {
    if (m < 1) {
        throw ValidationError("sign_pattern needs m >= 1");
    }
    if (m <= 3) {
        return fixed_pattern(m);
    }
    // General-order attempt: double the order-3 table until it is big
    // enough, then validate. No table of this signed-permutation form can
    // pass beyond m = 3, so this reports the violation it finds.
    std::vector<std::int8_t> gamma = gamma_of(fixed_pattern(3));
    std::size_t n = 8;
    for (int order = 3; order < m; ++order) {
        gamma = double_gamma(gamma, n);
        n *= 2;
    }
    std::vector<std::int8_t> s(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            s[r * n + c] = gamma[r * n + (r ^ c)];
        }
    }
    // Column sign flips leave the anticommuting-pair condition untouched;
    // use them to put the attempt into the row-0-positive convention.
    for (std::size_t c = 0; c < n; ++c) {
        if (s[c] == -1) {
            for (std::size_t r = 0; r < n; ++r) {
                s[r * n + c] = static_cast<std::int8_t>(-s[r * n + c]);
            }
        }
    }
    SignPattern pattern(m, std::move(s));
    if (auto w = pattern.validate()) {
        throw UnsupportedOrderError(
            m, w->row, w->row_prime, w->column,
            "no valid sign pattern at m=" + std::to_string(m) + ": rows " +
                std::to_string(w->row) + " and " + std::to_string(w->row_prime) +
                " violate the anticommuting-pair condition at column " +
                std::to_string(w->column));
    }
    return pattern;
}

MeasurementBasis build_omega(const DesiredStateSpec& desired, const SignPattern& signs) {
    if (desired.m() != signs.m()) {
        throw ValidationError("desired state and sign pattern orders differ");
    }
    const std::size_t l = desired.dim();
    std::vector<Complex> entries(l * l);
    for (std::size_t r = 0; r < l; ++r) {
        for (std::size_t c = 0; c < l; ++c) {
            entries[r * l + c] = static_cast<double>(signs.sign(r, c)) *
                                 desired.alphas()[r ^ c] *
                                 std::exp(-kI * desired.etas()[c]);
        }
    }
    CMatrix omega(l, l, std::move(entries));
    if (!is_unitary(omega, kAlgebraTol)) {
        throw ConstructionError("measurement basis failed its unitarity check");
    }
    return MeasurementBasis{std::move(omega)};
}

CMatrix phase_correction_unitary(const std::vector<int>& i_bits, const DesiredStateSpec& desired,
                                 const SignPattern& signs) {
    check_bits(i_bits, desired.m(), "i_bits");
    if (desired.m() != signs.m()) {
        throw ValidationError("desired state and sign pattern orders differ");
    }
    const std::size_t i = bits_to_index(i_bits);
    const std::size_t l = desired.dim();
    std::vector<Complex> diag(l);
    for (std::size_t c = 0; c < l; ++c) {
        diag[c] = static_cast<double>(signs.sign(i, c)) *
                  std::exp(kI * (desired.etas()[i ^ c] - desired.etas()[c]));
    }
    return CMatrix::diagonal(diag);
}

CMatrix amplitude_equalizer(const ChannelSpec& channels) {
    const int m = channels.m();
    const std::size_t l = std::size_t{1} << m;
    std::vector<double> d(l), f(l);
    for (std::size_t b = 0; b < l; ++b) {
        double ratio = 1.0;
        for (int k = 0; k < m; ++k) {
            if ((b >> (m - 1 - k)) & 1u) {
                ratio *= channels.xs()[k] / channels.ys()[k];
            }
        }
        d[b] = ratio;
        f[b] = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
    }
    // Blocks [[D, F], [F, -D]] indexed by the auxiliary bit.
    const std::size_t n = 2 * l;
    std::vector<Complex> entries(n * n, Complex{0.0, 0.0});
    for (std::size_t b = 0; b < l; ++b) {
        entries[b * n + b] = d[b];
        entries[b * n + (b + l)] = f[b];
        entries[(b + l) * n + b] = f[b];
        entries[(b + l) * n + (b + l)] = -d[b];
    }
    return CMatrix(n, n, std::move(entries));
}

CMatrix pauli_recovery(const std::vector<int>& i_bits, const std::vector<int>& j_bits) {
    if (i_bits.size() != j_bits.size() || i_bits.empty()) {
        throw ValidationError("recovery needs matching nonempty bit lists");
    }
    const int m = static_cast<int>(i_bits.size());
    check_bits(i_bits, m, "i_bits");
    check_bits(j_bits, m, "j_bits");
    CMatrix op = CMatrix::identity(1);
    for (int k = 0; k < m; ++k) {
        CMatrix factor = CMatrix::identity(2);
        if (j_bits[k]) {
            factor = mat_mul(pauli_z(), factor);
        }
        if (i_bits[k]) {
            factor = mat_mul(pauli_x(), factor);
        }
        op = kron(op, factor);
    }
    return op;
}

std::string recovery_name(const std::vector<int>& i_bits, const std::vector<int>& j_bits) {
    if (i_bits.size() != j_bits.size() || i_bits.empty()) {
        throw ValidationError("recovery needs matching nonempty bit lists");
    }
    std::string out;
    for (std::size_t k = 0; k < i_bits.size(); ++k) {
        if (k > 0) {
            out += "⊗";  // tensor product sign
        }
        if (!i_bits[k] && !j_bits[k]) {
            out += "I";
        } else {
            if (i_bits[k]) {
                out += "σx";
            }
            if (j_bits[k]) {
                out += "σz";
            }
        }
    }
    return out;
}

ProtocolRun::ProtocolRun(const DesiredStateSpec& desired, const ChannelSpec& channels)
    : desired_(desired),
      channels_(channels),
      signs_(sign_pattern(desired.m())),
      omega_(build_omega(desired, signs_).omega),
      channel_state_(build_channel_state(channels)),
      target_(build_desired_state(desired)) {
    if (desired.m() != channels.m()) {
        throw ValidationError("desired state and channels have different m");
    }
    for (int k = 0; k < desired.m(); ++k) {
        step1_qubits_.push_back(QubitId{3 * k + 1});
        step3_qubits_.push_back(QubitId{3 * k + 2});
        receiver_qubits_.push_back(QubitId{3 * k + 3});
    }
}

CMatrix ProtocolRun::plus_minus_basis(int m) {
    const std::size_t l = std::size_t{1} << m;
    const double scale = 1.0 / std::sqrt(static_cast<double>(l));
    std::vector<Complex> entries(l * l);
    for (std::size_t j = 0; j < l; ++j) {
        for (std::size_t c = 0; c < l; ++c) {
            entries[j * l + c] = (std::popcount(j & c) & 1u) ? -scale : scale;
        }
    }
    return CMatrix(l, l, std::move(entries));
}

ProtocolRun::Step3State ProtocolRun::run_to_step3(std::size_t i_index,
                                                  std::size_t j_index) const {
    Step3State out;
    MeasurementRecord step1 = measure_in_basis(channel_state_, step1_qubits_, omega_,
                                               static_cast<int>(i_index));
    out.step1_probability = step1.probability;
    if (!step1.post_state) {
        return out;
    }
    const CMatrix correction = phase_correction_unitary(
        index_to_bits(i_index, desired_.m()), desired_, signs_);
    const StateVector corrected = apply_unitary(*step1.post_state, step3_qubits_, correction);
    MeasurementRecord step3 = measure_in_basis(corrected, step3_qubits_,
                                               plus_minus_basis(desired_.m()),
                                               static_cast<int>(j_index));
    out.step3_probability = step3.probability;
    out.state = std::move(step3.post_state);
    return out;
}

BranchRecord ProtocolRun::branch(const std::vector<int>& i_bits, const std::vector<int>& j_bits,
                                 bool skip_equalizer, int aux_outcome) const {
    const int m = desired_.m();
    check_bits(i_bits, m, "i_bits");
    check_bits(j_bits, m, "j_bits");
    if (aux_outcome != 0 && aux_outcome != 1) {
        throw ValidationError("aux outcome must be 0 or 1");
    }
    if (skip_equalizer) {
        if (!channels_.maximal()) {
            throw ValidationError("step 4 may only be skipped for maximal channels");
        }
        if (aux_outcome != 0) {
            throw ValidationError("no auxiliary branch exists when step 4 is skipped");
        }
    }

    BranchRecord rec;
    rec.i_bits = i_bits;
    rec.j_bits = j_bits;
    rec.aux_bit = aux_outcome;

    const Step3State mid = run_to_step3(bits_to_index(i_bits), bits_to_index(j_bits));
    if (!mid.state) {
        return rec;  // zero-probability branch: probability 0, no state
    }
    double probability = mid.step1_probability * mid.step3_probability;

    StateVector before_recovery = *mid.state;
    if (!skip_equalizer) {
        const StateVector with_aux = product_state(
            {{receiver_qubits_, mid.state->amplitudes()},
             {{QubitId::aux()}, CVector({Complex{1.0, 0.0}, Complex{0.0, 0.0}})}});
        std::vector<QubitId> eq_targets;
        eq_targets.push_back(QubitId::aux());
        for (QubitId q : receiver_qubits_) {
            eq_targets.push_back(q);
        }
        const StateVector equalized =
            apply_unitary(with_aux, eq_targets, amplitude_equalizer(channels_));
        MeasurementRecord aux = measure_in_basis(equalized, {QubitId::aux()},
                                                 CMatrix::identity(2), aux_outcome);
        probability *= aux.probability;
        if (aux_outcome == 1) {
            rec.probability = probability;
            return rec;  // heralded failure: trivial state, no recovery
        }
        if (!aux.post_state) {
            return rec;
        }
        before_recovery = *aux.post_state;
    }

    const StateVector final_state =
        apply_unitary(before_recovery, receiver_qubits_, pauli_recovery(i_bits, j_bits));
    rec.probability = probability;
    rec.fidelity_to_target = fidelity(final_state, target_);
    rec.final_state = final_state;
    return rec;
}

std::vector<StateVector> ProtocolRun::trace(const std::vector<int>& i_bits,
                                            const std::vector<int>& j_bits) const {
    const int m = desired_.m();
    check_bits(i_bits, m, "i_bits");
    check_bits(j_bits, m, "j_bits");

    std::vector<StateVector> states;
    MeasurementRecord step1 = measure_in_basis(channel_state_, step1_qubits_, omega_,
                                               static_cast<int>(bits_to_index(i_bits)));
    if (!step1.post_state) {
        throw ValidationError("forced branch has zero probability");
    }
    states.push_back(*step1.post_state);

    const CMatrix correction = phase_correction_unitary(i_bits, desired_, signs_);
    states.push_back(apply_unitary(states.back(), step3_qubits_, correction));

    MeasurementRecord step3 = measure_in_basis(states.back(), step3_qubits_,
                                               plus_minus_basis(m),
                                               static_cast<int>(bits_to_index(j_bits)));
    if (!step3.post_state) {
        throw ValidationError("forced branch has zero probability");
    }
    states.push_back(*step3.post_state);

    const StateVector with_aux = product_state(
        {{receiver_qubits_, step3.post_state->amplitudes()},
         {{QubitId::aux()}, CVector({Complex{1.0, 0.0}, Complex{0.0, 0.0}})}});
    std::vector<QubitId> eq_targets;
    eq_targets.push_back(QubitId::aux());
    for (QubitId q : receiver_qubits_) {
        eq_targets.push_back(q);
    }
    const StateVector equalized =
        apply_unitary(with_aux, eq_targets, amplitude_equalizer(channels_));
    MeasurementRecord aux =
        measure_in_basis(equalized, {QubitId::aux()}, CMatrix::identity(2), 0);
    if (!aux.post_state) {
        throw ValidationError("forced branch has zero probability");
    }
    states.push_back(*aux.post_state);

    states.push_back(
        apply_unitary(states.back(), receiver_qubits_, pauli_recovery(i_bits, j_bits)));
    return states;
}

std::vector<double> ProtocolRun::step1_distribution() const {
    const std::size_t l = desired_.dim();
    std::vector<double> dist(l);
    for (std::size_t i = 0; i < l; ++i) {
        dist[i] = measure_in_basis(channel_state_, step1_qubits_, omega_, static_cast<int>(i))
                      .probability;
    }
    return dist;
}

std::vector<double> ProtocolRun::step3_distribution(std::size_t i_index) const {
    const std::size_t l = desired_.dim();
    MeasurementRecord step1 =
        measure_in_basis(channel_state_, step1_qubits_, omega_, static_cast<int>(i_index));
    std::vector<double> dist(l, 0.0);
    if (!step1.post_state) {
        return dist;
    }
    const CMatrix correction = phase_correction_unitary(
        index_to_bits(i_index, desired_.m()), desired_, signs_);
    const StateVector corrected = apply_unitary(*step1.post_state, step3_qubits_, correction);
    const CMatrix pm = plus_minus_basis(desired_.m());
    for (std::size_t j = 0; j < l; ++j) {
        dist[j] = measure_in_basis(corrected, step3_qubits_, pm, static_cast<int>(j)).probability;
    }
    return dist;
}

double ProtocolRun::aux_success_probability(std::size_t i_index, std::size_t j_index) const {
    const Step3State mid = run_to_step3(i_index, j_index);
    if (!mid.state) {
        return 0.0;
    }
    const StateVector with_aux = product_state(
        {{receiver_qubits_, mid.state->amplitudes()},
         {{QubitId::aux()}, CVector({Complex{1.0, 0.0}, Complex{0.0, 0.0}})}});
    std::vector<QubitId> eq_targets;
    eq_targets.push_back(QubitId::aux());
    for (QubitId q : receiver_qubits_) {
        eq_targets.push_back(q);
    }
    const StateVector equalized =
        apply_unitary(with_aux, eq_targets, amplitude_equalizer(channels_));
    return measure_in_basis(equalized, {QubitId::aux()}, CMatrix::identity(2), 0).probability;
}

BranchRecord run_branch(const DesiredStateSpec& desired, const ChannelSpec& channels,
                        const std::vector<int>& i_bits, const std::vector<int>& j_bits,
                        bool skip_equalizer, int aux_outcome) {
    return ProtocolRun(desired, channels).branch(i_bits, j_bits, skip_equalizer, aux_outcome);
}

std::vector<StateVector> verify_intermediate_trace(const DesiredStateSpec& desired,
                                                   const ChannelSpec& channels,
                                                   const std::vector<int>& i_bits,
                                                   const std::vector<int>& j_bits) {
    return ProtocolRun(desired, channels).trace(i_bits, j_bits);
}

}  // namespace rsp
