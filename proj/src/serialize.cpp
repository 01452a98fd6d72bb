#include "rsp/serialize.hpp"

#include <charconv>

namespace rsp {

using nlohmann::json;

std::string bits_string(const std::vector<int>& bits) {
    std::string s;
    for (int b : bits) {
        s += (b ? '1' : '0');
    }
    return s;
}

std::string shortest_decimal(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

json enumeration_json(const MetricsReport& metrics, const EnumerationResult& result) {
    json branches = json::array();
    for (const BranchRecord& rec : result.branches) {
        json b{{"i", bits_string(rec.i_bits)},
               {"j", bits_string(rec.j_bits)},
               {"aux", rec.aux_bit},
               {"probability", rec.probability}};
        if (rec.fidelity_to_target) {
            b["fidelity"] = *rec.fidelity_to_target;
        } else {
            b["fidelity"] = nullptr;
        }
        branches.push_back(std::move(b));
    }
    return json{{"m", metrics.m},
                {"tsp_formula", metrics.tsp_formula},
                {"tsp_enumerated", metrics.tsp_enumerated},
                {"cic", metrics.cic},
                {"gamma", metrics.gamma},
                {"branches", std::move(branches)}};
}

std::string enumeration_csv(const EnumerationResult& result) {
    std::string out = "i,j,aux,probability,fidelity\n";
    for (const BranchRecord& rec : result.branches) {
        out += bits_string(rec.i_bits);
        out += ',';
        out += bits_string(rec.j_bits);
        out += ',';
        out += std::to_string(rec.aux_bit);
        out += ',';
        out += shortest_decimal(rec.probability);
        out += ',';
        if (rec.fidelity_to_target) {
            out += shortest_decimal(*rec.fidelity_to_target);
        }
        out += '\n';
    }
    return out;
}

json sample_json(const SampleStats& stats, double tsp_formula_value) {
    return json{{"trials", stats.trials},
                {"success_count", stats.success_count},
                {"empirical_tsp", stats.empirical_tsp},
                {"tsp_formula", tsp_formula_value},
                {"rng_seed", stats.rng_seed}};
}

json sweep_json(const SweepResult& result) {
    return json{{"m", result.m}, {"axes", result.axes}, {"tsp", result.tsp}};
}

std::string sweep_csv(const SweepResult& result) {
    std::string out;
    for (int k = 0; k < result.m; ++k) {
        out += "x" + std::to_string(k) + ",";
    }
    out += "tsp\n";
    std::vector<std::size_t> idx(result.m, 0);
    for (double tsp : result.tsp) {
        for (int k = 0; k < result.m; ++k) {
            out += shortest_decimal(result.axes[k][idx[k]]);
            out += ',';
        }
        out += shortest_decimal(tsp);
        out += '\n';
        for (int k = result.m - 1; k >= 0; --k) {
            if (++idx[k] < result.axes[k].size()) {
                break;
            }
            idx[k] = 0;
        }
    }
    return out;
}

namespace {

json table2_rows(const std::vector<Table2Row>& rows) {
    json out = json::array();
    for (const Table2Row& r : rows) {
        out.push_back(json{{"protocol", r.protocol},
                           {"entanglement", r.entanglement},
                           {"operations", r.operations},
                           {"cic", r.cic},
                           {"tsp", r.tsp},
                           {"gamma", r.gamma},
                           {"source", r.source}});
    }
    return out;
}

}  // namespace

json table2_json(const Table2Report& report) {
    return json{{"two_qubit", table2_rows(report.two_qubit)},
                {"three_qubit", table2_rows(report.three_qubit)}};
}

std::string table2_csv(const Table2Report& report) {
    std::string out = "case,protocol,entanglement,operations,cic,tsp,gamma,source\n";
    auto emit = [&out](const char* label, const std::vector<Table2Row>& rows) {
        for (const Table2Row& r : rows) {
            out += label;
            out += ',' + r.protocol + ',' + r.entanglement + ',' + r.operations + ',';
            out += shortest_decimal(r.cic) + ',' + shortest_decimal(r.tsp) + ',' +
                   shortest_decimal(r.gamma) + ',' + r.source + '\n';
        }
    };
    emit("two-qubit", report.two_qubit);
    emit("three-qubit", report.three_qubit);
    return out;
}

json state_json(const StateVector& state) {
    json qubits = json::array();
    for (QubitId q : state.qubit_register()) {
        qubits.push_back(q.name());
    }
    json amps = json::array();
    for (const Complex& z : state.amplitudes().entries()) {
        amps.push_back(json::array({z.real(), z.imag()}));
    }
    return json{{"qubits", std::move(qubits)}, {"amplitudes", std::move(amps)}};
}

json trace_json(const DesiredStateSpec& desired, const ChannelSpec& channels,
                const std::vector<int>& i_bits, const std::vector<int>& j_bits,
                const BranchRecord& success, const std::vector<StateVector>& states) {
    json out{{"m", desired.m()},
             {"i", bits_string(i_bits)},
             {"j", bits_string(j_bits)},
             {"channel_x", channels.xs()},
             {"recovery", recovery_name(i_bits, j_bits)},
             {"probability", success.probability}};
    out["fidelity"] =
        success.fidelity_to_target ? json(*success.fidelity_to_target) : json(nullptr);
    const char* stage_names[] = {"post_step1_residual", "post_step2", "post_step3",
                                 "post_step4_aux0", "final"};
    json stages = json::object();
    for (std::size_t k = 0; k < states.size() && k < 5; ++k) {
        stages[stage_names[k]] = state_json(states[k]);
    }
    out["states"] = std::move(stages);
    return out;
}

json violation_json(const Violation& violation) {
    return json{{"check", violation.check},
                {"detail", violation.detail},
                {"m", violation.m},
                {"alphas", violation.alphas},
                {"etas", violation.etas},
                {"channel_x", violation.channel_x}};
}

}  // namespace rsp
