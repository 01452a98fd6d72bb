#pragma once

#include <string>
#include <vector>

#include "rsp/protocol.hpp"

namespace rsp {

// Total success probability 2^m (x_0 x_1 ... x_{m-1})^2.
double tsp_formula(const ChannelSpec& channels);

// Classical information cost in cbits,
// 2^{m+1} (prod x)^2 log2(1 / (prod x)^2); 0 in the prod x -> 0 limit.
double cic(const ChannelSpec& channels);

// Intrinsic efficiency qs / (qq + qc) * tsp.
double intrinsic_efficiency(int qs, int qq, double qc, double tsp);

struct MetricsReport {
    int m = 0;
    double tsp_formula = 0.0;
    double tsp_enumerated = 0.0;
    double cic = 0.0;
    double gamma = 0.0;
    int qs = 0;       // qubits in the desired state
    int qq = 0;       // channel qubits consumed
    double qc = 0.0;  // cbits consumed
};

struct Table2Row {
    std::string protocol;
    std::string entanglement;
    std::string operations;
    double cic = 0.0;
    double tsp = 0.0;
    double gamma = 0.0;
    // "computed" for this scheme's rows, "literature" for cited constants.
    std::string source;
};

struct Table2Report {
    std::vector<Table2Row> two_qubit;
    std::vector<Table2Row> three_qubit;
};

// Comparison table at maximal entanglement: this scheme's rows are computed
// from the formulas, the other rows are reproduced as cited constants.
Table2Report table2_report();

}  // namespace rsp
