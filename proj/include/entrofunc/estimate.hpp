#pragma once

#include <string>
#include <vector>

#include "entrofunc/log_value.hpp"

namespace entrofunc {

struct CarrierFlags {
    bool subadditive = false;
    bool arithmetic = false;
    bool monotone_norm = false;
    bool d_monotone = false;
    bool commutative = false;
    bool has_identity = false;
    // Set for the library's structured carriers (semilattices of finite
    // sets / subgroups / covers and the shipped numeric carriers) where
    // trajectory growth is provably eventually arithmetic. Stabilized-slope
    // detection classifies "exact" there and "exact (heuristic)" elsewhere.
    bool structured = false;
};

struct EntropyEstimate {
    enum class Classification { exact, exact_heuristic, fekete_upper_bound, numeric };

    std::vector<LogValue> c; // c[i] is c_{i+1}, i.e. 1-based trajectory norms
    Classification classification = Classification::numeric;
    LogValue value;
    double window_slope = 0.0;
    double residual = 0.0; // infinity marks the degenerate single-point case
    std::string witness;
    std::string certificate; // nonempty when a module certified the value
    bool witness_restricted = true;

    bool is_exact() const { return classification == Classification::exact; }
    static const char* classification_name(Classification c);
};

/// Classify a trajectory-norm sequence per the estimate contract:
/// stabilized differences -> exact (or exact-heuristic off structured
/// carriers); else the Fekete bound min c_n/n when the norm is subadditive
/// and the flow contractive; else a least-squares slope with residual.
EntropyEstimate estimate_entropy(const std::vector<LogValue>& c, const CarrierFlags& flags,
                                 unsigned window, bool flow_contractive);

/// Running Fekete bounds: element N is min_{n<=N+1} c_n/n.
std::vector<LogValue> fekete_bounds(const std::vector<LogValue>& c);

} // namespace entrofunc
