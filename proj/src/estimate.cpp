#include "entrofunc/estimate.hpp"

#include <cmath>
#include <limits>

namespace entrofunc {

const char* EntropyEstimate::classification_name(Classification c) {
    switch (c) {
        case Classification::exact: return "exact";
        case Classification::exact_heuristic: return "exact (heuristic)";
        case Classification::fekete_upper_bound: return "fekete_upper_bound";
        case Classification::numeric: return "numeric";
    }
    return "?";
}

std::vector<LogValue> fekete_bounds(const std::vector<LogValue>& c) {
    std::vector<LogValue> out;
    out.reserve(c.size());
    for (size_t i = 0; i < c.size(); ++i) {
        LogValue ratio = c[i].scaled(Rat(1, static_cast<long>(i + 1)));
        out.push_back(out.empty() ? ratio : min_value(out.back(), ratio));
    }
    return out;
}

EntropyEstimate estimate_entropy(const std::vector<LogValue>& c, const CarrierFlags& flags,
                                 unsigned window, bool flow_contractive) {
    if (c.empty()) throw spec_error("estimate_entropy: empty sequence");
    EntropyEstimate est;
    est.c = c;

    if (c.size() == 1) {
        est.classification = EntropyEstimate::Classification::numeric;
        est.value = LogValue::approx(c[0].to_double());
        est.window_slope = c[0].to_double();
        est.residual = std::numeric_limits<double>::infinity();
        return est;
    }

    for (const auto& v : c) {
        if (v.is_infinite()) {
            est.classification = EntropyEstimate::Classification::exact;
            est.value = LogValue::infinite();
            return est;
        }
    }

    // Stabilized slope: the last `window` consecutive differences identical
    // as exact values.
    bool all_exact = true;
    for (const auto& v : c)
        if (!v.is_exact()) all_exact = false;
    if (all_exact && c.size() >= window + 1) {
        LogValue d = c[c.size() - 1] - c[c.size() - 2];
        bool stable = true;
        for (size_t i = c.size() - window; i + 1 < c.size(); ++i) {
            if (c[i] - c[i - 1] != d) {
                stable = false;
                break;
            }
        }
        if (stable) {
            est.classification = flags.structured ? EntropyEstimate::Classification::exact
                                                  : EntropyEstimate::Classification::exact_heuristic;
            est.value = d;
            return est;
        }
    }

    // Fekete: the trajectory-norm sequence is subadditive only when the
    // norm is subadditive and the endomorphism contractive, so both gate
    // the upper bound.
    if (flags.subadditive && flow_contractive) {
        est.classification = EntropyEstimate::Classification::fekete_upper_bound;
        est.value = fekete_bounds(c).back();
        return est;
    }

    // Least-squares slope over the last half of the sequence.
    size_t lo = c.size() / 2;
    size_t n = c.size() - lo;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = lo; i < c.size(); ++i) {
        double x = static_cast<double>(i + 1), y = c[i].to_double();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = n * sxx - sx * sx;
    double slope = denom != 0 ? (n * sxy - sx * sy) / denom : 0.0;
    double intercept = (sy - slope * sx) / n;
    double ss = 0;
    for (size_t i = lo; i < c.size(); ++i) {
        double x = static_cast<double>(i + 1), y = c[i].to_double();
        double e = y - (slope * x + intercept);
        ss += e * e;
    }
    est.classification = EntropyEstimate::Classification::numeric;
    est.window_slope = slope;
    est.residual = std::sqrt(ss / n);
    est.value = LogValue::approx(slope);
    return est;
}

} // namespace entrofunc
