#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entrofunc/estimate.hpp"
#include "entrofunc/log_value.hpp"

namespace entrofunc {

// A normed-semigroup carrier supplies an element type, the binary
// operation, the norm, an equality test and its flag set. Optional members
// picked up when present: leq(a, b) for the preorder, size_bits(a) for the
// resource guard.
template <typename C>
concept Carrier = requires(const C& c, const typename C::element& a, const typename C::element& b) {
    { c.op(a, b) } -> std::convertible_to<typename C::element>;
    { c.norm(a) } -> std::convertible_to<LogValue>;
    { c.equal(a, b) } -> std::convertible_to<bool>;
    { c.flags() } -> std::convertible_to<CarrierFlags>;
};

template <typename C>
concept CarrierWithSizeBits = Carrier<C> && requires(const C& c, const typename C::element& a) {
    { c.size_bits(a) } -> std::convertible_to<unsigned long>;
};

enum class Side { right, left };

struct ExactHint {
    LogValue value;
    std::string certificate;
};

struct TrajectoryLimits {
    unsigned long max_element_bits = 1u << 20; // hard error past this, never a silent float
};

template <Carrier C> struct Flow {
    using element = typename C::element;

    C carrier;
    std::function<element(const element&)> endo;
    bool contractive = false;
    std::optional<std::function<element(const element&)>> endo_inverse;
    TrajectoryLimits limits;

    // Module-provided exact-limit rule for this flow (structured carriers
    // whose trajectory growth admits a proved closed form). Consulted per
    // witness before the generic estimator.
    std::function<std::optional<ExactHint>(const element&, unsigned n_max, unsigned window, Side)> exact_rule;

    // Opt-in cofinality upgrade: the supremum over the whole carrier when
    // the module can certify it (never applied by default).
    std::function<std::optional<std::pair<LogValue, std::string>>()> global_sup_rule;

    std::function<Flow<C>(unsigned)> power_rule; // k -> flow of endo^k, preserving rules

    Flow power(unsigned k) const {
        if (power_rule) return power_rule(k);
        Flow f = *this;
        auto base = endo;
        f.endo = [base, k](const element& x) {
            element y = x;
            for (unsigned i = 0; i < k; ++i) y = base(y);
            return y;
        };
        f.exact_rule = nullptr;
        f.global_sup_rule = nullptr;
        f.power_rule = nullptr;
        return f;
    }
};

template <Carrier C> void check_element_size(const C& carrier, const typename C::element& x, const TrajectoryLimits& lim) {
    if constexpr (CarrierWithSizeBits<C>) {
        if (carrier.size_bits(x) > lim.max_element_bits)
            throw resource_error("trajectory element exceeds the configured bit budget");
    }
}

/// c_n = norm(T_n(phi, x)) for n = 1..n_max. Right side builds
/// x * phi(x) * ... * phi^{n-1}(x); left builds phi^{n-1}(x) * ... * x.
/// Flows flagged contractive are asserted to never raise the norm.
template <Carrier C>
std::vector<LogValue> trajectory_norms(const Flow<C>& flow, const typename C::element& x, unsigned n_max,
                                       Side side = Side::right) {
    if (n_max < 1) throw spec_error("trajectory_norms: n_max must be >= 1");
    std::vector<LogValue> out;
    out.reserve(n_max);
    auto traj = x;   // T_n
    auto power = x;  // phi^{n-1}(x)
    check_element_size(flow.carrier, traj, flow.limits);
    out.push_back(flow.carrier.norm(traj));
    for (unsigned n = 2; n <= n_max; ++n) {
        auto next = flow.endo(power);
        if (flow.contractive) {
            if (flow.carrier.norm(next).compare(flow.carrier.norm(power)) == std::strong_ordering::greater)
                throw spec_error("flow flagged contractive but norm increased along the trajectory");
        }
        power = std::move(next);
        check_element_size(flow.carrier, power, flow.limits);
        traj = side == Side::right ? flow.carrier.op(traj, power) : flow.carrier.op(power, traj);
        check_element_size(flow.carrier, traj, flow.limits);
        out.push_back(flow.carrier.norm(traj));
    }
    return out;
}

/// Detects phi^k(x) = phi^m(x) with m < k <= bound; (k, m) certificate for
/// the vanishing theorem on locally quasi-periodic flows.
template <Carrier C>
std::optional<std::pair<unsigned, unsigned>> detect_quasi_periodic(const Flow<C>& flow, const typename C::element& x,
                                                                   unsigned bound) {
    std::vector<typename C::element> orbit;
    orbit.push_back(x);
    for (unsigned k = 1; k <= bound; ++k) {
        auto y = flow.endo(orbit.back());
        for (unsigned m = 0; m < orbit.size(); ++m)
            if (flow.carrier.equal(orbit[m], y)) return std::make_pair(k, m);
        orbit.push_back(std::move(y));
    }
    return std::nullopt;
}

template <typename Element> struct Witness {
    std::string label;
    Element value;
};

struct WitnessReport {
    std::string label;
    EntropyEstimate estimate;
};

struct EntropyReport {
    EntropyEstimate overall;
    std::vector<WitnessReport> per_witness;
};

template <Carrier C>
EntropyEstimate entropy_at(const Flow<C>& flow, const typename C::element& x, unsigned n_max, unsigned window,
                           Side side = Side::right) {
    const CarrierFlags flags = flow.carrier.flags();
    // Vanishing on (locally) quasi-periodic flows: subadditive arithmetic
    // norm plus a contracting endomorphism force entropy zero at x.
    if (flow.contractive && flags.subadditive && flags.arithmetic) {
        if (auto km = detect_quasi_periodic(flow, x, n_max)) {
            EntropyEstimate est;
            est.c = trajectory_norms(flow, x, n_max, side);
            est.classification = EntropyEstimate::Classification::exact;
            est.value = LogValue::zero();
            est.certificate =
                "quasi-periodic: k=" + std::to_string(km->first) + " m=" + std::to_string(km->second);
            return est;
        }
    }
    if (flow.exact_rule) {
        if (auto hint = flow.exact_rule(x, n_max, window, side)) {
            EntropyEstimate est;
            est.c = trajectory_norms(flow, x, n_max, side);
            est.classification = EntropyEstimate::Classification::exact;
            est.value = hint->value;
            est.certificate = hint->certificate;
            return est;
        }
    }
    auto c = trajectory_norms(flow, x, n_max, side);
    return estimate_entropy(c, flags, window, flow.contractive);
}

namespace detail {

inline bool better_estimate(const EntropyEstimate& a, const EntropyEstimate& b) {
    // prefer larger value; on ties prefer the more definite classification
    auto cmp = a.value.compare(b.value);
    if (cmp != std::strong_ordering::equal) return cmp == std::strong_ordering::greater;
    return static_cast<int>(a.classification) < static_cast<int>(b.classification);
}

} // namespace detail

/// sup over the provided witnesses only; the report stays
/// witness-restricted unless the caller opts into a module-certified
/// cofinality upgrade.
template <Carrier C>
EntropyReport semigroup_entropy(const Flow<C>& flow, const std::vector<Witness<typename C::element>>& witnesses,
                                unsigned n_max, unsigned window, Side side = Side::right,
                                bool cofinality_upgrade = false) {
    if (witnesses.empty()) throw spec_error("semigroup_entropy: witness set must be non-empty");
    EntropyReport report;
    bool first = true;
    for (const auto& w : witnesses) {
        EntropyEstimate est = entropy_at(flow, w.value, n_max, window, side);
        est.witness = w.label;
        if (first || detail::better_estimate(est, report.overall)) {
            report.overall = est;
            first = false;
        }
        report.per_witness.push_back(WitnessReport{w.label, std::move(est)});
    }
    report.overall.witness_restricted = true;
    if (cofinality_upgrade && flow.global_sup_rule) {
        if (auto sup = flow.global_sup_rule()) {
            report.overall.value = sup->first;
            report.overall.classification = EntropyEstimate::Classification::exact;
            report.overall.certificate = sup->second;
            report.overall.witness_restricted = false;
        }
    }
    return report;
}

template <Carrier C>
EntropyReport left_entropy(const Flow<C>& flow, const std::vector<Witness<typename C::element>>& witnesses,
                           unsigned n_max, unsigned window) {
    return semigroup_entropy(flow, witnesses, n_max, window, Side::left);
}

// ---------------------------------------------------------------------------
// Products and coproducts of normed semigroups: same underlying monoid, the
// max-norm for the product and the sum-norm for the coproduct.

template <Carrier C1, Carrier C2, bool Sum> struct PairCarrier {
    using element = std::pair<typename C1::element, typename C2::element>;
    C1 left;
    C2 right;

    element op(const element& a, const element& b) const {
        return {left.op(a.first, b.first), right.op(a.second, b.second)};
    }
    LogValue norm(const element& a) const {
        if constexpr (Sum)
            return left.norm(a.first) + right.norm(a.second);
        else
            return max_value(left.norm(a.first), right.norm(a.second));
    }
    bool equal(const element& a, const element& b) const {
        return left.equal(a.first, b.first) && right.equal(a.second, b.second);
    }
    CarrierFlags flags() const {
        CarrierFlags f1 = left.flags(), f2 = right.flags();
        CarrierFlags f;
        f.subadditive = f1.subadditive && f2.subadditive;
        f.arithmetic = f1.arithmetic && f2.arithmetic;
        f.monotone_norm = f1.monotone_norm && f2.monotone_norm;
        f.d_monotone = f1.d_monotone && f2.d_monotone;
        f.commutative = f1.commutative && f2.commutative;
        f.has_identity = f1.has_identity && f2.has_identity;
        f.structured = f1.structured && f2.structured;
        return f;
    }
};

template <Carrier C1, Carrier C2> using ProductCarrier = PairCarrier<C1, C2, false>;
template <Carrier C1, Carrier C2> using CoproductCarrier = PairCarrier<C1, C2, true>;

namespace detail {

template <bool Sum, Carrier C1, Carrier C2>
Flow<PairCarrier<C1, C2, Sum>> make_pair_flow(const Flow<C1>& f1, const Flow<C2>& f2) {
    using PC = PairCarrier<C1, C2, Sum>;
    Flow<PC> f;
    f.carrier = PC{f1.carrier, f2.carrier};
    auto e1 = f1.endo, e2 = f2.endo;
    f.endo = [e1, e2](const typename PC::element& x) -> typename PC::element {
        return {e1(x.first), e2(x.second)};
    };
    f.contractive = f1.contractive && f2.contractive;
    if (f1.endo_inverse && f2.endo_inverse) {
        auto i1 = *f1.endo_inverse, i2 = *f2.endo_inverse;
        f.endo_inverse = [i1, i2](const typename PC::element& x) -> typename PC::element {
            return {i1(x.first), i2(x.second)};
        };
    }
    // The component estimates combine exactly: max for the product norm,
    // sum for the coproduct norm, provided both classify exact.
    f.exact_rule = [f1, f2](const typename PC::element& x, unsigned n_max, unsigned window,
                            Side side) -> std::optional<ExactHint> {
        EntropyEstimate a = entropy_at(f1, x.first, n_max, window, side);
        EntropyEstimate b = entropy_at(f2, x.second, n_max, window, side);
        if (a.classification != EntropyEstimate::Classification::exact ||
            b.classification != EntropyEstimate::Classification::exact)
            return std::nullopt;
        ExactHint hint;
        hint.value = Sum ? a.value + b.value : max_value(a.value, b.value);
        hint.certificate = std::string(Sum ? "coproduct-sum" : "product-max") + " of component estimates";
        return hint;
    };
    return f;
}

} // namespace detail

template <Carrier C1, Carrier C2> Flow<ProductCarrier<C1, C2>> product_flow(const Flow<C1>& f1, const Flow<C2>& f2) {
    return detail::make_pair_flow<false>(f1, f2);
}

template <Carrier C1, Carrier C2>
Flow<CoproductCarrier<C1, C2>> coproduct_flow(const Flow<C1>& f1, const Flow<C2>& f2) {
    return detail::make_pair_flow<true>(f1, f2);
}

// ---------------------------------------------------------------------------
// Law checks

enum class LawStatus { holds, fails, inapplicable };

struct LawVerdict {
    LawStatus status = LawStatus::inapplicable;
    std::string detail;
    LogValue lhs;
    LogValue rhs;
};

inline LawVerdict compare_exact_sides(const EntropyEstimate& lhs, const EntropyEstimate& rhs,
                                      const std::string& what) {
    LawVerdict v;
    v.lhs = lhs.value;
    v.rhs = rhs.value;
    if (lhs.classification != EntropyEstimate::Classification::exact ||
        rhs.classification != EntropyEstimate::Classification::exact) {
        v.status = LawStatus::inapplicable;
        v.detail = what + ": asserted only when both sides classify exact";
        return v;
    }
    v.status = lhs.value == rhs.value ? LawStatus::holds : LawStatus::fails;
    v.detail = what + ": " + lhs.value.str() + " vs " + rhs.value.str();
    return v;
}

/// Logarithmic Law h(phi^k) = k * h(phi).
template <Carrier C>
LawVerdict check_log_law(const Flow<C>& flow, unsigned k, const std::vector<Witness<typename C::element>>& witnesses,
                         unsigned n_max, unsigned window) {
    if (k == 0) {
        LawVerdict v;
        v.detail = "log_law: k must be positive";
        return v;
    }
    auto powered = flow.power(k);
    EntropyReport lhs = semigroup_entropy(powered, witnesses, n_max, window);
    EntropyReport rhs = semigroup_entropy(flow, witnesses, n_max, window);
    EntropyEstimate scaled = rhs.overall;
    scaled.value = rhs.overall.value.scaled(Rat(static_cast<long>(k)));
    return compare_exact_sides(lhs.overall, scaled, "log_law k=" + std::to_string(k));
}

/// Invariance under conjugation: conjugate flows have identical c_n
/// sequences through a norm-preserving carrier isomorphism.
template <Carrier C1, Carrier C2>
LawVerdict check_conjugation(const Flow<C1>& flow, const Flow<C2>& conj,
                             const std::function<typename C2::element(const typename C1::element&)>& iso,
                             const std::vector<Witness<typename C1::element>>& witnesses, unsigned n_max) {
    LawVerdict v;
    for (const auto& w : witnesses) {
        auto lhs = trajectory_norms(flow, w.value, n_max);
        auto rhs = trajectory_norms(conj, iso(w.value), n_max);
        for (unsigned n = 0; n < n_max; ++n) {
            if (lhs[n] != rhs[n]) {
                v.status = LawStatus::fails;
                v.lhs = lhs[n];
                v.rhs = rhs[n];
                v.detail = "conjugation: c_" + std::to_string(n + 1) + " differs at witness " + w.label;
                return v;
            }
        }
    }
    v.status = LawStatus::holds;
    v.detail = "conjugation: c_n sequences identical on all witnesses";
    return v;
}

/// weak Addition Theorem, product form: h(phi1 x phi2) = max under the
/// max-norm.
template <Carrier C1, Carrier C2>
LawVerdict check_product_max(const Flow<C1>& f1, const Flow<C2>& f2,
                             const std::vector<Witness<typename C1::element>>& w1,
                             const std::vector<Witness<typename C2::element>>& w2, unsigned n_max, unsigned window) {
    auto pf = product_flow(f1, f2);
    std::vector<Witness<typename ProductCarrier<C1, C2>::element>> pw;
    for (const auto& a : w1)
        for (const auto& b : w2) pw.push_back({a.label + "," + b.label, {a.value, b.value}});
    EntropyReport lhs = semigroup_entropy(pf, pw, n_max, window);
    EntropyReport h1 = semigroup_entropy(f1, w1, n_max, window);
    EntropyReport h2 = semigroup_entropy(f2, w2, n_max, window);
    EntropyEstimate rhs = h1.overall;
    if (h1.overall.classification == EntropyEstimate::Classification::exact &&
        h2.overall.classification == EntropyEstimate::Classification::exact)
        rhs.value = max_value(h1.overall.value, h2.overall.value);
    else
        rhs.classification = EntropyEstimate::Classification::numeric;
    return compare_exact_sides(lhs.overall, rhs, "product_max");
}

/// weak Addition Theorem, coproduct form: h(phi1 (+) phi2) = sum under the
/// sum-norm (norm subadditivity required).
template <Carrier C1, Carrier C2>
LawVerdict check_coproduct_sum(const Flow<C1>& f1, const Flow<C2>& f2,
                               const std::vector<Witness<typename C1::element>>& w1,
                               const std::vector<Witness<typename C2::element>>& w2, unsigned n_max,
                               unsigned window) {
    if (!f1.carrier.flags().subadditive || !f2.carrier.flags().subadditive) {
        LawVerdict v;
        v.detail = "coproduct_sum: requires subadditive norms";
        return v;
    }
    auto cf = coproduct_flow(f1, f2);
    std::vector<Witness<typename CoproductCarrier<C1, C2>::element>> cw;
    for (const auto& a : w1)
        for (const auto& b : w2) cw.push_back({a.label + "," + b.label, {a.value, b.value}});
    EntropyReport lhs = semigroup_entropy(cf, cw, n_max, window);
    EntropyReport h1 = semigroup_entropy(f1, w1, n_max, window);
    EntropyReport h2 = semigroup_entropy(f2, w2, n_max, window);
    EntropyEstimate rhs = h1.overall;
    if (h1.overall.classification == EntropyEstimate::Classification::exact &&
        h2.overall.classification == EntropyEstimate::Classification::exact)
        rhs.value = h1.overall.value + h2.overall.value;
    else
        rhs.classification = EntropyEstimate::Classification::numeric;
    return compare_exact_sides(lhs.overall, rhs, "coproduct_sum");
}

/// Invariance under inversion: needs a bijective endomorphism and a
/// commutative carrier.
template <Carrier C>
LawVerdict check_inversion(const Flow<C>& flow, const std::vector<Witness<typename C::element>>& witnesses,
                           unsigned n_max, unsigned window) {
    LawVerdict v;
    if (!flow.endo_inverse) {
        v.detail = "inversion: endomorphism is not invertible";
        return v;
    }
    if (!flow.carrier.flags().commutative) {
        v.detail = "inversion: carrier is not commutative";
        return v;
    }
    Flow<C> inv = flow;
    inv.endo = *flow.endo_inverse;
    inv.endo_inverse = flow.endo;
    inv.exact_rule = nullptr;
    inv.global_sup_rule = nullptr;
    inv.power_rule = nullptr;
    EntropyReport lhs = semigroup_entropy(flow, witnesses, n_max, window);
    EntropyReport rhs = semigroup_entropy(inv, witnesses, n_max, window);
    return compare_exact_sides(lhs.overall, rhs.overall, "inversion");
}

} // namespace entrofunc
