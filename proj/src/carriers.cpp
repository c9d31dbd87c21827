#include "entrofunc/carriers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace entrofunc {

LogValue NaturalAddCarrier::norm(const element& x) const {
    if (x < 0) throw spec_error("NaturalAddCarrier: negative element");
    switch (kind) {
        case NormKind::linear: return LogValue::count(Rat(x));
        case NormKind::vl: return LogValue::log_int(1, x + 1);
        case NormKind::vp: {
            double base = static_cast<double>(x);
            double e = static_cast<double>(p);
            return LogValue::approx(std::pow(base, e));
        }
        case NormKind::va: return x % a == 0 ? LogValue::zero() : LogValue::count(Rat(x));
    }
    return LogValue::zero();
}

CarrierFlags NaturalAddCarrier::flags() const {
    CarrierFlags f;
    f.commutative = true;
    f.has_identity = true;
    f.monotone_norm = kind != NormKind::va;
    f.d_monotone = kind != NormKind::va;
    switch (kind) {
        case NormKind::linear:
            f.subadditive = true;
            f.structured = true;
            break;
        case NormKind::vl:
            f.subadditive = true;
            f.arithmetic = true;
            f.structured = true;
            break;
        case NormKind::vp:
            f.subadditive = true;
            break;
        case NormKind::va: break;
    }
    return f;
}

Flow<NaturalAddCarrier> make_rho_flow(NaturalAddCarrier carrier, const Int& b) {
    if (b < 1) throw spec_error("make_rho_flow: multiplier must be >= 1");
    Flow<NaturalAddCarrier> f;
    f.carrier = carrier;
    f.endo = [b](const Int& x) { return b * x; };
    switch (carrier.kind) {
        case NaturalAddCarrier::NormKind::linear:
        case NaturalAddCarrier::NormKind::vl:
        case NaturalAddCarrier::NormKind::vp: f.contractive = b == 1; break;
        case NaturalAddCarrier::NormKind::va: f.contractive = b == 1 || b % carrier.a == 0; break;
    }
    if (b == 1) f.endo_inverse = f.endo;

    // Trajectory elements satisfy T_{n+1} = b*T_n + x exactly, so the v_l
    // slope is log b for b >= 2 (and the linear-norm slope is infinite).
    // The b = 1 case is deliberately left to the Fekete/constant-difference
    // paths: sublinear growth is not detected as exact zero.
    f.exact_rule = [carrier, b](const Int& x, unsigned, unsigned, Side) -> std::optional<ExactHint> {
        if (b < 2 || x == 0) return std::nullopt;
        if (carrier.kind == NaturalAddCarrier::NormKind::vl)
            return ExactHint{LogValue::log_int(1, b), "affine trajectory recurrence T' = " + b.str() + "*T + x"};
        if (carrier.kind == NaturalAddCarrier::NormKind::linear)
            return ExactHint{LogValue::infinite(), "geometric growth under the linear norm"};
        if (carrier.kind == NaturalAddCarrier::NormKind::va && x % carrier.a != 0 && b % carrier.a == 0)
            return ExactHint{LogValue::infinite(), "geometric growth of residues outside a*N"};
        return std::nullopt;
    };
    if (carrier.kind == NaturalAddCarrier::NormKind::linear && b == 1) {
        f.global_sup_rule = []() {
            return std::make_pair(LogValue::infinite(), std::string("norm unbounded over (N, v(x)=x)"));
        };
    }
    f.power_rule = [carrier, b](unsigned k) {
        Int bk = 1;
        for (unsigned i = 0; i < k; ++i) bk *= b;
        return make_rho_flow(carrier, bk);
    };
    return f;
}

FreeSemigroupCarrier::element FreeSemigroupCarrier::op(const element& x, const element& y) const {
    element r = x;
    r.insert(r.end(), y.begin(), y.end());
    return r;
}

LogValue FreeSemigroupCarrier::norm(const element& w) const {
    if (w.empty()) throw spec_error("FreeSemigroupCarrier: empty word");
    if (kind == NormKind::ascent_plus_one) {
        long long s = 0;
        for (size_t i = 0; i + 1 < w.size(); ++i)
            if (w[i] < w[i + 1]) ++s;
        return LogValue::count(Rat(s + 1));
    }
    size_t best = 1, run = 1;
    for (size_t i = 0; i + 1 < w.size(); ++i) {
        run = (w[i + 1] == w[i] + 1) ? run + 1 : 1;
        best = std::max(best, run);
    }
    return LogValue::count(Rat(static_cast<unsigned long>(best)));
}

CarrierFlags FreeSemigroupCarrier::flags() const {
    CarrierFlags f;
    f.subadditive = true; // both norms: s(uv) <= s(u)+s(v)+1, runs can only bridge once
    return f;
}

Flow<FreeSemigroupCarrier> make_free_shift_flow(FreeSemigroupCarrier carrier) {
    Flow<FreeSemigroupCarrier> f;
    f.carrier = carrier;
    f.endo = [](const std::vector<long>& w) {
        std::vector<long> r = w;
        for (auto& i : r) ++i;
        return r;
    };
    f.endo_inverse = [](const std::vector<long>& w) {
        std::vector<long> r = w;
        for (auto& i : r) --i;
        return r;
    };
    f.contractive = true; // the shift preserves both norms
    // For a single generator the right trajectory is the ascending word
    // x_m x_{m+1} ... with norm exactly n, and the left trajectory has norm
    // exactly 1 under both shipped norms.
    f.exact_rule = [](const std::vector<long>& w, unsigned, unsigned, Side side) -> std::optional<ExactHint> {
        if (w.size() != 1) return std::nullopt;
        if (side == Side::right) return ExactHint{LogValue::count(1), "single-generator ascending trajectory"};
        return ExactHint{LogValue::zero(), "single-generator descending trajectory has bounded norm"};
    };
    return f;
}

void FiniteMonoid::validate() const {
    unsigned n = size();
    if (n == 0) throw spec_error("FiniteMonoid: empty");
    if (norms.size() != n) throw spec_error("FiniteMonoid: norm table size mismatch");
    if (identity >= n) throw spec_error("FiniteMonoid: identity out of range");
    for (unsigned i = 0; i < n; ++i) {
        if (table[i].size() != n) throw spec_error("FiniteMonoid: ragged op table");
        for (unsigned j = 0; j < n; ++j)
            if (table[i][j] >= n) throw spec_error("FiniteMonoid: op value out of range");
    }
    for (unsigned i = 0; i < n; ++i)
        if (table[identity][i] != i || table[i][identity] != i)
            throw spec_error("FiniteMonoid: identity laws fail");
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            for (unsigned k = 0; k < n; ++k)
                if (table[table[i][j]][k] != table[i][table[j][k]])
                    throw spec_error("FiniteMonoid: associativity fails");
    if (!norms[identity].is_zero()) throw spec_error("FiniteMonoid: norm of identity must be 0");
}

bool FiniteMonoid::norm_subadditive() const {
    unsigned n = size();
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            if (norms[table[i][j]].compare(norms[i] + norms[j]) == std::strong_ordering::greater) return false;
    return true;
}

LogValue FiniteMonoid::max_norm() const {
    LogValue m = LogValue::zero();
    for (const auto& v : norms) m = max_value(m, v);
    return m;
}

BernoulliMonoidCarrier::element BernoulliMonoidCarrier::trim(element x) const {
    while (!x.empty() && x.back() == monoid.identity) x.pop_back();
    return x;
}

BernoulliMonoidCarrier::element BernoulliMonoidCarrier::singleton(unsigned m) const {
    return trim(element{m});
}

BernoulliMonoidCarrier::element BernoulliMonoidCarrier::op(const element& x, const element& y) const {
    element r(std::max(x.size(), y.size()), monoid.identity);
    for (size_t i = 0; i < r.size(); ++i) {
        unsigned a = i < x.size() ? x[i] : monoid.identity;
        unsigned b = i < y.size() ? y[i] : monoid.identity;
        r[i] = monoid.table[a][b];
    }
    return trim(r);
}

LogValue BernoulliMonoidCarrier::norm(const element& x) const {
    LogValue v = LogValue::zero();
    for (unsigned m : x) v = v + monoid.norms[m];
    return v;
}

CarrierFlags BernoulliMonoidCarrier::flags() const {
    CarrierFlags f;
    f.subadditive = monoid.norm_subadditive();
    f.arithmetic = true; // norms of powers are bounded componentwise in a finite monoid
    f.has_identity = true;
    f.monotone_norm = false;
    f.structured = true;
    bool comm = true;
    for (unsigned i = 0; i < monoid.size() && comm; ++i)
        for (unsigned j = 0; j < monoid.size(); ++j)
            if (monoid.table[i][j] != monoid.table[j][i]) {
                comm = false;
                break;
            }
    f.commutative = comm;
    return f;
}

Flow<BernoulliMonoidCarrier> make_right_bernoulli_flow(const FiniteMonoid& m) {
    m.validate();
    Flow<BernoulliMonoidCarrier> f;
    f.carrier = BernoulliMonoidCarrier{m};
    unsigned id = m.identity;
    f.endo = [id](const std::vector<unsigned>& x) {
        std::vector<unsigned> r;
        r.reserve(x.size() + 1);
        r.push_back(id);
        r.insert(r.end(), x.begin(), x.end());
        return r;
    };
    f.contractive = true; // v_sum is preserved by inserting the identity
    f.global_sup_rule = [m]() {
        return std::make_pair(m.max_norm(), std::string("sup_x v(x) attained on singleton configurations"));
    };
    return f;
}

Flow<BernoulliMonoidCarrier> make_left_bernoulli_flow(const FiniteMonoid& m) {
    m.validate();
    Flow<BernoulliMonoidCarrier> f;
    f.carrier = BernoulliMonoidCarrier{m};
    f.endo = [](const std::vector<unsigned>& x) {
        if (x.empty()) return x;
        return std::vector<unsigned>(x.begin() + 1, x.end());
    };
    f.contractive = true;
    f.global_sup_rule = []() {
        return std::make_pair(LogValue::zero(), std::string("every configuration is eventually erased"));
    };
    return f;
}

FiniteMonoid cyclic_counting_monoid(unsigned m) {
    if (m == 0) throw spec_error("cyclic_counting_monoid: order must be positive");
    FiniteMonoid mon;
    mon.table.assign(m, std::vector<unsigned>(m));
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j) mon.table[i][j] = (i + j) % m;
    mon.norms.resize(m);
    for (unsigned i = 0; i < m; ++i) {
        unsigned ord = m / std::gcd(m, i == 0 ? m : i);
        mon.norms[i] = LogValue::log_int(1, ord);
    }
    mon.identity = 0;
    mon.validate();
    return mon;
}

} // namespace entrofunc
