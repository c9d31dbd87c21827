#include "entrofunc/log_value.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace entrofunc {

namespace mp = boost::multiprecision;

namespace {

Int rat_num(const Rat& r) { return numerator(r); }
Int rat_den(const Rat& r) { return denominator(r); }

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << rat_num(r);
    if (rat_den(r) != 1) os << "/" << rat_den(r);
    return os.str();
}

// Largest k with b = r^k exactly; returns (r, k), k = 1 when b is power-free.
std::pair<Int, unsigned> power_free_root(const Int& b) {
    const unsigned bits = static_cast<unsigned>(msb(b)) + 1;
    for (unsigned k = bits; k >= 2; --k) {
        // binary search the integer k-th root
        Int lo = 1, hi = Int(1) << (bits / k + 1);
        while (lo < hi) {
            Int mid = (lo + hi + 1) / 2;
            Int p = pow(mid, k);
            if (p <= b)
                lo = mid;
            else
                hi = mid - 1;
        }
        if (pow(lo, k) == b) return {lo, k};
    }
    return {b, 1};
}

// gcd of |a| and |b| as non-negative rationals: gcd of numerators over lcm
// of denominators.
Rat rat_content_gcd(const Rat& a, const Rat& b) {
    Int an = abs(rat_num(a)), ad = rat_den(a);
    Int bn = abs(rat_num(b)), bd = rat_den(b);
    Int num = gcd(an, bn);
    Int den = ad / gcd(ad, bd) * bd;
    return Rat(num, den);
}

template <typename Float> Float eval_terms(const Rat& count, const std::map<Int, Rat>& logs) {
    Float acc = static_cast<Float>(rat_num(count)) / static_cast<Float>(rat_den(count));
    for (const auto& [base, coeff] : logs) {
        Float c = static_cast<Float>(rat_num(coeff)) / static_cast<Float>(rat_den(coeff));
        acc += c * log(static_cast<Float>(base));
    }
    return acc;
}

template <typename Float> int eval_sign(const Rat& count, const std::map<Int, Rat>& logs, unsigned precision_bits) {
    Float v = eval_terms<Float>(count, logs);
    Float scale(1);
    for (const auto& [base, coeff] : logs) {
        Float c = static_cast<Float>(abs(rat_num(coeff))) / static_cast<Float>(rat_den(coeff));
        scale += c * log(static_cast<Float>(base));
    }
    Float margin = scale * pow(Float(2), -static_cast<int>(precision_bits / 2));
    if (v > margin) return 1;
    if (v < -margin) return -1;
    return 0; // undecided at this precision
}

} // namespace

LogValue LogValue::infinite() {
    LogValue v;
    v.kind_ = Kind::infinite;
    return v;
}

LogValue LogValue::approx(double x) {
    LogValue v;
    v.kind_ = Kind::approx;
    v.approx_value_ = x;
    return v;
}

LogValue LogValue::count(const Rat& q) {
    LogValue v;
    v.count_ = q;
    return v;
}

LogValue LogValue::log_int(const Rat& q, const Int& m) {
    if (m < 1) throw spec_error("log_int: base must be >= 1");
    LogValue v;
    if (m > 1 && q != 0) v.logs_[m] = q;
    v.normalize();
    return v;
}

LogValue LogValue::log_rat(const Rat& q, const Int& a, const Int& b) {
    if (a < 1 || b < 1) throw spec_error("log_rat: numerator and denominator must be >= 1");
    LogValue v;
    if (a > 1 && q != 0) v.logs_[a] += q;
    if (b > 1 && q != 0) v.logs_[b] -= q;
    v.normalize();
    return v;
}

bool LogValue::is_zero() const {
    return kind_ == Kind::exact && count_ == 0 && logs_.empty();
}

std::optional<Rat> LogValue::as_pure_count() const {
    if (kind_ == Kind::exact && logs_.empty()) return count_;
    return std::nullopt;
}

void LogValue::refine_pair(std::map<Int, Rat>& terms) {
    // Factor refinement: split entries against each other by gcd until the
    // base set is pairwise coprime. log(a) = log(a/g) + log(g).
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = terms.begin(); it != terms.end() && !changed; ++it) {
            auto jt = it;
            for (++jt; jt != terms.end() && !changed; ++jt) {
                Int g = gcd(it->first, jt->first);
                if (g == 1) continue;
                Int a = it->first, b = jt->first;
                Rat ca = it->second, cb = jt->second;
                terms.erase(a);
                terms.erase(b);
                if (a / g > 1) terms[a / g] += ca;
                if (b / g > 1) terms[b / g] += cb;
                terms[g] += ca + cb;
                changed = true;
            }
        }
    }
}

void LogValue::normalize() {
    if (kind_ != Kind::exact) return;
    for (auto it = logs_.begin(); it != logs_.end();) {
        if (it->first <= 1 || it->second == 0)
            it = logs_.erase(it);
        else
            ++it;
    }
    refine_pair(logs_);
    // Power-free reduction: base r^k becomes base r with coefficient k*c.
    std::map<Int, Rat> reduced;
    for (const auto& [base, coeff] : logs_) {
        auto [root, k] = power_free_root(base);
        reduced[root] += coeff * k;
    }
    for (auto it = reduced.begin(); it != reduced.end();) {
        if (it->second == 0)
            it = reduced.erase(it);
        else
            ++it;
    }
    logs_ = std::move(reduced);
}

LogValue LogValue::operator+(const LogValue& o) const {
    if (kind_ == Kind::infinite || o.kind_ == Kind::infinite) return infinite();
    if (kind_ == Kind::approx || o.kind_ == Kind::approx) return approx(to_double() + o.to_double());
    LogValue r = *this;
    r.count_ += o.count_;
    for (const auto& [base, coeff] : o.logs_) r.logs_[base] += coeff;
    r.normalize();
    return r;
}

LogValue LogValue::operator-(const LogValue& o) const {
    if (kind_ == Kind::infinite && o.kind_ != Kind::infinite) return infinite();
    if (kind_ == Kind::approx || o.kind_ == Kind::approx) return approx(to_double() - o.to_double());
    if (kind_ == Kind::infinite || o.kind_ == Kind::infinite)
        throw spec_error("LogValue: cannot subtract infinite values");
    LogValue r = *this;
    r.count_ -= o.count_;
    for (const auto& [base, coeff] : o.logs_) r.logs_[base] -= coeff;
    r.normalize();
    return r;
}

LogValue LogValue::scaled(const Rat& s) const {
    if (kind_ == Kind::infinite) {
        if (s == 0) return zero();
        if (s < 0) throw spec_error("LogValue: negative scale of infinite value");
        return infinite();
    }
    if (kind_ == Kind::approx) return approx(to_double() * static_cast<double>(s));
    LogValue r = *this;
    r.count_ *= s;
    for (auto& [base, coeff] : r.logs_) {
        (void)base;
        coeff *= s;
    }
    r.normalize();
    return r;
}

bool LogValue::operator==(const LogValue& o) const {
    if (kind_ != o.kind_) {
        // exact zero vs approx 0.0 and similar cross-kind checks go through
        // compare(); == is reserved for same-kind canonical equality.
        return false;
    }
    switch (kind_) {
        case Kind::infinite: return true;
        case Kind::approx: return approx_value_ == o.approx_value_;
        case Kind::exact:
            if (count_ == o.count_ && logs_ == o.logs_) return true;
            // bases produced by different routes (log 12 vs 2log2 + log3)
            // only interact under joint refinement
            return (*this - o).is_zero();
    }
    return false;
}

std::strong_ordering LogValue::compare(const LogValue& o, unsigned precision_bits,
                                       unsigned max_precision_bits) const {
    if (kind_ == Kind::infinite && o.kind_ == Kind::infinite) return std::strong_ordering::equal;
    if (kind_ == Kind::infinite) return std::strong_ordering::greater;
    if (o.kind_ == Kind::infinite) return std::strong_ordering::less;
    if (kind_ == Kind::approx || o.kind_ == Kind::approx) {
        double a = to_double(), b = o.to_double();
        if (a < b) return std::strong_ordering::less;
        if (a > b) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    // exact vs exact: symbolic equality first, then numeric sign of the
    // difference. Distinct canonical forms denote distinct reals (logs of
    // pairwise coprime integers and the count unit are rationally
    // independent), so escalation terminates for honest inputs.
    LogValue d = *this - o;
    if (d.is_zero()) return std::strong_ordering::equal;
    using f128 = mp::number<mp::cpp_bin_float<128, mp::digit_base_2>>;
    using f256 = mp::number<mp::cpp_bin_float<256, mp::digit_base_2>>;
    using f512 = mp::number<mp::cpp_bin_float<512, mp::digit_base_2>>;
    for (unsigned p = precision_bits; p <= max_precision_bits; p *= 2) {
        int s = 0;
        if (p <= 128)
            s = eval_sign<f128>(d.count_, d.logs_, 128);
        else if (p <= 256)
            s = eval_sign<f256>(d.count_, d.logs_, 256);
        else
            s = eval_sign<f512>(d.count_, d.logs_, 512);
        if (s > 0) return std::strong_ordering::greater;
        if (s < 0) return std::strong_ordering::less;
    }
    throw precision_error("LogValue comparison undecided at " + std::to_string(max_precision_bits) +
                          " bits: " + str() + " vs " + o.str());
}

double LogValue::eval_double() const {
    using f128 = mp::number<mp::cpp_bin_float<128, mp::digit_base_2>>;
    return static_cast<double>(eval_terms<f128>(count_, logs_));
}

double LogValue::to_double() const {
    switch (kind_) {
        case Kind::infinite: return std::numeric_limits<double>::infinity();
        case Kind::approx: return approx_value_;
        case Kind::exact: return eval_double();
    }
    return 0.0;
}

std::optional<Rat> LogValue::div_log(const Int& p) const {
    if (kind_ != Kind::exact) return std::nullopt;
    if (p < 2) return std::nullopt;
    if (count_ != 0) return std::nullopt;
    if (logs_.empty()) return Rat(0);
    auto [root, k] = power_free_root(p);
    if (logs_.size() != 1) return std::nullopt;
    const auto& [base, coeff] = *logs_.begin();
    if (base != root) return std::nullopt;
    return coeff / k;
}

std::optional<LogValue::QM> LogValue::as_q_log_m() const {
    if (kind_ != Kind::exact || count_ != 0 || logs_.empty()) return std::nullopt;
    Rat content(0);
    for (const auto& [base, coeff] : logs_) {
        (void)base;
        content = (content == 0) ? abs(coeff) : rat_content_gcd(content, coeff);
    }
    Int exp_gcd = 0;
    std::map<Int, Int> exps;
    for (const auto& [base, coeff] : logs_) {
        Rat e = coeff / content;
        if (rat_den(e) != 1) return std::nullopt; // cannot happen by construction
        exps[base] = rat_num(e);
        exp_gcd = gcd(exp_gcd, abs(rat_num(e)));
    }
    Rat q = content * exp_gcd;
    Rat m(1);
    for (const auto& [base, e] : exps) {
        Int ee = e / exp_gcd;
        if (ee > 0)
            m *= Rat(pow(base, static_cast<unsigned>(ee)));
        else
            m /= Rat(pow(base, static_cast<unsigned>(-ee)));
    }
    if (rat_num(m) <= rat_den(m)) return std::nullopt; // m must exceed 1 for q > 0
    return QM{q, m};
}

std::string LogValue::str() const {
    switch (kind_) {
        case Kind::infinite: return "inf";
        case Kind::approx: {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "~%.12g", approx_value_);
            return buf;
        }
        case Kind::exact: break;
    }
    if (is_zero()) return "0";
    std::ostringstream os;
    bool lead = true;
    if (count_ != 0) {
        os << rat_str(count_);
        lead = false;
    }
    if (!logs_.empty()) {
        if (count_ == 0) {
            if (auto qm = as_q_log_m()) {
                if (qm->q != 1) os << rat_str(qm->q) << "*";
                os << "log(" << rat_str(qm->m) << ")";
                return os.str();
            }
        }
        for (const auto& [base, coeff] : logs_) {
            Rat c = coeff;
            if (!lead) {
                os << (c < 0 ? " - " : " + ");
                c = abs(c);
            }
            if (c != 1) os << rat_str(c) << "*";
            os << "log(" << base << ")";
            lead = false;
        }
    }
    return os.str();
}

LogValue min_value(const LogValue& a, const LogValue& b) { return a.compare(b) == std::strong_ordering::greater ? b : a; }
LogValue max_value(const LogValue& a, const LogValue& b) { return a.compare(b) == std::strong_ordering::less ? b : a; }

} // namespace entrofunc
