#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "entrofunc/errors.hpp"

namespace entrofunc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// The universal norm/entropy value: an exact non-negative quantity of the
/// form  c + sum_i q_i * log(b_i)  with rational coefficients, plus a
/// symbolic infinity and a float fallback for norms that are genuinely
/// irrational (v_p).
///
/// The pure-number summand `c` is the "count" part: set-theoretic norms are
/// cardinalities, not logs, and must stay exact so that shift modules can
/// multiply them by log|K| without rounding.
///
/// Exact values are kept canonical over a pairwise-coprime, power-free base:
/// log 4 and 2*log 2 normalize to the same object, so operator== is exact
/// value equality. Strict ordering of distinct exact values is decided
/// numerically at escalating precision (128 bits by default).
class LogValue {
  public:
    enum class Kind { exact, infinite, approx };

    LogValue() : kind_(Kind::exact) {}

    static LogValue zero() { return LogValue(); }
    static LogValue infinite();
    static LogValue approx(double x);
    /// Pure count: the value q (in units of the symbolic count base).
    static LogValue count(const Rat& q);
    /// q * log(m) for an integer m >= 1.
    static LogValue log_int(const Rat& q, const Int& m);
    /// q * log(a/b) for integers a, b >= 1; may be negative (used for
    /// intermediate differences; norms themselves are non-negative).
    static LogValue log_rat(const Rat& q, const Int& a, const Int& b);

    Kind kind() const { return kind_; }
    bool is_exact() const { return kind_ == Kind::exact; }
    bool is_infinite() const { return kind_ == Kind::infinite; }
    bool is_approx() const { return kind_ == Kind::approx; }
    bool is_zero() const;

    /// True when the value is a pure count c (no log terms); returns c.
    std::optional<Rat> as_pure_count() const;

    LogValue operator+(const LogValue& o) const;
    LogValue operator-(const LogValue& o) const;
    LogValue scaled(const Rat& r) const;

    bool operator==(const LogValue& o) const;
    bool operator!=(const LogValue& o) const { return !(*this == o); }

    /// Total order. Exact-vs-exact equality is symbolic; strict order is
    /// settled numerically, escalating from `precision_bits` up to
    /// `max_precision_bits`, and throws precision_error if still ambiguous.
    std::strong_ordering compare(const LogValue& o, unsigned precision_bits = 128,
                                 unsigned max_precision_bits = 512) const;
    bool operator<(const LogValue& o) const { return compare(o) == std::strong_ordering::less; }
    bool operator<=(const LogValue& o) const { return compare(o) != std::strong_ordering::greater; }
    bool operator>(const LogValue& o) const { return compare(o) == std::strong_ordering::greater; }
    bool operator>=(const LogValue& o) const { return compare(o) != std::strong_ordering::less; }

    double to_double() const;

    /// Divide by log(p); defined when the value is q*log(p^j) (or zero).
    /// Returns the exact rational ratio. Used for dimension-unit entropy.
    std::optional<Rat> div_log(const Int& p) const;

    /// Canonical display form: "0", "inf", "~1.25", "5", "3*log(2)",
    /// "1/4*log(256/27)", "2 + 1/2*log(3)".
    std::string str() const;

    /// Extraction of the (q, m) pair with q rational > 0 and m a rational
    /// number > 1 such that value = q*log(m), for pure-log exact values.
    struct QM {
        Rat q;
        Rat m; // > 1; integral in the common case
    };
    std::optional<QM> as_q_log_m() const;

    const Rat& count_part() const { return count_; }
    const std::map<Int, Rat>& log_terms() const { return logs_; }

  private:
    Kind kind_;
    Rat count_;               // coefficient of the count unit
    std::map<Int, Rat> logs_; // base (>= 2, pairwise coprime, power-free) -> coefficient
    double approx_value_ = 0.0;

    void normalize();
    static void refine_pair(std::map<Int, Rat>& terms);
    double eval_double() const;
};

LogValue min_value(const LogValue& a, const LogValue& b);
LogValue max_value(const LogValue& a, const LogValue& b);

} // namespace entrofunc
