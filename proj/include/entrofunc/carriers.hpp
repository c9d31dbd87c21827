#pragma once

#include <vector>

#include "entrofunc/trajectory.hpp"

namespace entrofunc {

/// (N, +) with the shipped norms: the linear counting norm v(x) = x, the
/// logarithmic norm v_l(x) = log(x+1), the power norm v_p(x) = x^p (approx
/// by necessity: x^p is irrational) and the residue norm v_a.
struct NaturalAddCarrier {
    enum class NormKind { linear, vl, vp, va };

    using element = Int;

    NormKind kind = NormKind::vl;
    Rat p = Rat(1, 2); // for vp, 0 < p <= 1
    Int a = 2;         // for va, a > 1

    element op(const element& x, const element& y) const { return x + y; }
    bool equal(const element& x, const element& y) const { return x == y; }
    unsigned long size_bits(const element& x) const { return x == 0 ? 1 : static_cast<unsigned long>(msb(x)) + 1; }
    LogValue norm(const element& x) const;
    CarrierFlags flags() const;
};

/// x -> b*x on (N, +). Contractivity depends on the norm: never for b > 1
/// under the linear/v_l/v_p norms, and exactly when a | b under v_a.
Flow<NaturalAddCarrier> make_rho_flow(NaturalAddCarrier carrier, const Int& b);

/// Free semigroup on generators x_i (i in Z) under concatenation, with the
/// ascent norm s(w)+1 or the run norm (longest consecutive ascending
/// subword). The shift automorphism sends x_i to x_{i+1}.
struct FreeSemigroupCarrier {
    enum class NormKind { ascent_plus_one, run };

    using element = std::vector<long>; // generator indices, length >= 1

    NormKind kind = NormKind::run;

    element op(const element& x, const element& y) const;
    bool equal(const element& x, const element& y) const { return x == y; }
    unsigned long size_bits(const element& x) const { return 64 * (x.size() + 1); }
    LogValue norm(const element& w) const;
    CarrierFlags flags() const;
};

Flow<FreeSemigroupCarrier> make_free_shift_flow(FreeSemigroupCarrier carrier);

/// A finite normed monoid given by tables; validated on construction
/// (associativity, identity laws, norm(1) = 0).
struct FiniteMonoid {
    std::vector<std::vector<unsigned>> table; // op
    std::vector<LogValue> norms;
    unsigned identity = 0;

    unsigned size() const { return static_cast<unsigned>(table.size()); }
    void validate() const;
    bool norm_subadditive() const;
    LogValue max_norm() const;
};

/// B(M) = M^(N) with the coproduct (sum) norm; carrier for the Bernoulli
/// shifts of a finite normed monoid.
struct BernoulliMonoidCarrier {
    using element = std::vector<unsigned>; // finitely supported, trailing identities trimmed

    FiniteMonoid monoid;

    element op(const element& x, const element& y) const;
    bool equal(const element& x, const element& y) const { return x == y; }
    unsigned long size_bits(const element& x) const { return 32 * (x.size() + 1); }
    LogValue norm(const element& x) const;
    CarrierFlags flags() const;

    element singleton(unsigned m) const;
    element trim(element x) const;
};

/// The right Bernoulli shift (1, x0, x1, ...); entropy sup_{x in M} v(x).
Flow<BernoulliMonoidCarrier> make_right_bernoulli_flow(const FiniteMonoid& m);
/// The left Bernoulli shift (x1, x2, ...); entropy 0.
Flow<BernoulliMonoidCarrier> make_left_bernoulli_flow(const FiniteMonoid& m);

/// Cyclic group Z_m with the counting norm v(x) = log|<x>|, as a stock
/// finite normed monoid.
FiniteMonoid cyclic_counting_monoid(unsigned m);

} // namespace entrofunc
