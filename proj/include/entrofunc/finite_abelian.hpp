#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "entrofunc/estimate.hpp"
#include "entrofunc/log_value.hpp"

namespace entrofunc {

using Mat = std::vector<std::vector<Int>>; // row-major

/// Finite abelian group in invariant-factor form d_1 | d_2 | ... | d_k,
/// every d_i >= 2. Elements are coordinate vectors with 0 <= x_i < d_i.
/// The dual group is identified with the group itself through the pairing
/// <x, y> = sum_i x_i y_i / d_i mod 1.
class FiniteAbelianGroup {
  public:
    FiniteAbelianGroup() = default;
    explicit FiniteAbelianGroup(std::vector<Int> invariant_factors, unsigned max_factor_bits = 64);

    /// Canonicalize an arbitrary multiset of cyclic orders into invariant
    /// factors (prime-power regrouping), e.g. {4, 2, 3} -> (2, 12).
    static FiniteAbelianGroup from_cyclic_orders(const std::vector<Int>& orders);

    /// Parse "Z4xZ2" style strings. The written coordinate order must be a
    /// permutation of the invariant-factor chain; `perm` maps written
    /// coordinate i to its canonical position.
    static FiniteAbelianGroup parse(const std::string& text, std::vector<unsigned>* perm = nullptr);

    unsigned rank() const { return static_cast<unsigned>(d_.size()); }
    const Int& factor(unsigned i) const { return d_[i]; }
    const std::vector<Int>& factors() const { return d_; }
    Int order() const;
    bool trivial() const { return d_.empty(); }
    std::string str() const;
    bool operator==(const FiniteAbelianGroup& o) const { return d_ == o.d_; }

    std::vector<Int> reduce(std::vector<Int> x) const;
    std::vector<Int> zero() const { return std::vector<Int>(d_.size(), 0); }
    std::vector<Int> add(const std::vector<Int>& x, const std::vector<Int>& y) const;

    /// <x, y> as an exact rational in [0, 1).
    Rat pairing(const std::vector<Int>& x, const std::vector<Int>& y) const;

    /// All elements; guarded by a hard cap since this is oracle machinery.
    std::vector<std::vector<Int>> enumerate(const Int& cap = 4096) const;

  private:
    std::vector<Int> d_;
};

/// Subgroup of a finite abelian group, held as the column-style Hermite
/// normal form of [generators | diag(d)]: lower triangular, positive
/// pivots, entries left of each pivot reduced modulo it. The canonical
/// matrix is unique per subgroup, so equality is matrix equality.
class Subgroup {
  public:
    Subgroup() = default;

    static Subgroup from_generators(const FiniteAbelianGroup& g, const std::vector<std::vector<Int>>& gens);
    static Subgroup zero_subgroup(const FiniteAbelianGroup& g);
    static Subgroup full_subgroup(const FiniteAbelianGroup& g);

    const FiniteAbelianGroup& group() const { return group_; }
    const Mat& hnf() const { return h_; }
    Int order() const { return order_; }
    Int index() const { return index_; }

    bool contains(const std::vector<Int>& x) const;
    bool operator==(const Subgroup& o) const { return group_ == o.group_ && h_ == o.h_; }
    bool subset_of(const Subgroup& o) const;

    /// Stable byte layout of the canonical matrix, for hashing and reports.
    std::string key() const;

    std::vector<std::vector<Int>> generator_columns() const;
    std::vector<std::vector<Int>> elements(const Int& cap = 4096) const;

  private:
    FiniteAbelianGroup group_;
    Mat h_;
    Int order_ = 1, index_ = 1;
};

Subgroup subgroup_sum(const Subgroup& a, const Subgroup& b);
/// Meet through the duality layer: (N1^perp + N2^perp)^top.
Subgroup subgroup_meet(const Subgroup& a, const Subgroup& b);

/// Annihilator N^perp in the dual group (the dual is the group itself
/// under the standard pairing); solves the congruence system by Smith
/// normal form. co_annihilator is the same construction read backwards.
Subgroup annihilator(const Subgroup& n);
Subgroup co_annihilator(const Subgroup& b);

/// Endomorphism given by an integer matrix A (column j describes the image
/// of the j-th canonical generator); well-definedness requires
/// (d_i / gcd(d_i, d_j)) | A_ij.
class Endomorphism {
  public:
    Endomorphism() = default;
    Endomorphism(const FiniteAbelianGroup& g, Mat a);

    static Endomorphism identity(const FiniteAbelianGroup& g);
    static Endomorphism multiplication(const FiniteAbelianGroup& g, const Int& m);

    const FiniteAbelianGroup& group() const { return group_; }
    const Mat& matrix() const { return a_; }

    std::vector<Int> apply(const std::vector<Int>& x) const;
    Subgroup image_of(const Subgroup& n) const;
    Subgroup preimage_of(const Subgroup& n) const;

    Endomorphism compose(const Endomorphism& o) const; // this after o
    bool operator==(const Endomorphism& o) const { return group_ == o.group_ && a_ == o.a_; }

    /// Dual endomorphism: <Ax, y> = <x, By> for all x, y.
    Endomorphism dual() const;

  private:
    FiniteAbelianGroup group_;
    Mat a_; // rows reduced mod d_i
    void validate() const;
};

// ---------------------------------------------------------------------------
// Entropies on finite carriers

struct QuasiPeriodCertificate {
    unsigned k = 0, m = 0; // phi^k = phi^m, k > m
};

/// ent of an endomorphism of a finite group: always exact zero, certified
/// by an explicit matrix-power collision.
struct FiniteEntResult {
    EntropyEstimate estimate;
    QuasiPeriodCertificate certificate;
};
FiniteEntResult ent_finite(const Endomorphism& phi, unsigned power_cap = 100000);
FiniteEntResult ent_star_finite(const Endomorphism& phi, unsigned power_cap = 100000);

/// Dimension-unit entropy on an elementary abelian p-group: ent / log p.
struct EntDimResult {
    Rat value;
    Int prime;
    QuasiPeriodCertificate certificate;
};
EntDimResult ent_dim(const Endomorphism& phi);

/// dim norm log_p |N| of a subgroup of an elementary abelian p-group.
Rat dim_norm(const Subgroup& n);

// ---------------------------------------------------------------------------
// Weiss bridge, per-step form

struct WeissBridgeReport {
    std::vector<Int> cotrajectory_indices; // [G : C_n(phi, N)]
    std::vector<Int> dual_orders;          // |T_n(dual phi, N^perp)|
    bool pass = false;
    int first_mismatch = -1; // 1-based n, or -1
};

/// [G : C_n(phi, N)] = |T_n(phi^, N^perp)| for n = 1..n_max; exact integer
/// comparison, hard failure with the witnessing n.
WeissBridgeReport bridge_check_weiss(const Endomorphism& phi, const Subgroup& n, unsigned n_max);

/// Cotrajectory C_n and dual trajectory T_n, exposed for the bridge suite.
std::vector<Subgroup> cotrajectory(const Endomorphism& phi, const Subgroup& n, unsigned n_max);
std::vector<Subgroup> sum_trajectory(const Endomorphism& phi, const Subgroup& n, unsigned n_max);

// ---------------------------------------------------------------------------
// Random instances and enumeration oracles (test and acceptance machinery)

FiniteAbelianGroup random_group(std::mt19937_64& rng, const Int& max_order);
Endomorphism random_endomorphism(std::mt19937_64& rng, const FiniteAbelianGroup& g);
Subgroup random_subgroup(std::mt19937_64& rng, const FiniteAbelianGroup& g);

/// Brute-force annihilator by scanning all dual elements; independent of
/// the SNF route.
Subgroup annihilator_oracle(const Subgroup& n);

// integer-matrix helpers shared with the shift module
Mat column_hnf(Mat m, unsigned rows);
std::vector<std::vector<Int>> integer_kernel(const Mat& m);

} // namespace entrofunc
