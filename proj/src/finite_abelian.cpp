#include "entrofunc/finite_abelian.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace entrofunc {

namespace {

Int lcm_int(const Int& a, const Int& b) { return a / gcd(a, b) * b; }

// prime factorization by trial division; group orders are small by policy
std::map<Int, unsigned> factorize(Int n) {
    std::map<Int, unsigned> f;
    for (Int p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            ++f[p];
            n /= p;
        }
    if (n > 1) ++f[n];
    return f;
}

} // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<Int> invariant_factors, unsigned max_factor_bits)
    : d_(std::move(invariant_factors)) {
    for (size_t i = 0; i < d_.size(); ++i) {
        if (d_[i] < 2) throw spec_error("FiniteAbelianGroup: invariant factors must be >= 2");
        if (msb(d_[i]) + 1 > max_factor_bits)
            throw resource_error("FiniteAbelianGroup: invariant factor exceeds the configured bit cap");
        if (i > 0 && d_[i] % d_[i - 1] != 0)
            throw spec_error("FiniteAbelianGroup: divisibility chain broken at position " + std::to_string(i));
    }
}

FiniteAbelianGroup FiniteAbelianGroup::from_cyclic_orders(const std::vector<Int>& orders) {
    // regroup prime powers: the largest invariant factor collects the top
    // power of every prime, and so on down
    std::map<Int, std::vector<unsigned>> by_prime;
    for (const Int& o : orders) {
        if (o < 1) throw spec_error("from_cyclic_orders: orders must be positive");
        for (const auto& [p, e] : factorize(o)) by_prime[p].push_back(e);
    }
    size_t slots = 0;
    for (auto& [p, es] : by_prime) {
        std::sort(es.begin(), es.end(), std::greater<>());
        slots = std::max(slots, es.size());
    }
    std::vector<Int> d(slots, 1);
    for (const auto& [p, es] : by_prime)
        for (size_t i = 0; i < es.size(); ++i) {
            Int pe = 1;
            for (unsigned t = 0; t < es[i]; ++t) pe *= p;
            d[i] *= pe; // slot 0 is the largest factor
        }
    std::reverse(d.begin(), d.end());
    while (!d.empty() && d.front() == 1) d.erase(d.begin());
    return FiniteAbelianGroup(std::move(d));
}

FiniteAbelianGroup FiniteAbelianGroup::parse(const std::string& text, std::vector<unsigned>* perm) {
    std::vector<Int> written;
    size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] != 'Z' && text[pos] != 'z') throw spec_error("group spec: expected Z<d> at " + text);
        size_t end = pos + 1;
        while (end < text.size() && isdigit(static_cast<unsigned char>(text[end]))) ++end;
        if (end == pos + 1) throw spec_error("group spec: missing order in " + text);
        written.push_back(Int(text.substr(pos + 1, end - pos - 1)));
        if (end < text.size()) {
            if (text[end] != 'x' && text[end] != 'X') throw spec_error("group spec: expected x separator in " + text);
            ++end;
        }
        pos = end;
    }
    // the written list must already be a permutation of a divisibility
    // chain; we only reorder, never change the coordinate system
    std::vector<unsigned> order(written.size());
    for (unsigned i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](unsigned a, unsigned b) { return written[a] < written[b]; });
    std::vector<Int> sorted;
    for (unsigned i : order) sorted.push_back(written[i]);
    for (size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] % sorted[i - 1] != 0)
            throw spec_error("group spec: factors of " + text +
                             " do not form a divisibility chain; give invariant factors");
    if (perm) {
        perm->assign(written.size(), 0);
        for (unsigned rank = 0; rank < order.size(); ++rank) (*perm)[order[rank]] = rank;
    }
    return FiniteAbelianGroup(std::move(sorted));
}

Int FiniteAbelianGroup::order() const {
    Int o = 1;
    for (const Int& d : d_) o *= d;
    return o;
}

std::string FiniteAbelianGroup::str() const {
    if (d_.empty()) return "Z1";
    std::ostringstream os;
    for (size_t i = 0; i < d_.size(); ++i) {
        if (i) os << "x";
        os << "Z" << d_[i];
    }
    return os.str();
}

std::vector<Int> FiniteAbelianGroup::reduce(std::vector<Int> x) const {
    if (x.size() != d_.size()) throw spec_error("element rank mismatch");
    for (size_t i = 0; i < x.size(); ++i) {
        x[i] %= d_[i];
        if (x[i] < 0) x[i] += d_[i];
    }
    return x;
}

std::vector<Int> FiniteAbelianGroup::add(const std::vector<Int>& x, const std::vector<Int>& y) const {
    std::vector<Int> r(d_.size());
    for (size_t i = 0; i < d_.size(); ++i) r[i] = (x[i] + y[i]) % d_[i];
    return r;
}

Rat FiniteAbelianGroup::pairing(const std::vector<Int>& x, const std::vector<Int>& y) const {
    Rat s(0);
    for (size_t i = 0; i < d_.size(); ++i) s += Rat(x[i] * y[i], d_[i]);
    Int whole = numerator(s) / denominator(s);
    s -= whole;
    if (s < 0) s += 1;
    return s;
}

std::vector<std::vector<Int>> FiniteAbelianGroup::enumerate(const Int& cap) const {
    if (order() > cap) throw resource_error("enumerate: group order exceeds cap " + cap.str());
    std::vector<std::vector<Int>> out{zero()};
    for (size_t i = 0; i < d_.size(); ++i) {
        std::vector<std::vector<Int>> next;
        for (const auto& x : out)
            for (Int v = 0; v < d_[i]; ++v) {
                auto y = x;
                y[i] = v;
                next.push_back(std::move(y));
            }
        out = std::move(next);
    }
    return out;
}

// ---------------------------------------------------------------------------
// integer-matrix routines

Mat column_hnf(Mat m, unsigned rows) {
    if (m.empty()) return m;
    unsigned cols = static_cast<unsigned>(m[0].size());
    unsigned pivot_col = 0;
    for (unsigned i = 0; i < rows && pivot_col < cols; ++i) {
        // clear row i to the right of pivot_col by gcd column operations
        for (unsigned j = pivot_col + 1; j < cols; ++j) {
            while (m[i][j] != 0) {
                if (m[i][pivot_col] == 0) {
                    for (unsigned r = 0; r < rows; ++r) std::swap(m[r][pivot_col], m[r][j]);
                    continue;
                }
                Int q = m[i][j] / m[i][pivot_col];
                for (unsigned r = 0; r < rows; ++r) m[r][j] -= q * m[r][pivot_col];
                if (m[i][j] != 0)
                    for (unsigned r = 0; r < rows; ++r) std::swap(m[r][pivot_col], m[r][j]);
            }
        }
        if (m[i][pivot_col] == 0) continue; // row of zeros beyond: no pivot on this row
        if (m[i][pivot_col] < 0)
            for (unsigned r = 0; r < rows; ++r) m[r][pivot_col] = -m[r][pivot_col];
        // reduce the columns left of the pivot
        for (unsigned j = 0; j < pivot_col; ++j) {
            Int q = m[i][j] / m[i][pivot_col];
            if (m[i][j] % m[i][pivot_col] < 0) q -= 1;
            if (q != 0)
                for (unsigned r = 0; r < rows; ++r) m[r][j] -= q * m[r][pivot_col];
        }
        ++pivot_col;
    }
    return m;
}

std::vector<std::vector<Int>> integer_kernel(const Mat& m) {
    if (m.empty()) return {};
    unsigned rows = static_cast<unsigned>(m.size());
    unsigned cols = static_cast<unsigned>(m[0].size());
    // column-reduce [M; I]: kernel basis = columns whose M-part vanished
    Mat work(rows + cols, std::vector<Int>(cols, 0));
    for (unsigned r = 0; r < rows; ++r) work[r] = m[r];
    for (unsigned c = 0; c < cols; ++c) work[rows + c][c] = 1;

    unsigned pivot_col = 0;
    for (unsigned i = 0; i < rows && pivot_col < cols; ++i) {
        for (unsigned j = pivot_col + 1; j < cols; ++j) {
            while (work[i][j] != 0) {
                if (work[i][pivot_col] == 0) {
                    for (unsigned r = 0; r < rows + cols; ++r) std::swap(work[r][pivot_col], work[r][j]);
                    continue;
                }
                Int q = work[i][j] / work[i][pivot_col];
                for (unsigned r = 0; r < rows + cols; ++r) work[r][j] -= q * work[r][pivot_col];
                if (work[i][j] != 0)
                    for (unsigned r = 0; r < rows + cols; ++r) std::swap(work[r][pivot_col], work[r][j]);
            }
        }
        if (work[i][pivot_col] != 0) ++pivot_col;
    }
    std::vector<std::vector<Int>> basis;
    for (unsigned j = pivot_col; j < cols; ++j) {
        std::vector<Int> v(cols);
        bool zero_top = true;
        for (unsigned r = 0; r < rows && zero_top; ++r) zero_top = work[r][j] == 0;
        if (!zero_top) continue;
        for (unsigned c = 0; c < cols; ++c) v[c] = work[rows + c][j];
        basis.push_back(std::move(v));
    }
    return basis;
}

namespace {

// Smith normal form S = U M V; only V (column transforms) is tracked.
void smith_normal_form(Mat& m, Mat& v) {
    unsigned rows = static_cast<unsigned>(m.size());
    unsigned cols = rows ? static_cast<unsigned>(m[0].size()) : 0;
    v.assign(cols, std::vector<Int>(cols, 0));
    for (unsigned c = 0; c < cols; ++c) v[c][c] = 1;

    auto col_sub = [&](unsigned dst, unsigned src, const Int& q) {
        for (unsigned r = 0; r < rows; ++r) m[r][dst] -= q * m[r][src];
        for (unsigned r = 0; r < cols; ++r) v[r][dst] -= q * v[r][src];
    };
    auto col_swap = [&](unsigned a, unsigned b) {
        for (unsigned r = 0; r < rows; ++r) std::swap(m[r][a], m[r][b]);
        for (unsigned r = 0; r < cols; ++r) std::swap(v[r][a], v[r][b]);
    };
    auto row_sub = [&](unsigned dst, unsigned src, const Int& q) {
        for (unsigned c = 0; c < cols; ++c) m[dst][c] -= q * m[src][c];
    };

    unsigned t = std::min(rows, cols);
    for (unsigned k = 0; k < t; ++k) {
        // move a nonzero entry of minimal magnitude into (k, k)
        while (true) {
            unsigned br = k, bc = k;
            Int best = 0;
            for (unsigned r = k; r < rows; ++r)
                for (unsigned c = k; c < cols; ++c)
                    if (m[r][c] != 0 && (best == 0 || abs(m[r][c]) < abs(best))) {
                        best = m[r][c];
                        br = r;
                        bc = c;
                    }
            if (best == 0) return;
            if (br != k) std::swap(m[br], m[k]);
            if (bc != k) col_swap(bc, k);
            bool clean = true;
            for (unsigned r = k + 1; r < rows; ++r)
                if (m[r][k] != 0) {
                    row_sub(r, k, m[r][k] / m[k][k]);
                    if (m[r][k] != 0) clean = false;
                }
            for (unsigned c = k + 1; c < cols; ++c)
                if (m[k][c] != 0) {
                    col_sub(c, k, m[k][c] / m[k][k]);
                    if (m[k][c] != 0) clean = false;
                }
            bool zeroed = true;
            for (unsigned r = k + 1; r < rows && zeroed; ++r) zeroed = m[r][k] == 0;
            for (unsigned c = k + 1; c < cols && zeroed; ++c) zeroed = m[k][c] == 0;
            if (clean && zeroed) break;
        }
        if (m[k][k] < 0) {
            for (unsigned r = 0; r < rows; ++r) m[r][k] = -m[r][k]; // keep as row? column negate
            for (unsigned r = 0; r < cols; ++r) v[r][k] = -v[r][k];
        }
    }
}

} // namespace

// ---------------------------------------------------------------------------
// Subgroup

Subgroup Subgroup::from_generators(const FiniteAbelianGroup& g, const std::vector<std::vector<Int>>& gens) {
    unsigned k = g.rank();
    Subgroup n;
    n.group_ = g;
    if (k == 0) {
        n.order_ = n.index_ = 1;
        return n;
    }
    Mat m(k, std::vector<Int>(gens.size() + k, 0));
    for (size_t j = 0; j < gens.size(); ++j) {
        if (gens[j].size() != k) throw spec_error("Subgroup: generator rank mismatch");
        for (unsigned i = 0; i < k; ++i) m[i][j] = gens[j][i];
    }
    for (unsigned i = 0; i < k; ++i) m[i][gens.size() + i] = g.factor(i);
    Mat h = column_hnf(std::move(m), k);
    n.h_.assign(k, std::vector<Int>(k, 0));
    for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j < k; ++j) n.h_[i][j] = h[i][j];
    Int det = 1;
    for (unsigned i = 0; i < k; ++i) det *= n.h_[i][i];
    n.index_ = det;
    n.order_ = g.order() / det;
    return n;
}

Subgroup Subgroup::zero_subgroup(const FiniteAbelianGroup& g) { return from_generators(g, {}); }

Subgroup Subgroup::full_subgroup(const FiniteAbelianGroup& g) {
    std::vector<std::vector<Int>> gens;
    for (unsigned i = 0; i < g.rank(); ++i) {
        std::vector<Int> e(g.rank(), 0);
        e[i] = 1;
        gens.push_back(std::move(e));
    }
    return from_generators(g, gens);
}

bool Subgroup::contains(const std::vector<Int>& x) const {
    unsigned k = group_.rank();
    std::vector<Int> r = group_.reduce(x);
    // forward substitution through the lower-triangular canonical matrix
    for (unsigned i = 0; i < k; ++i) {
        if (r[i] % h_[i][i] != 0) return false;
        Int y = r[i] / h_[i][i];
        for (unsigned row = i; row < k; ++row) r[row] -= y * h_[row][i];
    }
    return true;
}

bool Subgroup::subset_of(const Subgroup& o) const {
    for (const auto& c : generator_columns())
        if (!o.contains(group_.reduce(c))) return false;
    return true;
}

std::string Subgroup::key() const {
    std::ostringstream os;
    os << group_.str() << "|";
    for (const auto& row : h_) {
        for (const auto& v : row) os << v << ",";
        os << ";";
    }
    return os.str();
}

std::vector<std::vector<Int>> Subgroup::generator_columns() const {
    unsigned k = group_.rank();
    std::vector<std::vector<Int>> cols;
    for (unsigned j = 0; j < k; ++j) {
        std::vector<Int> c(k);
        for (unsigned i = 0; i < k; ++i) c[i] = h_[i][j];
        cols.push_back(group_.reduce(c));
    }
    return cols;
}

std::vector<std::vector<Int>> Subgroup::elements(const Int& cap) const {
    if (order_ > cap) throw resource_error("Subgroup::elements: order exceeds cap");
    std::vector<std::vector<Int>> out;
    for (const auto& x : group_.enumerate(cap * index_))
        if (contains(x)) out.push_back(x);
    return out;
}

Subgroup subgroup_sum(const Subgroup& a, const Subgroup& b) {
    if (!(a.group() == b.group())) throw spec_error("subgroup_sum: ambient mismatch");
    auto gens = a.generator_columns();
    auto gb = b.generator_columns();
    gens.insert(gens.end(), gb.begin(), gb.end());
    return Subgroup::from_generators(a.group(), gens);
}

Subgroup annihilator(const Subgroup& n) {
    const FiniteAbelianGroup& g = n.group();
    unsigned k = g.rank();
    if (k == 0) return Subgroup::full_subgroup(g);
    Int biglcm = 1;
    for (unsigned i = 0; i < k; ++i) biglcm = lcm_int(biglcm, g.factor(i));
    // rows: one congruence per generator column of N
    // sum_i H[i][j] * (L / d_i) * y_i = 0  (mod L)
    Mat b(k, std::vector<Int>(k, 0));
    const Mat& h = n.hnf();
    for (unsigned j = 0; j < k; ++j)
        for (unsigned i = 0; i < k; ++i) b[j][i] = h[i][j] * (biglcm / g.factor(i));
    Mat v;
    smith_normal_form(b, v);
    // solutions y = V z with s_i z_i = 0 mod L, i.e. z_i in (L/gcd(s_i,L)) Z
    std::vector<std::vector<Int>> gens;
    for (unsigned i = 0; i < k; ++i) {
        Int s = i < b.size() && i < b[i].size() ? b[i][i] : Int(0);
        Int t = biglcm / gcd(s, biglcm);
        std::vector<Int> col(k);
        for (unsigned r = 0; r < k; ++r) col[r] = v[r][i] * t;
        gens.push_back(g.reduce(col));
    }
    return Subgroup::from_generators(g, gens);
}

Subgroup co_annihilator(const Subgroup& b) { return annihilator(b); }

Subgroup subgroup_meet(const Subgroup& a, const Subgroup& b) {
    if (!(a.group() == b.group())) throw spec_error("subgroup_meet: ambient mismatch");
    // one SNF routine serves both lattice operations:
    // N1 meet N2 = (N1^perp + N2^perp)^top
    return co_annihilator(subgroup_sum(annihilator(a), annihilator(b)));
}

Subgroup annihilator_oracle(const Subgroup& n) {
    const FiniteAbelianGroup& g = n.group();
    std::vector<std::vector<Int>> gens;
    auto cols = n.generator_columns();
    for (const auto& y : g.enumerate()) {
        bool ok = true;
        for (const auto& c : cols)
            if (g.pairing(c, y) != 0) {
                ok = false;
                break;
            }
        if (ok) gens.push_back(y);
    }
    return Subgroup::from_generators(g, gens);
}

// ---------------------------------------------------------------------------
// Endomorphism

Endomorphism::Endomorphism(const FiniteAbelianGroup& g, Mat a) : group_(g), a_(std::move(a)) { validate(); }

void Endomorphism::validate() {
    unsigned k = group_.rank();
    if (a_.size() != k) throw spec_error("Endomorphism: matrix must be " + std::to_string(k) + "x" + std::to_string(k));
    for (unsigned i = 0; i < k; ++i) {
        if (a_[i].size() != k) throw spec_error("Endomorphism: ragged matrix");
        for (unsigned j = 0; j < k; ++j) {
            Int need = group_.factor(i) / gcd(group_.factor(i), group_.factor(j));
            if (a_[i][j] % need != 0)
                throw spec_error("Endomorphism: entry (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") breaks compatibility: " + need.str() + " must divide " + a_[i][j].str());
        }
    }
    for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j < k; ++j) {
            Int v = a_[i][j] % group_.factor(i);
            if (v < 0) v += group_.factor(i);
            a_[i][j] = v;
        }
}

Endomorphism Endomorphism::identity(const FiniteAbelianGroup& g) {
    Mat a(g.rank(), std::vector<Int>(g.rank(), 0));
    for (unsigned i = 0; i < g.rank(); ++i) a[i][i] = 1;
    return Endomorphism(g, a);
}

Endomorphism Endomorphism::multiplication(const FiniteAbelianGroup& g, const Int& m) {
    Mat a(g.rank(), std::vector<Int>(g.rank(), 0));
    for (unsigned i = 0; i < g.rank(); ++i) a[i][i] = m;
    return Endomorphism(g, a);
}

std::vector<Int> Endomorphism::apply(const std::vector<Int>& x) const {
    unsigned k = group_.rank();
    std::vector<Int> y(k, 0);
    for (unsigned i = 0; i < k; ++i) {
        for (unsigned j = 0; j < k; ++j) y[i] += a_[i][j] * x[j];
        y[i] %= group_.factor(i);
        if (y[i] < 0) y[i] += group_.factor(i);
    }
    return y;
}

Subgroup Endomorphism::image_of(const Subgroup& n) const {
    std::vector<std::vector<Int>> gens;
    for (const auto& c : n.generator_columns()) gens.push_back(apply(c));
    return Subgroup::from_generators(group_, gens);
}

Subgroup Endomorphism::preimage_of(const Subgroup& n) const {
    unsigned k = group_.rank();
    if (k == 0) return Subgroup::full_subgroup(group_);
    // x with A x = H y + D z for some integer y, z: the x-part of the
    // kernel of [A | -H | -D]
    Mat m(k, std::vector<Int>(3 * k, 0));
    const Mat& h = n.hnf();
    for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j < k; ++j) {
            m[i][j] = a_[i][j];
            m[i][k + j] = -h[i][j];
            if (i == j) m[i][2 * k + j] = -group_.factor(i);
        }
    std::vector<std::vector<Int>> gens;
    for (const auto& v : integer_kernel(m)) gens.push_back(group_.reduce(std::vector<Int>(v.begin(), v.begin() + k)));
    return Subgroup::from_generators(group_, gens);
}

Endomorphism Endomorphism::compose(const Endomorphism& o) const {
    if (!(group_ == o.group_)) throw spec_error("compose: group mismatch");
    unsigned k = group_.rank();
    Mat c(k, std::vector<Int>(k, 0));
    for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j < k; ++j) {
            for (unsigned t = 0; t < k; ++t) c[i][j] += a_[i][t] * o.a_[t][j];
        }
    return Endomorphism(group_, c);
}

Endomorphism Endomorphism::dual() const {
    // B_ji = A_ij * d_j / d_i; integral by compatibility, and <Ax, y> = <x, By>
    unsigned k = group_.rank();
    Mat b(k, std::vector<Int>(k, 0));
    for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j < k; ++j) {
            Int num = a_[i][j] * group_.factor(j);
            if (num % group_.factor(i) != 0) throw spec_error("dual: compatibility violated");
            b[j][i] = num / group_.factor(i);
        }
    return Endomorphism(group_, b);
}

// ---------------------------------------------------------------------------
// entropies on finite carriers

namespace {

QuasiPeriodCertificate find_matrix_collision(const Endomorphism& phi, unsigned cap) {
    std::map<Mat, unsigned> seen;
    Endomorphism p = phi;
    seen[Endomorphism::identity(phi.group()).matrix()] = 0;
    for (unsigned k = 1; k <= cap; ++k) {
        auto it = seen.find(p.matrix());
        if (it != seen.end()) return {k, it->second};
        seen[p.matrix()] = k;
        p = p.compose(phi);
    }
    throw resource_error("ent_finite: power collision not found within cap");
}

} // namespace

FiniteEntResult ent_finite(const Endomorphism& phi, unsigned power_cap) {
    // the endomorphism monoid of a finite group is finite, so the flow is
    // quasi-periodic and its entropy vanishes
    FiniteEntResult r;
    r.certificate = find_matrix_collision(phi, power_cap);
    r.estimate.classification = EntropyEstimate::Classification::exact;
    r.estimate.value = LogValue::zero();
    r.estimate.certificate = "quasi-periodic: phi^" + std::to_string(r.certificate.k) + " = phi^" +
                             std::to_string(r.certificate.m);
    r.estimate.witness_restricted = false;
    return r;
}

FiniteEntResult ent_star_finite(const Endomorphism& phi, unsigned power_cap) { return ent_finite(phi.dual(), power_cap); }

EntDimResult ent_dim(const Endomorphism& phi) {
    const FiniteAbelianGroup& g = phi.group();
    if (g.rank() == 0) {
        auto cert = find_matrix_collision(phi, 4);
        return {Rat(0), Int(2), cert};
    }
    const Int& p = g.factor(0);
    auto f = factorize(p);
    if (f.size() != 1 || f.begin()->second != 1)
        throw spec_error("ent_dim: invariant factors must equal a single prime");
    for (unsigned i = 0; i < g.rank(); ++i)
        if (g.factor(i) != p) throw spec_error("ent_dim: group is not elementary abelian");
    EntDimResult r;
    r.prime = p;
    FiniteEntResult e = ent_finite(phi);
    r.certificate = e.certificate;
    auto ratio = e.estimate.value.div_log(p);
    r.value = ratio ? *ratio : Rat(0);
    return r;
}

Rat dim_norm(const Subgroup& n) {
    const FiniteAbelianGroup& g = n.group();
    if (g.rank() == 0) return Rat(0);
    const Int& p = g.factor(0);
    Int o = n.order();
    Rat dim = 0;
    while (o > 1) {
        if (o % p != 0) throw spec_error("dim_norm: subgroup order is not a prime power");
        o /= p;
        dim += 1;
    }
    return dim;
}

// ---------------------------------------------------------------------------
// Weiss bridge

std::vector<Subgroup> cotrajectory(const Endomorphism& phi, const Subgroup& n, unsigned n_max) {
    std::vector<Subgroup> out{n};
    for (unsigned i = 1; i < n_max; ++i) out.push_back(subgroup_meet(n, phi.preimage_of(out.back())));
    return out;
}

std::vector<Subgroup> sum_trajectory(const Endomorphism& phi, const Subgroup& n, unsigned n_max) {
    std::vector<Subgroup> out{n};
    Subgroup power = n;
    for (unsigned i = 1; i < n_max; ++i) {
        power = phi.image_of(power);
        out.push_back(subgroup_sum(out.back(), power));
    }
    return out;
}

WeissBridgeReport bridge_check_weiss(const Endomorphism& phi, const Subgroup& n, unsigned n_max) {
    WeissBridgeReport rep;
    auto dual_phi = phi.dual();
    auto nperp = annihilator(n);
    auto cot = cotrajectory(phi, n, n_max);
    auto traj = sum_trajectory(dual_phi, nperp, n_max);
    rep.pass = true;
    for (unsigned i = 0; i < n_max; ++i) {
        rep.cotrajectory_indices.push_back(cot[i].index());
        rep.dual_orders.push_back(traj[i].order());
        if (rep.pass && cot[i].index() != traj[i].order()) {
            rep.pass = false;
            rep.first_mismatch = static_cast<int>(i + 1);
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// random instances

FiniteAbelianGroup random_group(std::mt19937_64& rng, const Int& max_order) {
    static const int primes[] = {2, 3, 5, 7};
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Int> orders;
        unsigned pieces = 1 + rng() % 3;
        for (unsigned i = 0; i < pieces; ++i) {
            int p = primes[rng() % 4];
            unsigned e = 1 + rng() % 3;
            Int pe = 1;
            for (unsigned t = 0; t < e; ++t) pe *= p;
            orders.push_back(pe);
        }
        auto g = FiniteAbelianGroup::from_cyclic_orders(orders);
        if (!g.trivial() && g.order() <= max_order) return g;
    }
    return FiniteAbelianGroup({2});
}

Endomorphism random_endomorphism(std::mt19937_64& rng, const FiniteAbelianGroup& g) {
    unsigned k = g.rank();
    Mat a(k, std::vector<Int>(k, 0));
    for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j < k; ++j) {
            Int step = g.factor(i) / gcd(g.factor(i), g.factor(j));
            Int span = g.factor(i) / step;
            a[i][j] = step * Int(rng() % span.convert_to<unsigned long>());
        }
    return Endomorphism(g, a);
}

Subgroup random_subgroup(std::mt19937_64& rng, const FiniteAbelianGroup& g) {
    unsigned k = g.rank();
    unsigned gens = rng() % (k + 1);
    std::vector<std::vector<Int>> gs;
    for (unsigned t = 0; t < gens; ++t) {
        std::vector<Int> v(k);
        for (unsigned i = 0; i < k; ++i) v[i] = Int(rng() % g.factor(i).convert_to<unsigned long>());
        gs.push_back(std::move(v));
    }
    return Subgroup::from_generators(g, gs);
}

} // namespace entrofunc
