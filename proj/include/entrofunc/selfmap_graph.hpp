#pragma once

#include <compare>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "entrofunc/trajectory.hpp"

namespace entrofunc {

/// Handle for a vertex of a finitely described selfmap of a countable set:
/// a finite core vertex, a cell of a forward ray (lambda: n -> n+1) or a
/// cell of an anti-ray (lambda: n+1 -> n, with cell 0 exiting the ray).
struct VertexId {
    enum class Kind : uint8_t { core = 0, ray = 1, aray = 2 };

    Kind kind = Kind::core;
    uint32_t id = 0;
    uint64_t depth = 0; // 0 for core vertices

    static VertexId core_vertex(uint32_t i) { return {Kind::core, i, 0}; }
    static VertexId ray_cell(uint32_t i, uint64_t n) { return {Kind::ray, i, n}; }
    static VertexId aray_cell(uint32_t i, uint64_t n) { return {Kind::aray, i, n}; }

    auto operator<=>(const VertexId&) const = default;
};

/// Finite subset of the vertex set, kept sorted and duplicate-free; its
/// norm in the set semilattice is the bare cardinality (a count value, not
/// a log).
using FiniteSubset = std::vector<VertexId>;

FiniteSubset make_subset(std::vector<VertexId> handles);
FiniteSubset subset_union(const FiniteSubset& a, const FiniteSubset& b);
bool subset_contains(const FiniteSubset& a, const VertexId& v);

class SelfmapGraph {
  public:
    struct AntiRay {
        VertexId exit; // lambda(aray(i, 0)); must be a core vertex or ray cell
    };

    SelfmapGraph() = default;
    SelfmapGraph(std::vector<std::string> core_names, std::vector<VertexId> core_succ, unsigned rays,
                 std::vector<AntiRay> anti_rays);

    unsigned core_size() const { return static_cast<unsigned>(core_succ_.size()); }
    unsigned ray_count() const { return rays_; }
    unsigned anti_ray_count() const { return static_cast<unsigned>(anti_rays_.size()); }
    const std::string& core_name(uint32_t i) const { return core_names_[i]; }
    const std::vector<AntiRay>& anti_rays() const { return anti_rays_; }

    // Every fiber of this graph class is finite: core and component counts
    // are finite and rays map within themselves. The flag is derived, and
    // preimage computations double-check it.
    bool finite_to_one() const { return true; }

    VertexId apply(const VertexId& v) const;
    std::vector<VertexId> preimage(const VertexId& v) const;

    FiniteSubset image_step(const FiniteSubset& d) const;
    FiniteSubset preimage_step(const FiniteSubset& d) const;

    /// core vertices plus every ray base and anti-ray head: the declared
    /// sufficient witness family for the exact set-theoretic entropies.
    FiniteSubset canonical_witness() const;

    std::string vertex_ref(const VertexId& v) const;
    VertexId parse_ref(const std::string& ref) const;

    std::string to_json() const;
    static SelfmapGraph from_json(const std::string& text);

  private:
    std::vector<std::string> core_names_;
    std::vector<VertexId> core_succ_;
    unsigned rays_ = 0;
    std::vector<AntiRay> anti_rays_;

    void validate() const;
};

// ---------------------------------------------------------------------------
// Set semilattice carrier (S(X), union, |.|) and the induced flows.

struct SubsetCarrier {
    using element = FiniteSubset;

    element op(const element& a, const element& b) const { return subset_union(a, b); }
    bool equal(const element& a, const element& b) const { return a == b; }
    LogValue norm(const element& a) const { return LogValue::count(Rat(static_cast<unsigned long>(a.size()))); }
    unsigned long size_bits(const element& a) const { return 128 * (a.size() + 1); }
    CarrierFlags flags() const {
        CarrierFlags f;
        f.subadditive = f.arithmetic = f.monotone_norm = f.d_monotone = f.commutative = f.has_identity = true;
        f.structured = true;
        return f;
    }
};

/// Flow of the image functor: D -> lambda(D). Contractive.
Flow<SubsetCarrier> image_flow(const SelfmapGraph& g);
/// Flow of the counter-image functor: D -> lambda^{-1}(D). Not contractive,
/// so no Fekete claims are ever made on cotrajectories.
Flow<SubsetCarrier> preimage_flow(const SelfmapGraph& g);

enum class SetEntropyMode { trajectory, exact_structural };
enum class ContravariantVariant { star, star_p };

struct SetWitness {
    std::string label;
    FiniteSubset set;
};

/// Covariant set-theoretic entropy. Structural mode returns the number of
/// forward rays (library theorem, oracle-validated); trajectory mode runs
/// the trajectory engine over the provided witnesses.
EntropyReport covariant_entropy(const SelfmapGraph& g, const std::vector<SetWitness>& witnesses,
                                SetEntropyMode mode, unsigned n_max = 48, unsigned window = 5);

/// Contravariant set-theoretic entropy via cotrajectories; star_p restricts
/// to the surjective core first.
EntropyReport contravariant_entropy(const SelfmapGraph& g, const std::vector<SetWitness>& witnesses,
                                    ContravariantVariant variant, unsigned n_max = 48, unsigned window = 5);

unsigned structural_covariant_count(const SelfmapGraph& g);    // #forward rays
unsigned structural_contravariant_count(const SelfmapGraph& g); // #anti-rays

/// sc(lambda), the largest subset on which lambda is surjective, together
/// with the translation of vertices into the restricted graph.
struct SurjectiveCore {
    SelfmapGraph restricted;
    bool empty = false;
    std::vector<bool> core_in;         // old core index -> membership
    std::vector<uint32_t> core_newid;  // old core index -> new index (when in)
    std::vector<uint64_t> ray_min_depth; // per old ray: first depth inside sc, or UINT64_MAX

    bool contains(const VertexId& v) const;
    /// translate an old vertex handle into the restricted graph
    VertexId translate(const VertexId& v) const;
    FiniteSubset translate(const FiniteSubset& d) const;
};

SurjectiveCore surjective_core(const SelfmapGraph& g);

/// Random tame graph for property suites: up to the given component counts,
/// every exit/successor wired uniformly at random.
SelfmapGraph random_selfmap_graph(std::mt19937_64& rng, unsigned max_core, unsigned max_rays, unsigned max_arays);

} // namespace entrofunc
