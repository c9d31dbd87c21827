#include "entrofunc/selfmap_graph.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

namespace entrofunc {

using json = nlohmann::ordered_json;

FiniteSubset make_subset(std::vector<VertexId> handles) {
    std::sort(handles.begin(), handles.end());
    handles.erase(std::unique(handles.begin(), handles.end()), handles.end());
    return handles;
}

FiniteSubset subset_union(const FiniteSubset& a, const FiniteSubset& b) {
    FiniteSubset r;
    r.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

bool subset_contains(const FiniteSubset& a, const VertexId& v) {
    return std::binary_search(a.begin(), a.end(), v);
}

SelfmapGraph::SelfmapGraph(std::vector<std::string> core_names, std::vector<VertexId> core_succ, unsigned rays,
                           std::vector<AntiRay> anti_rays)
    : core_names_(std::move(core_names)), core_succ_(std::move(core_succ)), rays_(rays),
      anti_rays_(std::move(anti_rays)) {
    validate();
}

void SelfmapGraph::validate() const {
    if (core_names_.size() != core_succ_.size()) throw spec_error("SelfmapGraph: name/successor size mismatch");
    std::set<std::string> seen;
    for (const auto& n : core_names_) {
        if (n.empty()) throw spec_error("SelfmapGraph: empty core vertex name");
        if (n.rfind("ray:", 0) == 0 || n.rfind("aray:", 0) == 0)
            throw spec_error("SelfmapGraph: core name collides with a ray handle: " + n);
        if (!seen.insert(n).second) throw spec_error("SelfmapGraph: duplicate core name " + n);
    }
    auto check_target = [&](const VertexId& v, bool allow_aray) {
        switch (v.kind) {
            case VertexId::Kind::core:
                if (v.id >= core_succ_.size()) throw spec_error("SelfmapGraph: successor core index out of range");
                break;
            case VertexId::Kind::ray:
                if (v.id >= rays_) throw spec_error("SelfmapGraph: successor ray index out of range");
                break;
            case VertexId::Kind::aray:
                if (!allow_aray) throw spec_error("SelfmapGraph: anti-ray exit must land in the core or a ray");
                if (v.id >= anti_rays_.size()) throw spec_error("SelfmapGraph: successor anti-ray index out of range");
                break;
        }
    };
    for (const auto& s : core_succ_) check_target(s, true);
    for (const auto& a : anti_rays_) check_target(a.exit, false);
}

VertexId SelfmapGraph::apply(const VertexId& v) const {
    switch (v.kind) {
        case VertexId::Kind::core: return core_succ_[v.id];
        case VertexId::Kind::ray: return VertexId::ray_cell(v.id, v.depth + 1);
        case VertexId::Kind::aray:
            if (v.depth > 0) return VertexId::aray_cell(v.id, v.depth - 1);
            return anti_rays_[v.id].exit;
    }
    throw spec_error("SelfmapGraph: bad vertex kind");
}

std::vector<VertexId> SelfmapGraph::preimage(const VertexId& v) const {
    std::vector<VertexId> pre;
    for (uint32_t i = 0; i < core_succ_.size(); ++i)
        if (core_succ_[i] == v) pre.push_back(VertexId::core_vertex(i));
    switch (v.kind) {
        case VertexId::Kind::core: break;
        case VertexId::Kind::ray:
            if (v.depth > 0) pre.push_back(VertexId::ray_cell(v.id, v.depth - 1));
            break;
        case VertexId::Kind::aray: pre.push_back(VertexId::aray_cell(v.id, v.depth + 1)); break;
    }
    if (v.kind != VertexId::Kind::aray) {
        for (uint32_t j = 0; j < anti_rays_.size(); ++j)
            if (anti_rays_[j].exit == v) pre.push_back(VertexId::aray_cell(j, 0));
    }
    return pre;
}

FiniteSubset SelfmapGraph::image_step(const FiniteSubset& d) const {
    std::vector<VertexId> out;
    out.reserve(d.size());
    for (const auto& v : d) out.push_back(apply(v));
    return make_subset(std::move(out));
}

FiniteSubset SelfmapGraph::preimage_step(const FiniteSubset& d) const {
    if (!finite_to_one()) throw spec_error("preimage_step: not finite-to-one");
    std::vector<VertexId> out;
    for (const auto& v : d) {
        auto pre = preimage(v);
        out.insert(out.end(), pre.begin(), pre.end());
    }
    return make_subset(std::move(out));
}

FiniteSubset SelfmapGraph::canonical_witness() const {
    std::vector<VertexId> w;
    for (uint32_t i = 0; i < core_succ_.size(); ++i) w.push_back(VertexId::core_vertex(i));
    for (uint32_t i = 0; i < rays_; ++i) w.push_back(VertexId::ray_cell(i, 0));
    for (uint32_t i = 0; i < anti_rays_.size(); ++i) w.push_back(VertexId::aray_cell(i, 0));
    return make_subset(std::move(w));
}

std::string SelfmapGraph::vertex_ref(const VertexId& v) const {
    switch (v.kind) {
        case VertexId::Kind::core: return core_names_[v.id];
        case VertexId::Kind::ray: return "ray:" + std::to_string(v.id) + ":" + std::to_string(v.depth);
        case VertexId::Kind::aray: return "aray:" + std::to_string(v.id) + ":" + std::to_string(v.depth);
    }
    throw spec_error("vertex_ref: bad kind");
}

VertexId SelfmapGraph::parse_ref(const std::string& ref) const {
    auto parse_pair = [&](const std::string& body, VertexId::Kind kind) {
        auto colon = body.find(':');
        if (colon == std::string::npos) throw spec_error("bad vertex reference: " + ref);
        uint32_t id = static_cast<uint32_t>(std::stoul(body.substr(0, colon)));
        uint64_t depth = std::stoull(body.substr(colon + 1));
        VertexId v{kind, id, depth};
        if (kind == VertexId::Kind::ray && id >= rays_) throw spec_error("ray index out of range: " + ref);
        if (kind == VertexId::Kind::aray && id >= anti_rays_.size())
            throw spec_error("anti-ray index out of range: " + ref);
        return v;
    };
    if (ref.rfind("ray:", 0) == 0) return parse_pair(ref.substr(4), VertexId::Kind::ray);
    if (ref.rfind("aray:", 0) == 0) return parse_pair(ref.substr(5), VertexId::Kind::aray);
    for (uint32_t i = 0; i < core_names_.size(); ++i)
        if (core_names_[i] == ref) return VertexId::core_vertex(i);
    throw spec_error("unknown core vertex: " + ref);
}

std::string SelfmapGraph::to_json() const {
    json j;
    j["core"] = json::array();
    for (uint32_t i = 0; i < core_succ_.size(); ++i)
        j["core"].push_back(json::array({core_names_[i], vertex_ref(core_succ_[i])}));
    j["rays"] = json::array();
    for (uint32_t i = 0; i < rays_; ++i) j["rays"].push_back(json::object());
    j["antirays"] = json::array();
    for (const auto& a : anti_rays_) j["antirays"].push_back(json::object({{"exit", vertex_ref(a.exit)}}));
    return j.dump(2);
}

SelfmapGraph SelfmapGraph::from_json(const std::string& text) {
    json j = json::parse(text);
    if (!j.is_object()) throw spec_error("SelfmapGraph JSON: object expected");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "core" && key != "rays" && key != "antirays")
            throw spec_error("SelfmapGraph JSON: unknown field " + key);
    }
    SelfmapGraph g;
    std::vector<std::string> succ_refs;
    if (j.contains("core")) {
        for (const auto& entry : j.at("core")) {
            if (!entry.is_array() || entry.size() != 2)
                throw spec_error("SelfmapGraph JSON: core entries are [name, successor]");
            g.core_names_.push_back(entry.at(0).get<std::string>());
            succ_refs.push_back(entry.at(1).get<std::string>());
        }
    }
    if (j.contains("rays")) g.rays_ = static_cast<unsigned>(j.at("rays").size());
    if (j.contains("antirays")) g.anti_rays_.resize(j.at("antirays").size());
    g.core_succ_.resize(succ_refs.size());
    for (size_t i = 0; i < succ_refs.size(); ++i) g.core_succ_[i] = g.parse_ref(succ_refs[i]);
    if (j.contains("antirays")) {
        size_t i = 0;
        for (const auto& entry : j.at("antirays")) {
            if (!entry.is_object() || !entry.contains("exit"))
                throw spec_error("SelfmapGraph JSON: antiray entries carry an exit");
            g.anti_rays_[i++].exit = g.parse_ref(entry.at("exit").get<std::string>());
        }
    }
    g.validate();
    return g;
}

Flow<SubsetCarrier> image_flow(const SelfmapGraph& g) {
    Flow<SubsetCarrier> f;
    f.carrier = SubsetCarrier{};
    const SelfmapGraph* gp = &g;
    f.endo = [gp](const FiniteSubset& d) { return gp->image_step(d); };
    f.contractive = true; // |lambda(D)| <= |D|
    return f;
}

Flow<SubsetCarrier> preimage_flow(const SelfmapGraph& g) {
    Flow<SubsetCarrier> f;
    f.carrier = SubsetCarrier{};
    const SelfmapGraph* gp = &g;
    f.endo = [gp](const FiniteSubset& d) { return gp->preimage_step(d); };
    f.contractive = false; // fibers may grow: no Fekete claims on cotrajectories
    return f;
}

unsigned structural_covariant_count(const SelfmapGraph& g) { return g.ray_count(); }
unsigned structural_contravariant_count(const SelfmapGraph& g) { return g.anti_ray_count(); }

EntropyReport covariant_entropy(const SelfmapGraph& g, const std::vector<SetWitness>& witnesses,
                                SetEntropyMode mode, unsigned n_max, unsigned window) {
    if (mode == SetEntropyMode::exact_structural) {
        EntropyReport rep;
        rep.overall.classification = EntropyEstimate::Classification::exact;
        rep.overall.value = LogValue::count(structural_covariant_count(g));
        rep.overall.certificate = "structural: one unit per forward ray";
        rep.overall.witness_restricted = false;
        return rep;
    }
    if (witnesses.empty()) throw spec_error("covariant_entropy: trajectory mode needs witnesses");
    auto flow = image_flow(g);
    std::vector<Witness<FiniteSubset>> ws;
    for (const auto& w : witnesses) ws.push_back({w.label, w.set});
    return semigroup_entropy(flow, ws, n_max, window);
}

EntropyReport contravariant_entropy(const SelfmapGraph& g, const std::vector<SetWitness>& witnesses,
                                    ContravariantVariant variant, unsigned n_max, unsigned window) {
    if (!g.finite_to_one()) throw spec_error("contravariant_entropy: not finite-to-one");
    if (witnesses.empty()) throw spec_error("contravariant_entropy: needs witnesses");
    if (variant == ContravariantVariant::star) {
        auto flow = preimage_flow(g);
        std::vector<Witness<FiniteSubset>> ws;
        for (const auto& w : witnesses) ws.push_back({w.label, w.set});
        return semigroup_entropy(flow, ws, n_max, window);
    }
    // star_p: restrict to sc(lambda) and drop witness vertices outside it
    SurjectiveCore sc = surjective_core(g);
    auto flow = preimage_flow(sc.restricted);
    std::vector<Witness<FiniteSubset>> ws;
    for (const auto& w : witnesses) ws.push_back({w.label, sc.translate(w.set)});
    return semigroup_entropy(flow, ws, n_max, window);
}

SurjectiveCore surjective_core(const SelfmapGraph& g) {
    SurjectiveCore sc;
    unsigned n = g.core_size();
    sc.core_in.assign(n, true);
    // A vertex lies in every iterated image exactly when an infinite
    // backward chain reaches it. Anti-ray cells always carry one; core
    // vertices keep membership while some surviving predecessor feeds them.
    bool changed = true;
    while (changed) {
        changed = false;
        for (uint32_t v = 0; v < n; ++v) {
            if (!sc.core_in[v]) continue;
            bool fed = false;
            for (const auto& u : g.preimage(VertexId::core_vertex(v))) {
                if (u.kind == VertexId::Kind::aray) fed = true;
                if (u.kind == VertexId::Kind::core && sc.core_in[u.id]) fed = true;
                if (fed) break;
            }
            if (!fed) {
                sc.core_in[v] = false;
                changed = true;
            }
        }
    }
    sc.ray_min_depth.assign(g.ray_count(), UINT64_MAX);
    auto feed_ray = [&](const VertexId& target) {
        if (target.kind == VertexId::Kind::ray)
            sc.ray_min_depth[target.id] = std::min(sc.ray_min_depth[target.id], target.depth);
    };
    for (uint32_t v = 0; v < n; ++v)
        if (sc.core_in[v]) feed_ray(g.apply(VertexId::core_vertex(v)));
    for (const auto& a : g.anti_rays()) feed_ray(a.exit);

    // assemble the restricted graph
    sc.core_newid.assign(n, 0);
    std::vector<std::string> names;
    uint32_t next = 0;
    for (uint32_t v = 0; v < n; ++v)
        if (sc.core_in[v]) {
            sc.core_newid[v] = next++;
            names.push_back(g.core_name(v));
        }
    std::vector<uint32_t> ray_newid(g.ray_count(), 0);
    unsigned kept_rays = 0;
    for (uint32_t r = 0; r < g.ray_count(); ++r)
        if (sc.ray_min_depth[r] != UINT64_MAX) ray_newid[r] = kept_rays++;

    auto translate_target = [&](const VertexId& v) -> VertexId {
        switch (v.kind) {
            case VertexId::Kind::core: return VertexId::core_vertex(sc.core_newid[v.id]);
            case VertexId::Kind::ray: return VertexId::ray_cell(ray_newid[v.id], v.depth - sc.ray_min_depth[v.id]);
            case VertexId::Kind::aray: return v;
        }
        throw spec_error("surjective_core: bad vertex");
    };

    std::vector<VertexId> succ;
    for (uint32_t v = 0; v < n; ++v) {
        if (!sc.core_in[v]) continue;
        VertexId t = g.apply(VertexId::core_vertex(v));
        // sc is invariant: the successor of a surviving vertex survives
        succ.push_back(translate_target(t));
    }
    std::vector<SelfmapGraph::AntiRay> arays;
    for (const auto& a : g.anti_rays()) arays.push_back({translate_target(a.exit)});
    sc.restricted = SelfmapGraph(std::move(names), std::move(succ), kept_rays, std::move(arays));
    sc.empty = sc.restricted.core_size() == 0 && sc.restricted.ray_count() == 0 &&
               sc.restricted.anti_ray_count() == 0;
    return sc;
}

bool SurjectiveCore::contains(const VertexId& v) const {
    switch (v.kind) {
        case VertexId::Kind::core: return core_in[v.id];
        case VertexId::Kind::ray: return ray_min_depth[v.id] != UINT64_MAX && v.depth >= ray_min_depth[v.id];
        case VertexId::Kind::aray: return true;
    }
    return false;
}

VertexId SurjectiveCore::translate(const VertexId& v) const {
    if (!contains(v)) throw spec_error("SurjectiveCore::translate: vertex outside sc");
    switch (v.kind) {
        case VertexId::Kind::core: return VertexId::core_vertex(core_newid[v.id]);
        case VertexId::Kind::ray: {
            uint32_t newid = 0;
            for (uint32_t r = 0; r < v.id; ++r)
                if (ray_min_depth[r] != UINT64_MAX) ++newid;
            return VertexId::ray_cell(newid, v.depth - ray_min_depth[v.id]);
        }
        case VertexId::Kind::aray: return v;
    }
    throw spec_error("SurjectiveCore::translate: bad vertex");
}

FiniteSubset SurjectiveCore::translate(const FiniteSubset& d) const {
    std::vector<VertexId> out;
    for (const auto& v : d)
        if (contains(v)) out.push_back(translate(v));
    return make_subset(std::move(out));
}

SelfmapGraph random_selfmap_graph(std::mt19937_64& rng, unsigned max_core, unsigned max_rays, unsigned max_arays) {
    auto pick = [&](unsigned n) { return static_cast<uint32_t>(rng() % n); };
    unsigned n_core = max_core ? pick(max_core + 1) : 0;
    unsigned rays = max_rays ? pick(max_rays + 1) : 0;
    unsigned arays = max_arays ? pick(max_arays + 1) : 0;
    if (n_core + rays == 0) {
        if (arays > 0)
            n_core = 1; // anti-rays need an exit target
        else
            n_core = 1 + pick(std::max(1u, max_core));
    }
    std::vector<std::string> names;
    for (unsigned i = 0; i < n_core; ++i) names.push_back("v" + std::to_string(i));
    auto random_core_or_ray = [&]() -> VertexId {
        unsigned total = n_core + rays;
        unsigned k = pick(total);
        if (k < n_core) return VertexId::core_vertex(k);
        return VertexId::ray_cell(k - n_core, pick(4));
    };
    std::vector<VertexId> succ;
    for (unsigned i = 0; i < n_core; ++i) {
        unsigned roll = pick(10);
        if (roll < 6 || (rays + arays) == 0)
            succ.push_back(VertexId::core_vertex(pick(n_core)));
        else if (roll < 8 && rays > 0)
            succ.push_back(VertexId::ray_cell(pick(rays), pick(4)));
        else if (arays > 0)
            succ.push_back(VertexId::aray_cell(pick(arays), pick(4)));
        else if (rays > 0)
            succ.push_back(VertexId::ray_cell(pick(rays), pick(4)));
        else
            succ.push_back(VertexId::core_vertex(pick(n_core)));
    }
    std::vector<SelfmapGraph::AntiRay> ar;
    for (unsigned i = 0; i < arays; ++i) ar.push_back({random_core_or_ray()});
    return SelfmapGraph(std::move(names), std::move(succ), rays, std::move(ar));
}

} // namespace entrofunc
