#include <doctest.h>

#include <functional>
#include <set>

#include "entrofunc/selfmap_graph.hpp"

using namespace entrofunc;

namespace {

// the pakex selfmap of N, literally: 0,1 -> 0, 2n+2 -> 2n, 2n+3 -> 2n+1
long pakex_int(long n) {
    if (n <= 1) return 0;
    return n - 2;
}

// brute-force cotrajectory sizes of an integer selfmap over a window
std::vector<size_t> brute_cotrajectory_sizes(const std::function<long(long)>& f, std::set<long> d, unsigned n_max,
                                             long window) {
    std::vector<size_t> sizes;
    std::set<long> acc = d, layer = d;
    sizes.push_back(acc.size());
    for (unsigned n = 2; n <= n_max; ++n) {
        std::set<long> next;
        for (long x = 0; x <= window; ++x)
            if (layer.count(f(x))) next.insert(x);
        acc.insert(next.begin(), next.end());
        layer = next;
        sizes.push_back(acc.size());
    }
    return sizes;
}

SelfmapGraph pakex_graph() {
    const char* text = R"({
      "core": [["z", "z"]],
      "rays": [],
      "antirays": [{"exit": "z"}, {"exit": "z"}]
    })";
    return SelfmapGraph::from_json(text);
}

std::vector<size_t> sizes_of(const std::vector<LogValue>& c) {
    std::vector<size_t> out;
    for (const auto& v : c) {
        auto q = v.as_pure_count();
        REQUIRE(q.has_value());
        out.push_back(static_cast<size_t>(numerator(*q).convert_to<long>()));
    }
    return out;
}

} // namespace

TEST_SUITE("set_dynamics") {
    TEST_CASE("image and preimage steps") {
        SelfmapGraph ray({}, {}, 1, {});
        auto base = FiniteSubset{VertexId::ray_cell(0, 0)};
        CHECK(ray.image_step(base) == FiniteSubset{VertexId::ray_cell(0, 1)});

        auto g = pakex_graph();
        FiniteSubset zero{VertexId::core_vertex(0)};
        auto pre = g.preimage_step(zero);
        CHECK(pre.size() == 3); // {0, 1, 2}
        CHECK(subset_contains(pre, VertexId::core_vertex(0)));
        CHECK(subset_contains(pre, VertexId::aray_cell(0, 0)));
        CHECK(subset_contains(pre, VertexId::aray_cell(1, 0)));

        // finite 3-cycle: the image of everything is everything
        SelfmapGraph cyc({"a", "b", "c"},
                         {VertexId::core_vertex(1), VertexId::core_vertex(2), VertexId::core_vertex(0)}, 0, {});
        auto all = cyc.canonical_witness();
        CHECK(cyc.image_step(all) == all);
    }

    TEST_CASE("pakex reproduces the non-subadditive cotrajectory") {
        auto g = pakex_graph();
        FiniteSubset zero{VertexId::core_vertex(0)};
        auto flow = preimage_flow(g);
        auto c = trajectory_norms(flow, zero, 20);
        auto sz = sizes_of(c);
        CHECK(sz[0] == 1);
        CHECK(sz[1] == 3); // |T_2*| = 3 > |T_1*| + |T_1*|
        auto brute = brute_cotrajectory_sizes(pakex_int, {0}, 20, 64);
        CHECK(sz == brute);

        auto rep = contravariant_entropy(g, {{"{0}", zero}}, ContravariantVariant::star, 20);
        CHECK(rep.overall.classification == EntropyEstimate::Classification::exact);
        CHECK(rep.overall.value == LogValue::count(2));
    }

    TEST_CASE("successor ray: covariant slope 1, contravariant 0, sc empty") {
        SelfmapGraph g({}, {}, 1, {});
        FiniteSubset base{VertexId::ray_cell(0, 0)};
        auto cov = covariant_entropy(g, {{"base", base}}, SetEntropyMode::trajectory, 32);
        CHECK(cov.overall.classification == EntropyEstimate::Classification::exact);
        CHECK(cov.overall.value == LogValue::count(1));
        // brute |T_n| = n
        auto c = trajectory_norms(image_flow(g), base, 32);
        auto sz = sizes_of(c);
        for (size_t n = 0; n < sz.size(); ++n) CHECK(sz[n] == n + 1);

        auto star = contravariant_entropy(g, {{"base", base}}, ContravariantVariant::star, 16);
        CHECK(star.overall.value.is_zero());

        auto sc = surjective_core(g);
        CHECK(sc.empty);
    }

    TEST_CASE("two disjoint rays give slope 2") {
        SelfmapGraph g({}, {}, 2, {});
        FiniteSubset bases{VertexId::ray_cell(0, 0), VertexId::ray_cell(1, 0)};
        auto c = trajectory_norms(image_flow(g), bases, 32);
        auto sz = sizes_of(c);
        for (size_t n = 0; n < sz.size(); ++n) CHECK(sz[n] == 2 * (n + 1));
        auto cov = covariant_entropy(g, {{"bases", bases}}, SetEntropyMode::trajectory, 32);
        CHECK(cov.overall.value == LogValue::count(2));
    }

    TEST_CASE("finite graphs certify zero by quasi-periodicity") {
        SelfmapGraph cyc({"a", "b", "c"},
                         {VertexId::core_vertex(1), VertexId::core_vertex(2), VertexId::core_vertex(0)}, 0, {});
        auto rep = covariant_entropy(cyc, {{"all", cyc.canonical_witness()}}, SetEntropyMode::trajectory, 16);
        CHECK(rep.overall.value.is_zero());
        CHECK(rep.overall.certificate.find("quasi-periodic") != std::string::npos);
    }

    TEST_CASE("anti-ray into a fixed point: contravariant slope 1") {
        SelfmapGraph g({"p"}, {VertexId::core_vertex(0)}, 0, {{VertexId::core_vertex(0)}});
        FiniteSubset fp{VertexId::core_vertex(0)};
        auto rep = contravariant_entropy(g, {{"fp", fp}}, ContravariantVariant::star, 24);
        CHECK(rep.overall.classification == EntropyEstimate::Classification::exact);
        CHECK(rep.overall.value == LogValue::count(1));
        // sizes n + 1: {p}, {p, a0}, {p, a0, a1}, ...
        auto sz = sizes_of(trajectory_norms(preimage_flow(g), fp, 8));
        for (size_t n = 0; n < sz.size(); ++n) CHECK(sz[n] == n + 1);
    }

    TEST_CASE("surjective cores") {
        // pakex is surjective: sc keeps everything
        auto g = pakex_graph();
        auto sc = surjective_core(g);
        CHECK(sc.core_in[0]);
        CHECK(sc.restricted.anti_ray_count() == 2);
        // every m <= 100 has a preimage under the integer map
        for (long m = 0; m <= 100; ++m) {
            bool has = false;
            for (long x = 0; x <= 202 && !has; ++x) has = pakex_int(x) == m;
            CHECK(has);
        }

        // rho shape: tail of length 2 into a 3-cycle; sc is the cycle
        SelfmapGraph rho({"t1", "t2", "c0", "c1", "c2"},
                         {VertexId::core_vertex(1), VertexId::core_vertex(2), VertexId::core_vertex(3),
                          VertexId::core_vertex(4), VertexId::core_vertex(2)},
                         0, {});
        auto rsc = surjective_core(rho);
        CHECK(!rsc.core_in[0]);
        CHECK(!rsc.core_in[1]);
        CHECK(rsc.core_in[2]);
        CHECK(rsc.core_in[3]);
        CHECK(rsc.core_in[4]);
        CHECK(rsc.restricted.core_size() == 3);
    }

    TEST_CASE("star_p restricts to the surjective core") {
        // successor ray + separate fixed point: sc = {fixed point}
        SelfmapGraph g({"p"}, {VertexId::core_vertex(0)}, 1, {});
        FiniteSubset d{VertexId::core_vertex(0), VertexId::ray_cell(0, 3)};
        auto star = contravariant_entropy(g, {{"d", d}}, ContravariantVariant::star, 16);
        auto star_p = contravariant_entropy(g, {{"d", d}}, ContravariantVariant::star_p, 16);
        CHECK(star.overall.value.is_zero());
        CHECK(star_p.overall.value.is_zero());
        // the star_p cotrajectory never sees the ray cells
        auto sc = surjective_core(g);
        CHECK(sc.translate(d).size() == 1);
    }

    TEST_CASE("structural counts match trajectory slopes on random tame graphs") {
        std::mt19937_64 rng(20240817);
        for (int trial = 0; trial < 25; ++trial) {
            auto g = random_selfmap_graph(rng, 4, 2, 2);
            auto witness = g.canonical_witness();
            auto cov = covariant_entropy(g, {{"canon", witness}}, SetEntropyMode::trajectory, 48);
            CHECK(cov.overall.value == LogValue::count(structural_covariant_count(g)));
            auto con = contravariant_entropy(g, {{"canon", witness}}, ContravariantVariant::star, 48);
            CHECK(con.overall.value == LogValue::count(structural_contravariant_count(g)));
            // h_p* <= h* on every tested instance
            auto conp = contravariant_entropy(g, {{"canon", witness}}, ContravariantVariant::star_p, 48);
            CHECK(conp.overall.value <= con.overall.value);
        }
    }

    TEST_CASE("trajectory norms are monotone in the witness") {
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 10; ++trial) {
            auto g = random_selfmap_graph(rng, 4, 2, 2);
            auto big = g.canonical_witness();
            if (big.size() < 2) continue;
            FiniteSubset small(big.begin(), big.begin() + big.size() / 2);
            auto cs = trajectory_norms(image_flow(g), small, 16);
            auto cb = trajectory_norms(image_flow(g), big, 16);
            for (size_t n = 0; n < cs.size(); ++n) CHECK(cs[n] <= cb[n]);
        }
    }

    TEST_CASE("JSON round-trip is canonical") {
        auto g = pakex_graph();
        auto s1 = g.to_json();
        auto g2 = SelfmapGraph::from_json(s1);
        auto s2 = g2.to_json();
        CHECK(s1 == s2); // serializer output is a fixed point
        CHECK(g2.anti_ray_count() == 2);
        CHECK(g2.core_size() == 1);

        CHECK_THROWS_AS(SelfmapGraph::from_json(R"({"core": [], "bogus": 1})"), spec_error);
        // anti-ray exits may not land in another anti-ray
        CHECK_THROWS_AS(SelfmapGraph::from_json(R"({"core": [], "antirays": [{"exit": "aray:0:0"}]})"),
                        spec_error);
    }
}
