#include <doctest.h>

#include "entrofunc/carriers.hpp"

using namespace entrofunc;

namespace {

std::vector<Witness<Int>> nat_witnesses(std::initializer_list<long> xs) {
    std::vector<Witness<Int>> w;
    for (long x : xs) w.push_back({std::to_string(x), Int(x)});
    return w;
}

} // namespace

TEST_SUITE("core_semigroup") {
    TEST_CASE("trajectory of rho_2 on (N, v_l) is n*log 2") {
        auto flow = make_rho_flow(NaturalAddCarrier{NaturalAddCarrier::NormKind::vl}, 2);
        auto c = trajectory_norms(flow, Int(1), 3);
        REQUIRE(c.size() == 3);
        CHECK(c[0] == LogValue::log_int(1, 2));
        CHECK(c[1] == LogValue::log_int(1, 4));
        CHECK(c[2] == LogValue::log_int(1, 8));
    }

    TEST_CASE("semilattice-style idempotent op keeps the sequence constant") {
        // join semilattice on subsets of {0,1,2} with the counting norm
        struct JoinCarrier {
            using element = unsigned; // bitmask
            element op(const element& a, const element& b) const { return a | b; }
            bool equal(const element& a, const element& b) const { return a == b; }
            LogValue norm(const element& a) const { return LogValue::count(__builtin_popcount(a)); }
            CarrierFlags flags() const {
                CarrierFlags f;
                f.subadditive = f.arithmetic = f.monotone_norm = f.d_monotone = f.commutative = f.has_identity =
                    f.structured = true;
                return f;
            }
        };
        Flow<JoinCarrier> flow;
        flow.carrier = JoinCarrier{};
        flow.endo = [](const unsigned& x) { return x; };
        flow.contractive = true;
        auto c = trajectory_norms(flow, 5u, 6);
        for (const auto& v : c) CHECK(v == LogValue::count(2));
        // identity is quasi-periodic: flow-level estimate certifies zero
        auto est = entropy_at(flow, 5u, 8, 5);
        CHECK(est.classification == EntropyEstimate::Classification::exact);
        CHECK(est.value.is_zero());
        CHECK(est.certificate.find("quasi-periodic") != std::string::npos);
    }

    TEST_CASE("vlex: h(rho_a) = log a on (N, v_l) for witness 1") {
        for (long a : {2L, 3L, 5L}) {
            auto flow = make_rho_flow(NaturalAddCarrier{NaturalAddCarrier::NormKind::vl}, a);
            auto rep = semigroup_entropy(flow, nat_witnesses({1}), 32, 5);
            CHECK(rep.overall.classification == EntropyEstimate::Classification::exact);
            CHECK(rep.overall.value == LogValue::log_int(1, a));
        }
    }

    TEST_CASE("identity on (N, v_l) certifies zero by quasi-periodicity") {
        auto flow = make_rho_flow(NaturalAddCarrier{NaturalAddCarrier::NormKind::vl}, 1);
        auto rep = semigroup_entropy(flow, nat_witnesses({1, 7}), 16, 5);
        CHECK(rep.overall.classification == EntropyEstimate::Classification::exact);
        CHECK(rep.overall.value.is_zero());
        // the bare sequence without the flow falls back to the Fekete bound
        auto c = trajectory_norms(flow, Int(1), 16);
        auto est = estimate_entropy(c, flow.carrier.flags(), 5, flow.contractive);
        CHECK(est.classification == EntropyEstimate::Classification::fekete_upper_bound);
    }

    TEST_CASE("subidinf: identity on (N, v(x)=x) is exact per witness, infinite with upgrade") {
        auto flow = make_rho_flow(NaturalAddCarrier{NaturalAddCarrier::NormKind::linear}, 1);
        auto rep = semigroup_entropy(flow, nat_witnesses({5}), 16, 5);
        CHECK(rep.overall.classification == EntropyEstimate::Classification::exact);
        CHECK(rep.overall.value == LogValue::count(5));
        CHECK(rep.overall.witness_restricted);
        auto up = semigroup_entropy(flow, nat_witnesses({5}), 16, 5, Side::right, true);
        CHECK(up.overall.value.is_infinite());
        CHECK(!up.overall.witness_restricted);
    }

    TEST_CASE("contractivity violations are loud") {
        auto flow = make_rho_flow(NaturalAddCarrier{NaturalAddCarrier::NormKind::vl}, 2);
        Flow<NaturalAddCarrier> bad = flow;
        bad.contractive = true; // wrong: rho_2 raises v_l
        CHECK_THROWS_AS((void)trajectory_norms(bad, Int(1), 4), spec_error);
    }

    TEST_CASE("element bit budget is a hard resource error") {
        auto flow = make_rho_flow(NaturalAddCarrier{NaturalAddCarrier::NormKind::vl}, 2);
        flow.limits.max_element_bits = 16;
        CHECK_THROWS_AS((void)trajectory_norms(flow, Int(1), 64), resource_error);
    }

    TEST_CASE("Ex_ast: free-semigroup shift separates h from h#") {
        auto flow = make_free_shift_flow(FreeSemigroupCarrier{FreeSemigroupCarrier::NormKind::run});
        std::vector<Witness<std::vector<long>>> ws{{"x0", {0}}};
        auto right = semigroup_entropy(flow, ws, 32, 5);
        auto left = left_entropy(flow, ws, 32, 5);
        CHECK(right.overall.value == LogValue::count(1));
        CHECK(left.overall.value.is_zero());
        CHECK(right.overall.classification == EntropyEstimate::Classification::exact);
        CHECK(left.overall.classification == EntropyEstimate::Classification::exact);

        // raw sequences agree with the certified values
        auto cr = trajectory_norms(flow, {0}, 8, Side::right);
        auto cl = trajectory_norms(flow, {0}, 8, Side::left);
        CHECK(cr[7] == LogValue::count(8));
        CHECK(cl[7] == LogValue::count(1));
    }

    TEST_CASE("Ex_ast(a): ascent norm gives h = 1, h# = 0 at a single generator") {
        auto flow = make_free_shift_flow(FreeSemigroupCarrier{FreeSemigroupCarrier::NormKind::ascent_plus_one});
        auto cr = trajectory_norms(flow, {0}, 10, Side::right);
        auto cl = trajectory_norms(flow, {0}, 10, Side::left);
        CHECK(cr[9] == LogValue::count(10)); // s = n-1, v = n
        CHECK(cl[9] == LogValue::count(1));
    }

    TEST_CASE("left and right entropies agree on commutative carriers") {
        auto flow = make_rho_flow(NaturalAddCarrier{NaturalAddCarrier::NormKind::vl}, 3);
        auto cr = trajectory_norms(flow, Int(2), 12, Side::right);
        auto cl = trajectory_norms(flow, Int(2), 12, Side::left);
        for (size_t i = 0; i < cr.size(); ++i) CHECK(cr[i] == cl[i]);
    }

    TEST_CASE("right Bernoulli shift attains sup_x v(x)") {
        auto mon = cyclic_counting_monoid(6);
        auto flow = make_right_bernoulli_flow(mon);
        std::vector<Witness<std::vector<unsigned>>> ws;
        for (unsigned m = 0; m < 6; ++m) ws.push_back({"e" + std::to_string(m), flow.carrier.singleton(m)});
        auto rep = semigroup_entropy(flow, ws, 24, 5, Side::right, true);
        CHECK(rep.overall.value == LogValue::log_int(1, 6));
        CHECK(!rep.overall.witness_restricted);
        // left shift erases everything
        auto lflow = make_left_bernoulli_flow(mon);
        auto lrep = semigroup_entropy(lflow, ws, 24, 5);
        CHECK(lrep.overall.value.is_zero());
    }

    TEST_CASE("log law and weak addition on stock flows") {
        auto f2 = make_rho_flow(NaturalAddCarrier{NaturalAddCarrier::NormKind::vl}, 2);
        auto f3 = make_rho_flow(NaturalAddCarrier{NaturalAddCarrier::NormKind::vl}, 3);
        auto ws = nat_witnesses({1});

        auto ll = check_log_law(f2, 3, ws, 32, 5);
        CHECK(ll.status == LawStatus::holds);
        CHECK(ll.lhs == LogValue::log_int(3, 2));

        auto wat = check_product_max(f2, f3, ws, ws, 32, 5);
        CHECK(wat.status == LawStatus::holds);
        CHECK(wat.lhs == LogValue::log_int(1, 3));

        auto m2 = cyclic_counting_monoid(2);
        auto b1 = make_right_bernoulli_flow(m2);
        std::vector<Witness<std::vector<unsigned>>> bw{{"e1", b1.carrier.singleton(1)}};
        auto wat2 = check_coproduct_sum(b1, b1, bw, bw, 24, 5);
        CHECK(wat2.status == LawStatus::holds);
        CHECK(wat2.lhs == LogValue::log_int(2, 2));
    }

    TEST_CASE("conjugation by a norm-preserving isomorphism matches c_n exactly") {
        auto flow = make_rho_flow(NaturalAddCarrier{NaturalAddCarrier::NormKind::vl}, 2);
        // conjugate by the identity relabelling (N, +) -> (N, +)
        auto verdict = check_conjugation<NaturalAddCarrier, NaturalAddCarrier>(
            flow, flow, [](const Int& x) { return x; }, nat_witnesses({1, 3}), 16);
        CHECK(verdict.status == LawStatus::holds);
    }

    TEST_CASE("inversion is inapplicable without a commutative carrier") {
        auto flow = make_free_shift_flow(FreeSemigroupCarrier{});
        std::vector<Witness<std::vector<long>>> ws{{"x0", {0}}};
        auto v = check_inversion(flow, ws, 16, 5);
        CHECK(v.status == LawStatus::inapplicable);
    }

    TEST_CASE("inversion holds for the identity on (N, v_l)") {
        auto flow = make_rho_flow(NaturalAddCarrier{NaturalAddCarrier::NormKind::vl}, 1);
        auto v = check_inversion(flow, nat_witnesses({4}), 16, 5);
        CHECK(v.status == LawStatus::holds);
    }
}
