#include <doctest.h>

#include "entrofunc/estimate.hpp"
#include "entrofunc/log_value.hpp"

using namespace entrofunc;

TEST_SUITE("log_value") {
    TEST_CASE("normalization collapses powers and degenerate forms") {
        CHECK(LogValue::log_int(1, 1) == LogValue::zero());
        CHECK(LogValue::log_int(0, 7) == LogValue::zero());
        CHECK(LogValue::log_int(1, 4) == LogValue::log_int(2, 2));
        CHECK(LogValue::log_int(1, 8) == LogValue::log_int(3, 2));
        CHECK(LogValue::log_int(1, 12) == LogValue::log_int(2, 2) + LogValue::log_int(1, 3));
        CHECK(LogValue::log_int(1, 6) + LogValue::log_int(1, 2) ==
              LogValue::log_int(2, 2) + LogValue::log_int(1, 3));
    }

    TEST_CASE("addition on a common base is coefficient addition") {
        LogValue a = LogValue::log_int(Rat(3, 4), 5);
        LogValue b = LogValue::log_int(Rat(1, 4), 5);
        CHECK(a + b == LogValue::log_int(1, 5));
        CHECK((a - a).is_zero());
    }

    TEST_CASE("ordering is exact across bases") {
        CHECK(LogValue::log_int(1, 2) < LogValue::log_int(1, 3));
        CHECK(LogValue::log_int(2, 3) > LogValue::log_int(3, 2)); // 2 log 3 > 3 log 2 (9 > 8)
        CHECK(LogValue::log_int(2, 8) == LogValue::log_int(3, 4));
        // close call decided by escalation: log(2^20) vs log(1048577)
        CHECK(LogValue::log_int(1, 1048576) < LogValue::log_int(1, 1048577));
    }

    TEST_CASE("count values are a separate exact unit") {
        LogValue c = LogValue::count(3);
        CHECK(c.as_pure_count().has_value());
        CHECK(*c.as_pure_count() == 3);
        CHECK(c != LogValue::log_int(3, 2));
        CHECK(c + LogValue::count(Rat(1, 2)) == LogValue::count(Rat(7, 2)));
        CHECK(c.scaled(Rat(1, 3)) == LogValue::count(1));
        // count 1 vs log 3: 1 < log 3 (e < 3)
        CHECK(LogValue::count(1) < LogValue::log_int(1, 3));
        CHECK(LogValue::count(2) > LogValue::log_int(1, 3));
    }

    TEST_CASE("infinite dominates") {
        CHECK(LogValue::infinite() > LogValue::log_int(1000, 2));
        CHECK(LogValue::infinite() == LogValue::infinite());
        CHECK((LogValue::infinite() + LogValue::count(1)).is_infinite());
    }

    TEST_CASE("q log m extraction") {
        auto qm = LogValue::log_int(3, 2).as_q_log_m();
        REQUIRE(qm.has_value());
        CHECK(qm->q == 3);
        CHECK(qm->m == 2);

        // 2 log 2 - 3/4 log 3 = 1/4 * log(256/27)
        LogValue h = LogValue::log_int(2, 2) - LogValue::log_int(Rat(3, 4), 3);
        auto qm2 = h.as_q_log_m();
        REQUIRE(qm2.has_value());
        CHECK(qm2->q == Rat(1, 4));
        CHECK(qm2->m == Rat(256, 27));
        CHECK(h.str() == "1/4*log(256/27)");
    }

    TEST_CASE("div_log for dimension units") {
        auto r = LogValue::log_int(3, 4).div_log(2);
        REQUIRE(r.has_value());
        CHECK(*r == 6); // 3 log 4 = 6 log 2
        CHECK(!LogValue::log_int(1, 6).div_log(2).has_value());
        CHECK(LogValue::zero().div_log(5).has_value());
    }

    TEST_CASE("string forms") {
        CHECK(LogValue::zero().str() == "0");
        CHECK(LogValue::infinite().str() == "inf");
        CHECK(LogValue::count(5).str() == "5");
        CHECK(LogValue::log_int(1, 2).str() == "log(2)");
        CHECK(LogValue::log_int(Rat(5), 2).str() == "5*log(2)");
        CHECK((LogValue::count(2) + LogValue::log_int(1, 3)).str() == "2 + log(3)");
    }
}

TEST_SUITE("estimate") {
    static std::vector<LogValue> seq(std::initializer_list<int> xs) {
        std::vector<LogValue> v;
        for (int x : xs) v.push_back(LogValue::count(x));
        return v;
    }

    TEST_CASE("stabilized differences classify exact on structured carriers") {
        std::vector<LogValue> c;
        for (int n = 1; n <= 10; ++n) c.push_back(LogValue::log_int(n, 2));
        CarrierFlags f;
        f.subadditive = true;
        f.structured = true;
        auto est = estimate_entropy(c, f, 5, true);
        CHECK(est.classification == EntropyEstimate::Classification::exact);
        CHECK(est.value == LogValue::log_int(1, 2));
    }

    TEST_CASE("same detection is heuristic off structured carriers") {
        std::vector<LogValue> c;
        for (int n = 1; n <= 10; ++n) c.push_back(LogValue::count(2 * n));
        CarrierFlags f;
        auto est = estimate_entropy(c, f, 5, false);
        CHECK(est.classification == EntropyEstimate::Classification::exact_heuristic);
        CHECK(est.value == LogValue::count(2));
    }

    TEST_CASE("fekete path needs subadditive norm and contractive flow") {
        // log(n+1): sublinear, differences never stabilize
        std::vector<LogValue> c;
        for (int n = 1; n <= 16; ++n) c.push_back(LogValue::log_int(1, n + 1));
        CarrierFlags f;
        f.subadditive = true;
        f.structured = true;
        auto est = estimate_entropy(c, f, 5, true);
        CHECK(est.classification == EntropyEstimate::Classification::fekete_upper_bound);
        CHECK(est.value == LogValue::log_int(Rat(1, 16), 17));

        auto est2 = estimate_entropy(c, f, 5, false); // not contractive: no Fekete claim
        CHECK(est2.classification == EntropyEstimate::Classification::numeric);
    }

    TEST_CASE("non-subadditive stabilized odd counts, as in the pakex cotrajectory") {
        auto est = estimate_entropy(seq({1, 3, 5, 7, 9, 11, 13}), CarrierFlags{.structured = true}, 5, false);
        CHECK(est.classification == EntropyEstimate::Classification::exact);
        CHECK(est.value == LogValue::count(2));
    }

    TEST_CASE("single point is numeric with infinite residual") {
        auto est = estimate_entropy(seq({4}), CarrierFlags{}, 5, false);
        CHECK(est.classification == EntropyEstimate::Classification::numeric);
        CHECK(std::isinf(est.residual));
    }

    TEST_CASE("fekete bounds are non-increasing") {
        std::vector<LogValue> c;
        for (int n = 1; n <= 12; ++n) c.push_back(LogValue::log_int(1, n + 1));
        auto b = fekete_bounds(c);
        for (size_t i = 0; i + 1 < b.size(); ++i) CHECK(b[i + 1] <= b[i]);
    }
}
