#include "doctest.h"
#include "sinrlab/ssf.hpp"

using namespace sinrlab;

TEST_CASE("singletons are the exact family at full selectivity") {
    auto f = build_ssf(4, 4, SsfStrategy::greedy);
    REQUIRE(f.length() == 4);
    for (int i = 0; i < 4; ++i) {
        auto labels = f.set_labels(i);
        REQUIRE(labels.size() == 1);
        CHECK(labels[0] == i + 1);
    }
    CHECK(verify_ssf(f, SsfVerifyMode::exhaustive).pass);
}

TEST_CASE("selectivity one collapses to a covering family") {
    auto f = build_ssf(2, 1, SsfStrategy::greedy);
    CHECK(verify_ssf(f, SsfVerifyMode::exhaustive).pass);
    // the two-label universe in one set suffices at c=1 but fails at c=2
    SsfFamily single(2, 2);
    single.add_set({1, 2});
    auto res = verify_ssf(single, SsfVerifyMode::exhaustive);
    REQUIRE_FALSE(res.pass);
    REQUIRE(res.witness.has_value());
    CHECK(res.witness->subset == std::vector<Label>{1, 2});
    CHECK(res.witness->unselected == 1);
}

TEST_CASE("explicit family passes verification") {
    SsfFamily f(2, 2);
    f.add_set({1});
    f.add_set({2});
    f.add_set({1, 2});
    CHECK(verify_ssf(f, SsfVerifyMode::exhaustive).pass);
}

TEST_CASE("greedy family within the length budget") {
    SsfBuildConfig cfg;
    auto f = build_ssf(8, 2, SsfStrategy::greedy, cfg);
    CHECK(verify_ssf(f, SsfVerifyMode::exhaustive).pass);
    CHECK(f.length() <= cfg.c1_budget * 2 * 2 * label_bits(8));
}

TEST_CASE("all strategies produce verified families") {
    for (auto strat :
         {SsfStrategy::greedy, SsfStrategy::randomized_verified, SsfStrategy::algebraic}) {
        for (int n : {2, 8, 16}) {
            for (int c : {1, 2}) {
                auto f = build_ssf(n, c, strat);
                CAPTURE(to_string(strat));
                CAPTURE(n);
                CAPTURE(c);
                CHECK(verify_ssf(f, SsfVerifyMode::exhaustive).pass);
            }
        }
    }
}

TEST_CASE("algebraic construction scales past the greedy budget") {
    auto f = build_ssf(1024, 4, SsfStrategy::algebraic);
    CHECK(f.n_labels() == 1024);
    CHECK(verify_ssf(f, SsfVerifyMode::sampled, 20000, 3).pass);
}

TEST_CASE("construction is reproducible per seed") {
    SsfBuildConfig a, b;
    a.seed = b.seed = 42;
    auto f1 = build_ssf(16, 3, SsfStrategy::randomized_verified, a);
    auto f2 = build_ssf(16, 3, SsfStrategy::randomized_verified, b);
    CHECK(f1 == f2);
    b.seed = 43;
    auto f3 = build_ssf(16, 3, SsfStrategy::randomized_verified, b);
    CHECK(f1.length() > 0);
    CHECK((f1 == f3) == false);
}

TEST_CASE("schedule activation is the set membership") {
    auto f = build_ssf(4, 4, SsfStrategy::greedy);
    CHECK(schedule_active(f, 3, 2));
    CHECK_FALSE(schedule_active(f, 3, 0));
    CHECK_THROWS_AS(schedule_active(f, 3, f.length()), std::out_of_range);
    CHECK_THROWS_AS(schedule_active(f, 5, 0), std::out_of_range);
}

TEST_CASE("infeasible selectivity is rejected") {
    CHECK_THROWS_AS(build_ssf(4, 5, SsfStrategy::greedy), std::invalid_argument);
    CHECK_THROWS_AS(build_ssf(4, 0, SsfStrategy::greedy), std::invalid_argument);
}

TEST_CASE("serialization round-trips bit-exactly") {
    for (auto strat : {SsfStrategy::greedy, SsfStrategy::algebraic}) {
        auto f = build_ssf(16, 2, strat);
        auto g = SsfFamily::parse(f.serialize());
        CHECK(f == g);
        CHECK(f.serialize() == g.serialize());
    }
}

TEST_CASE("exhaustive verification respects its budget") {
    auto f = build_ssf(16, 2, SsfStrategy::greedy);
    CHECK_THROWS_AS(verify_ssf(f, SsfVerifyMode::exhaustive, 0, 1, 10), BudgetExceeded);
}

TEST_CASE("every label is active somewhere and c1 reflects the length") {
    auto f = build_ssf(16, 2, SsfStrategy::greedy);
    for (Label l = 1; l <= 16; ++l) {
        bool seen = false;
        for (int s = 0; s < f.length(); ++s) seen |= schedule_active(f, l, s);
        CHECK(seen);
    }
    CHECK(f.c1() == (f.length() + label_bits(16) - 1) / label_bits(16));
}

TEST_CASE("derived dilution selectivity") {
    DilutionConfig d{1000, 2};
    CHECK(d.c_derived() == 1000L * 1000 * 25);
    CHECK(d.effective_c(64) == 64);
    DilutionConfig small{1, 1};
    CHECK(small.c_derived() == 9);
    CHECK(small.effective_c(64) == 9);
}
