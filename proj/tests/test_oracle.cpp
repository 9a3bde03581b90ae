// Copyright 2026 The txsched Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "test_support.hpp"

#include "txsched/oracle.hpp"

#include <doctest.h>

#include <random>

using namespace txsched;
using txsched::testing::makeWorkload;
using txsched::testing::randomWorkload;
using txsched::testing::timeGridOptimum;

namespace
{

Schedule
manual(std::vector<Assignment> assignments, Millis horizon)
{
    Schedule s;
    s.assignments = std::move(assignments);
    s.horizonMs = horizon;
    for (auto const& a : s.assignments)
    {
        s.scheduleMakespanMs = std::max(s.scheduleMakespanMs, a.finishMs);
    }
    return s;
}

} // namespace

TEST_SUITE("validator")
{
    TEST_CASE("serial schedule is valid")
    {
        auto const w = makeWorkload({2, 3, 4}, {{0, 1}, {1, 2}}, 1, true);
        auto const s = manual({{0, 0, 0, 2}, {1, 0, 2, 5}, {2, 0, 5, 9}}, 9);
        auto const r = validateSchedule(s, w);
        CHECK(r.ok);
        CHECK(r.violations.empty());
    }

    TEST_CASE("overlap on one core")
    {
        auto const w = makeWorkload({2, 3}, {}, 1);
        auto const r = validateSchedule(manual({{0, 0, 0, 2}, {1, 0, 1, 4}}, 5), w);
        CHECK_FALSE(r.ok);
        CHECK(r.has(Constraint::C1));
        CHECK_FALSE(r.has(Constraint::C2));
    }

    TEST_CASE("touching intervals do not overlap")
    {
        auto const w = makeWorkload({2, 3}, {{0, 1}}, 2);
        CHECK(validateSchedule(manual({{0, 0, 0, 2}, {1, 1, 2, 5}}, 5), w).ok);
    }

    TEST_CASE("conflicting processes overlap across cores")
    {
        auto const w = makeWorkload({2, 3}, {{0, 1}}, 2);
        auto const r = validateSchedule(manual({{0, 0, 0, 2}, {1, 1, 1, 4}}, 5), w);
        CHECK(r.has(Constraint::C2));
        CHECK_FALSE(r.has(Constraint::C1));
        REQUIRE(r.violations.size() == 1);
        CHECK(r.violations[0].processes == std::vector<ProcessId>{0, 1});
    }

    TEST_CASE("attestor order alone")
    {
        auto const w = makeWorkload({2, 3}, {{0, 1}}, 2, true);
        auto const r = validateSchedule(manual({{0, 0, 3, 5}, {1, 1, 0, 3}}, 5), w);
        CHECK(r.has(Constraint::C3));
        CHECK_FALSE(r.has(Constraint::C2));
        CHECK_FALSE(r.has(Constraint::C1));

        auto proposer = w;
        proposer.attestor = false;
        CHECK(validateSchedule(manual({{0, 0, 3, 5}, {1, 1, 0, 3}}, 5), proposer).ok);
    }

    TEST_CASE("completeness and shape errors")
    {
        auto const w = makeWorkload({2, 3}, {}, 2);
        CHECK(validateSchedule(manual({{0, 0, 0, 2}}, 5), w).has(Constraint::Completeness));
        CHECK(validateSchedule(manual({{0, 0, 0, 2}, {0, 1, 0, 2}, {1, 1, 2, 5}}, 5), w)
                  .has(Constraint::Completeness));
        // Wrong duration, unknown core, unknown process.
        CHECK(validateSchedule(manual({{0, 0, 0, 3}, {1, 1, 0, 3}}, 5), w)
                  .has(Constraint::Completeness));
        CHECK(validateSchedule(manual({{0, 5, 0, 2}, {1, 1, 0, 3}}, 5), w)
                  .has(Constraint::Completeness));
        CHECK(validateSchedule(manual({{0, 0, 0, 2}, {1, 1, 0, 3}, {7, 1, 3, 4}}, 5), w)
                  .has(Constraint::Completeness));
    }

    TEST_CASE("report JSON")
    {
        auto const w = makeWorkload({2, 3}, {{0, 1}}, 2);
        auto const j = validationReportToJson(
            validateSchedule(manual({{0, 0, 0, 2}, {1, 1, 1, 4}}, 5), w));
        CHECK(j["ok"] == false);
        CHECK(j["violations"].size() == 1);
        CHECK(j["violations"][0]["constraint"] == "C2");
    }
}

TEST_SUITE("oracle")
{
    TEST_CASE("three-process example")
    {
        auto const w = makeWorkload({4, 3, 2}, {{0, 1}}, 2);
        auto const r = exactOptimal(w);
        CHECK(r.optimal);
        CHECK(r.optimalMakespanMs == 7);
        CHECK(validateSchedule(r.witness, w).ok);
    }

    TEST_CASE("one core gives the serial sum")
    {
        std::mt19937_64 rng(4);
        for (int trial = 0; trial < 10; ++trial)
        {
            auto const w = randomWorkload(rng, 1 + rng() % 8, 1, 0.3, trial % 2);
            CHECK(exactOptimal(w).optimalMakespanMs == w.totalExecTimeMs());
        }
    }

    TEST_CASE("agrees with an independent start-time enumeration")
    {
        std::mt19937_64 rng(9);
        for (int trial = 0; trial < 60; ++trial)
        {
            std::size_t const n = 1 + rng() % 4;
            auto const w = randomWorkload(rng, n, 1 + rng() % 3, 0.4, trial % 2, 4);
            auto const r = exactOptimal(w);
            REQUIRE(r.optimal);
            CHECK(r.optimalMakespanMs == timeGridOptimum(w));
            CHECK(validateSchedule(r.witness, w).ok);
            CHECK(r.witness.scheduleMakespanMs == r.optimalMakespanMs);
        }
    }

    TEST_CASE("pruning never changes the optimum")
    {
        std::mt19937_64 rng(10);
        for (int trial = 0; trial < 40; ++trial)
        {
            std::size_t const n = 1 + rng() % 6;
            auto const w = randomWorkload(rng, n, 1 + rng() % 3, 0.3, trial % 2, 9);
            auto const pruned = exactOptimal(w);
            auto const plain = exactOptimal(w, {50'000'000, false});
            REQUIRE(pruned.optimal);
            REQUIRE(plain.optimal);
            CHECK(pruned.optimalMakespanMs == plain.optimalMakespanMs);
            CHECK(pruned.nodesExplored <= plain.nodesExplored);
        }
    }

    TEST_CASE("non-increasing in core count")
    {
        std::mt19937_64 rng(12);
        for (int trial = 0; trial < 20; ++trial)
        {
            auto w = randomWorkload(rng, 2 + rng() % 6, 1, 0.25, trial % 2);
            Millis prev = w.totalExecTimeMs();
            for (std::uint32_t m = 1; m <= 4; ++m)
            {
                w.cores.coreCount = m;
                auto const r = exactOptimal(w);
                CHECK(r.optimalMakespanMs <= prev);
                CHECK(validateSchedule(r.witness, w).ok);
                prev = r.optimalMakespanMs;
            }
        }
    }

    TEST_CASE("exhausted budget still returns a valid incumbent")
    {
        std::mt19937_64 rng(14);
        auto const w = randomWorkload(rng, 8, 3, 0.2, false);
        auto const r = exactOptimal(w, {5, true});
        CHECK_FALSE(r.optimal);
        CHECK(validateSchedule(r.witness, w).ok);
        CHECK(r.optimalMakespanMs >= exactOptimal(w).optimalMakespanMs);
    }
}
