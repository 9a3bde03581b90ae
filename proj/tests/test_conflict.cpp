// Copyright 2026 The txsched Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "test_support.hpp"

#include "txsched/conflict.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace txsched;
using txsched::testing::makeWorkload;
using txsched::testing::randomWorkload;

TEST_SUITE("conflict")
{
    TEST_CASE("small star")
    {
        auto const w = makeWorkload({5, 7, 9}, {{0, 1}, {0, 2}});
        ConflictIndex const idx(w);
        CHECK(idx.conflictCount(0) == 2);
        CHECK(idx.conflictCount(1) == 1);
        CHECK(idx.conflictCount(2) == 1);
        CHECK(idx.conflictDurationMs(0) == 16);
        CHECK(idx.conflictDurationMs(1) == 5);
        CHECK(idx.conflictDurationMs(2) == 5);
        CHECK(idx.conflictsWith(0, 2));
        CHECK_FALSE(idx.conflictsWith(1, 2));
    }

    TEST_CASE("complete graph")
    {
        auto const w =
            makeWorkload({3, 3, 3, 3}, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
        ConflictIndex const idx(w);
        for (ProcessId i = 0; i < 4; ++i)
        {
            CHECK(idx.conflictCount(i) == 3);
            CHECK(idx.conflictDurationMs(i) == 9);
        }
    }

    TEST_CASE("no conflicts")
    {
        auto const w = makeWorkload({1, 2, 3}, {});
        ConflictIndex const idx(w);
        for (ProcessId i = 0; i < 3; ++i)
        {
            CHECK(idx.conflictCount(i) == 0);
            CHECK(idx.conflictDurationMs(i) == 0);
            CHECK(idx.neighbors(i).empty());
        }
    }

    TEST_CASE("properties on random graphs")
    {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 60; ++trial)
        {
            std::size_t const n = 1 + rng() % 130; // crosses a 64-bit word
            double const p = static_cast<double>(rng() % 60) / 100.0;
            auto const w = randomWorkload(rng, n, 2, p, false);
            ConflictIndex const idx(w);

            std::size_t countSum = 0;
            for (ProcessId i = 0; i < n; ++i)
            {
                countSum += idx.conflictCount(i);
                CHECK_FALSE(idx.conflictsWith(i, i));
                auto const nb = idx.neighbors(i);
                CHECK(std::is_sorted(nb.begin(), nb.end()));
                Millis duration = 0;
                for (auto j : nb)
                {
                    duration += w.processes[j].execTimeMs;
                    CHECK(idx.conflictsWith(j, i));
                }
                CHECK(idx.conflictDurationMs(i) == duration);
            }
            CHECK(countSum == 2 * w.conflicts.size());

            for (ProcessId i = 0; i < n; ++i)
            {
                for (ProcessId j = 0; j < n; ++j)
                {
                    CHECK(idx.conflictsWith(i, j) == idx.conflictsWith(j, i));
                }
            }
            for (auto const& c : w.conflicts)
            {
                CHECK(idx.conflictsWith(c.a, c.b));
            }

            // Shuffling and flipping the input pairs changes nothing.
            Workload shuffled = w;
            std::shuffle(shuffled.conflicts.begin(), shuffled.conflicts.end(), rng);
            for (auto& c : shuffled.conflicts)
            {
                if (rng() % 2)
                {
                    std::swap(c.a, c.b);
                }
            }
            validateAndCanonicalize(shuffled);
            CHECK(ConflictIndex(shuffled) == idx);
        }
    }
}
