// Copyright 2026 The txsched Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "test_support.hpp"

#include "txsched/model.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <set>

using namespace txsched;
using txsched::testing::TempDir;

namespace
{

std::string const kMinimal = R"({
  "processes": [{"id": 0, "execTimeMs": 5, "opCount": 5000}],
  "conflicts": [],
  "cores": {"count": 2, "costPerOp": 0.001, "costPerIdleMs": 0.5},
  "attestor": false,
  "meta": {}
})";

std::string
fourProcesses(std::string const& conflicts, std::string const& extra = "")
{
    return R"({"processes": [
        {"id": 0, "execTimeMs": 1, "opCount": 1},
        {"id": 1, "execTimeMs": 2, "opCount": 2},
        {"id": 2, "execTimeMs": 3, "opCount": 3},
        {"id": 3, "execTimeMs": 4, "opCount": 4}],
      "conflicts": )" +
           conflicts + R"(,
      "cores": {"count": 1, "costPerOp": 0, "costPerIdleMs": 0},
      "attestor": true)" +
           extra + "}";
}

std::string
fieldOf(std::string const& text)
{
    try
    {
        parseWorkload(text);
    }
    catch (ValidationError const& e)
    {
        return e.field() + " | " + e.what();
    }
    return "";
}

std::size_t
participantCount(Workload const& w)
{
    std::set<ProcessId> ids;
    for (auto const& c : w.conflicts)
    {
        ids.insert(c.a);
        ids.insert(c.b);
    }
    return ids.size();
}

} // namespace

TEST_SUITE("model")
{
    TEST_CASE("minimal workload loads")
    {
        auto const w = parseWorkload(kMinimal);
        CHECK(w.size() == 1);
        CHECK(w.conflicts.empty());
        CHECK(w.cores.coreCount == 2);
        CHECK(w.cores.costPerIdleMs == doctest::Approx(0.5));
        CHECK_FALSE(w.attestor);
    }

    TEST_CASE("conflict pairs are canonicalized and deduplicated")
    {
        auto const w = parseWorkload(fourProcesses("[[3, 1], [1, 3], [0, 2]]"));
        REQUIRE(w.conflicts.size() == 2);
        CHECK(w.conflicts[0] == ConflictPair{0, 2});
        CHECK(w.conflicts[1] == ConflictPair{1, 3});
        CHECK(w.attestor);
    }

    TEST_CASE("dangling conflict id is named")
    {
        std::string text = R"({"processes": [)";
        for (int i = 0; i < 50; ++i)
        {
            text += (i ? "," : "") + std::string(R"({"id": )") + std::to_string(i) +
                    R"(, "execTimeMs": 3, "opCount": 3})";
        }
        text += R"(], "conflicts": [[4, 99]],
            "cores": {"count": 4, "costPerOp": 0, "costPerIdleMs": 0},
            "attestor": false, "meta": {}})";
        auto const msg = fieldOf(text);
        CHECK(msg.find("conflicts[0]") != std::string::npos);
        CHECK(msg.find("99") != std::string::npos);
    }

    TEST_CASE("validation errors name the offending field")
    {
        CHECK(fieldOf(R"({"processes": [{"id": 0, "execTimeMs": 0, "opCount": 1}],
            "conflicts": [], "cores": {"count": 1, "costPerOp": 0, "costPerIdleMs": 0},
            "attestor": false})")
                  .rfind("processes[0].execTimeMs", 0) == 0);
        CHECK(fieldOf(R"({"processes": [{"id": 0, "execTimeMs": 1, "opCount": 1},
            {"id": 0, "execTimeMs": 1, "opCount": 1}],
            "conflicts": [], "cores": {"count": 1, "costPerOp": 0, "costPerIdleMs": 0},
            "attestor": false})")
                  .find("duplicate id 0") != std::string::npos);
        CHECK(fieldOf(fourProcesses("[[2, 2]]")).rfind("conflicts[0]", 0) == 0);
        CHECK(fieldOf(fourProcesses("[]", R"(, "extra": 1)")).rfind("extra", 0) == 0);
        CHECK(fieldOf(R"({"processes": [{"id": 0, "execTimeMs": 1, "opCount": 1, "gas": 3}],
            "conflicts": [], "cores": {"count": 1, "costPerOp": 0, "costPerIdleMs": 0},
            "attestor": false})")
                  .rfind("processes[0].gas", 0) == 0);
        CHECK(fieldOf(R"({"processes": [{"id": 0, "execTimeMs": 1, "opCount": 1}],
            "conflicts": [], "cores": {"count": 0, "costPerOp": 0, "costPerIdleMs": 0},
            "attestor": false})")
                  .rfind("cores.count", 0) == 0);
        CHECK(fieldOf(R"({"processes": [{"id": 0, "execTimeMs": 1, "opCount": 1}],
            "conflicts": [], "cores": {"count": 1, "costPerOp": 0, "costPerIdleMs": 0}})")
                  .rfind("attestor", 0) == 0);
    }

    TEST_CASE("malformed JSON is a parse error")
    {
        CHECK_THROWS_AS(parseWorkload("{\"processes\": ["), ParseError);
        CHECK_THROWS_AS(parseWorkload("[1, 2]"), ParseError);
    }

    TEST_CASE("save then load is the identity")
    {
        TempDir dir;
        GeneratorConfig cfg;
        cfg.n = 200;
        cfg.conflictRate = 0.35;
        cfg.seed = 7;
        cfg.cores = {8, 0.002, 0.25};
        cfg.attestor = true;
        auto const w = generateWorkload(cfg);
        auto const path = dir.path / "w.json";
        saveWorkload(w, path);
        auto const back = loadWorkload(path);
        CHECK(back == w);
        // Byte-stable for a fixed workload.
        CHECK(serializeWorkload(back) == serializeWorkload(w));
    }

    TEST_CASE("conflict order in the file does not matter")
    {
        auto const a = parseWorkload(fourProcesses("[[0, 1], [2, 3], [1, 2]]"));
        auto const b = parseWorkload(fourProcesses("[[3, 2], [2, 1], [1, 0]]"));
        CHECK(a == b);
        CHECK(serializeWorkload(a) == serializeWorkload(b));
    }

    TEST_CASE("round trip holds for random generated workloads")
    {
        for (std::uint64_t seed = 1; seed <= 30; ++seed)
        {
            GeneratorConfig cfg;
            cfg.n = 1 + seed * 5;
            cfg.conflictRate = 0.02 * static_cast<double>(seed % 20);
            cfg.model = seed % 2 ? ConflictModel::Pairwise : ConflictModel::Participation;
            cfg.seed = seed;
            try
            {
                auto const w = generateWorkload(cfg);
                CHECK(parseWorkload(serializeWorkload(w)) == w);
            }
            catch (std::invalid_argument const&)
            {
                // round(n * rate) == 1 has no PARTICIPATION wiring.
                CHECK(std::llround(static_cast<double>(cfg.n) * cfg.conflictRate) == 1);
            }
        }
    }

    TEST_CASE("weights derive alphaCost")
    {
        Weights const w(0.25);
        CHECK(w.alphaCost() == doctest::Approx(0.75));
        CHECK_THROWS_AS(Weights(1.5), std::invalid_argument);
        CHECK_THROWS_AS(Weights(-0.1), std::invalid_argument);
    }
}

TEST_SUITE("generator")
{
    TEST_CASE("rate zero gives no conflicts under both models")
    {
        for (auto model : {ConflictModel::Pairwise, ConflictModel::Participation})
        {
            GeneratorConfig cfg;
            cfg.n = 50;
            cfg.conflictRate = 0.0;
            cfg.model = model;
            cfg.seed = 1;
            CHECK(generateWorkload(cfg).conflicts.empty());
        }
    }

    TEST_CASE("rate one pairwise gives the complete graph")
    {
        GeneratorConfig cfg;
        cfg.n = 50;
        cfg.conflictRate = 1.0;
        cfg.model = ConflictModel::Pairwise;
        CHECK(generateWorkload(cfg).conflicts.size() == 1225);
    }

    TEST_CASE("participation count is exact")
    {
        GeneratorConfig cfg;
        cfg.n = 200;
        cfg.conflictRate = 0.45;
        cfg.model = ConflictModel::Participation;
        cfg.seed = 1;
        CHECK(participantCount(generateWorkload(cfg)) == 90);

        for (std::uint64_t seed = 1; seed <= 40; ++seed)
        {
            for (double rate : {0.0, 0.05, 0.15, 0.25, 0.35, 0.45, 0.8, 1.0})
            {
                for (std::size_t n : {7, 50, 101})
                {
                    cfg.n = n;
                    cfg.conflictRate = rate;
                    cfg.seed = seed;
                    auto const expected = static_cast<std::size_t>(
                        std::llround(static_cast<double>(n) * rate));
                    if (expected == 1)
                    {
                        CHECK_THROWS_AS(generateWorkload(cfg), std::invalid_argument);
                        continue;
                    }
                    CHECK(participantCount(generateWorkload(cfg)) == expected);
                }
            }
        }
    }

    TEST_CASE("participation graphs are nested as the rate grows")
    {
        GeneratorConfig cfg;
        cfg.n = 100;
        cfg.seed = 3;
        cfg.conflictRate = 0.15;
        auto const low = generateWorkload(cfg);
        cfg.conflictRate = 0.45;
        auto const high = generateWorkload(cfg);
        CHECK(low.processes == high.processes);
        std::set<ConflictPair> highSet(high.conflicts.begin(), high.conflicts.end());
        std::size_t contained = 0;
        for (auto const& c : low.conflicts)
        {
            contained += highSet.count(c);
        }
        // Only the odd-participant partner may move.
        CHECK(contained + 1 >= low.conflicts.size());
    }

    TEST_CASE("pairwise edge frequency tracks the rate")
    {
        for (double rate : {0.1, 0.25, 0.45})
        {
            double total = 0.0;
            int const seeds = 100;
            for (int seed = 1; seed <= seeds; ++seed)
            {
                GeneratorConfig cfg;
                cfg.n = 100;
                cfg.conflictRate = rate;
                cfg.model = ConflictModel::Pairwise;
                cfg.seed = static_cast<std::uint64_t>(seed);
                total += static_cast<double>(generateWorkload(cfg).conflicts.size()) / 4950.0;
            }
            CHECK(std::abs(total / seeds - rate) <= 0.03);
        }
    }

    TEST_CASE("generation is deterministic and byte-stable")
    {
        GeneratorConfig cfg;
        cfg.n = 150;
        cfg.conflictRate = 0.25;
        cfg.seed = 2;
        auto const a = generateWorkload(cfg);
        auto const b = generateWorkload(cfg);
        CHECK(a == b);
        CHECK(serializeWorkload(a) == serializeWorkload(b));
        cfg.seed = 3;
        CHECK_FALSE(generateWorkload(cfg) == a);
    }

    TEST_CASE("times follow the configured distribution and ops couple to time")
    {
        GeneratorConfig cfg;
        cfg.n = 2000;
        cfg.conflictRate = 0.0;
        auto const w = generateWorkload(cfg);
        Millis lo = 100;
        Millis hi = 0;
        for (auto const& p : w.processes)
        {
            lo = std::min(lo, p.execTimeMs);
            hi = std::max(hi, p.execTimeMs);
            CHECK(p.opCount == p.execTimeMs * 1000);
        }
        CHECK(lo == 1);
        CHECK(hi == 15);
        double const mean = static_cast<double>(w.totalExecTimeMs()) / 2000.0;
        CHECK(mean == doctest::Approx(8.0).epsilon(0.05));

        cfg.timeDist = TimeDistribution::constant(4);
        for (auto const& p : generateWorkload(cfg).processes)
        {
            CHECK(p.execTimeMs == 4);
        }
        CHECK(generateWorkload(cfg).meta["distribution"] == "constant[4]");
    }

    TEST_CASE("invalid rates are rejected")
    {
        GeneratorConfig cfg;
        cfg.conflictRate = 1.2;
        CHECK_THROWS_AS(generateWorkload(cfg), std::invalid_argument);
        cfg.conflictRate = -0.1;
        CHECK_THROWS_AS(generateWorkload(cfg), std::invalid_argument);
        cfg.conflictRate = 0.1;
        cfg.n = 0;
        CHECK_THROWS_AS(generateWorkload(cfg), std::invalid_argument);
    }
}

TEST_SUITE("gas model")
{
    TEST_CASE("clamps to one millisecond")
    {
        CHECK(estimateExecTime(0, {1e-3, 0.0}) == 1);
    }

    TEST_CASE("unit construction")
    {
        CHECK(estimateExecTime(21000, {1.0 / 21000.0, 0.0}) == 1);
    }

    TEST_CASE("linear in gas")
    {
        GasTimeModel const model{1.0 / 5000.0, 2.0};
        for (std::uint64_t gas : {50'000u, 210'000u, 1'000'000u, 7'777'777u})
        {
            auto const once = estimateExecTime(gas, model) - 2;
            auto const twice = estimateExecTime(2 * gas, model) - 2;
            CHECK(std::abs(twice - 2 * once) <= 1);
        }
    }

    TEST_CASE("non-positive slope is rejected")
    {
        CHECK_THROWS_AS(estimateExecTime(10, {0.0, 1.0}), std::invalid_argument);
    }
}
