// Copyright 2026 The txsched Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

// Python extension. Documents cross the boundary as JSON text; the pure
// Python wrapper in txsched/__init__.py turns them into dicts.

#include "txsched/bench.hpp"
#include "txsched/metrics.hpp"
#include "txsched/oracle.hpp"
#include "txsched/scheduler.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace txsched;

namespace
{

std::string
generate(std::size_t n, double conflictRate, std::uint64_t seed,
         std::string const& model, std::uint32_t cores, double costPerOp,
         double costPerIdleMs, bool attestor, Millis timeMin, Millis timeMax,
         double participantDensity)
{
    GeneratorConfig cfg;
    cfg.n = n;
    cfg.conflictRate = conflictRate;
    cfg.seed = seed;
    cfg.model = conflictModelFromString(model);
    cfg.cores = {cores, costPerOp, costPerIdleMs};
    cfg.attestor = attestor;
    cfg.timeDist = TimeDistribution::uniform(timeMin, timeMax);
    cfg.participantDensity = participantDensity;
    return serializeWorkload(generateWorkload(cfg));
}

std::string
scheduleJson(std::string const& workload, std::string const& strategy)
{
    auto const w = parseWorkload(workload);
    Schedule s;
    {
        py::gil_scoped_release release;
        s = schedule(w, Strategy::parse(strategy));
    }
    return serializeSchedule(s);
}

std::string
validateJson(std::string const& workload, std::string const& sched)
{
    auto const w = parseWorkload(workload);
    auto const s = scheduleFromJson(nlohmann::json::parse(sched));
    return validationReportToJson(validateSchedule(s, w)).dump();
}

std::string
metricsJson(std::string const& workload, std::string const& sched, double alphaTime)
{
    auto const w = parseWorkload(workload);
    auto const s = scheduleFromJson(nlohmann::json::parse(sched));
    return metricsToJson(computeMetrics(s, w, Weights(alphaTime))).dump();
}

std::string
oracleJson(std::string const& workload, std::uint64_t nodeBudget, bool pruning)
{
    auto const w = parseWorkload(workload);
    OracleResult r;
    {
        py::gil_scoped_release release;
        r = exactOptimal(w, {nodeBudget, pruning});
    }
    nlohmann::json doc{{"optimalMakespanMs", r.optimalMakespanMs},
                       {"optimal", r.optimal},
                       {"nodesExplored", r.nodesExplored},
                       {"witness", scheduleToJson(r.witness)}};
    return doc.dump();
}

std::string
benchCsv(std::vector<std::size_t> const& processCounts,
         std::vector<double> const& conflictRates,
         std::vector<std::uint64_t> const& seeds,
         std::vector<std::uint32_t> const& coreCounts,
         std::vector<std::string> const& strategies, unsigned threads,
         std::optional<std::filesystem::path> const& outDir)
{
    ExperimentGrid grid;
    grid.processCounts = processCounts;
    grid.conflictRates = conflictRates;
    grid.seeds = seeds;
    grid.coreCounts = coreCounts;
    if (!strategies.empty())
    {
        grid.strategies.clear();
        for (auto const& label : strategies)
        {
            grid.strategies.push_back(Strategy::parse(label));
        }
    }
    grid.threads = threads;
    GridResult result;
    {
        py::gil_scoped_release release;
        result = runGrid(grid, outDir);
    }
    return resultsCsv(result.rows);
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Conflict-aware transaction scheduling core.";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

    m.def("generate_workload", &generate, py::arg("n"), py::arg("conflict_rate"),
          py::arg("seed"), py::arg("model") = "PARTICIPATION", py::arg("cores") = 1,
          py::arg("cost_per_op") = 0.0, py::arg("cost_per_idle_ms") = 0.0,
          py::arg("attestor") = false, py::arg("time_min") = 1, py::arg("time_max") = 15,
          py::arg("participant_density") = 0.3);
    m.def("schedule", &scheduleJson, py::arg("workload"),
          py::arg("strategy") = defaultReportStrategy().label());
    m.def("validate", &validateJson, py::arg("workload"), py::arg("schedule"));
    m.def("metrics", &metricsJson, py::arg("workload"), py::arg("schedule"),
          py::arg("alpha_time") = 1.0);
    m.def("exact_optimal", &oracleJson, py::arg("workload"),
          py::arg("node_budget") = OracleOptions{}.nodeBudget, py::arg("pruning") = true);
    m.def(
        "upper_bound_closed_form",
        [](std::size_t n, double meanT, std::uint32_t cores, double cr) {
            return upperBoundClosedForm({n, meanT, cores, cr});
        },
        py::arg("n"), py::arg("mean_t"), py::arg("m"), py::arg("cr"));
    m.def(
        "upper_bound_chromatic",
        [](std::size_t n, double meanT, std::uint32_t cores, double cr) {
            return upperBoundChromatic({n, meanT, cores, cr});
        },
        py::arg("n"), py::arg("mean_t"), py::arg("m"), py::arg("cr"));
    m.def("run_bench", &benchCsv, py::arg("process_counts"), py::arg("conflict_rates"),
          py::arg("seeds"), py::arg("core_counts"),
          py::arg("strategies") = std::vector<std::string>{}, py::arg("threads") = 1,
          py::arg("out_dir") = std::nullopt);
}
