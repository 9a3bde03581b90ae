// Copyright 2026 The txsched Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "txsched/bench.hpp"

#include "txsched/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace txsched
{

std::string
toString(Mode mode)
{
    return mode == Mode::Proposer ? "proposer" : "attestor";
}

std::vector<Strategy>
defaultStrategies()
{
    std::vector<Strategy> out;
    for (auto s : kAllSortTypes)
    {
        out.push_back(Strategy{s, AssignType::Loose, 3});
    }
    return out;
}

void
ExperimentGrid::validate() const
{
    if (processCounts.empty() || conflictRates.empty() || seeds.empty() ||
        coreCounts.empty() || strategies.empty() || modes.empty())
    {
        throw std::invalid_argument("experiment grid lists must be non-empty");
    }
    for (auto r : conflictRates)
    {
        if (!(r >= 0.0 && r <= 1.0))
        {
            throw std::invalid_argument("conflict rates must lie in [0, 1]");
        }
    }
    for (auto n : processCounts)
    {
        if (n < 1)
        {
            throw std::invalid_argument("process counts must be positive");
        }
    }
    for (auto m : coreCounts)
    {
        if (m < 1)
        {
            throw std::invalid_argument("core counts must be positive");
        }
    }
}

namespace
{

std::string
fixed(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string
instanceStem(std::size_t n, double rate, std::uint64_t seed)
{
    return "n" + std::to_string(n) + "_cr" + fixed(rate, 2) + "_s" +
           std::to_string(seed);
}

std::string
fileSafe(std::string label)
{
    std::replace(label.begin(), label.end(), ':', '-');
    return label;
}

struct Cell
{
    std::size_t n;
    double rate;
    std::uint64_t seed;
};

// Index of a record inside one cell, in canonical (m, mode, strategy) order.
std::size_t
localIndex(ExperimentGrid const& g, std::size_t mi, std::size_t modei,
           std::size_t si)
{
    return (mi * g.modes.size() + modei) * g.strategies.size() + si;
}

std::vector<InstanceRecord>
runCell(ExperimentGrid const& g, Cell const& cell,
        std::optional<std::filesystem::path> const& dumpDir)
{
    GeneratorConfig cfg;
    cfg.n = cell.n;
    cfg.conflictRate = cell.rate;
    cfg.model = g.model;
    cfg.seed = cell.seed;
    cfg.cores = CoreProfile{1, g.costPerOp, g.costPerIdleMs};
    cfg.timeDist = g.timeDist;
    cfg.opsPerMs = g.opsPerMs;
    cfg.participantDensity = g.participantDensity;
    Workload const base = generateWorkload(cfg);
    if (dumpDir)
    {
        saveWorkload(base, *dumpDir / "workloads" /
                               (instanceStem(cell.n, cell.rate, cell.seed) +
                                ".json"));
    }

    std::vector<InstanceRecord> out(g.coreCounts.size() * g.modes.size() *
                                    g.strategies.size());
    for (std::size_t mi = 0; mi < g.coreCounts.size(); ++mi)
    {
        for (std::size_t modei = 0; modei < g.modes.size(); ++modei)
        {
            Workload w = base;
            w.cores.coreCount = g.coreCounts[mi];
            w.attestor = g.modes[modei] == Mode::Attestor;
            for (std::size_t si = 0; si < g.strategies.size(); ++si)
            {
                auto const& strategy = g.strategies[si];
                auto const sch = schedule(w, strategy);
                auto report = validateSchedule(sch, w);
                if (!report.ok)
                {
                    throw GridValidationError(
                        "schedule for " +
                            instanceStem(cell.n, cell.rate, cell.seed) +
                            " m=" + std::to_string(w.cores.coreCount) + " " +
                            toString(g.modes[modei]) + " " + strategy.label() +
                            " failed validation",
                        std::move(report));
                }
                if (dumpDir)
                {
                    saveSchedule(sch,
                                 *dumpDir / "schedules" /
                                     (instanceStem(cell.n, cell.rate, cell.seed) +
                                      "_m" + std::to_string(w.cores.coreCount) +
                                      "_" + toString(g.modes[modei]) + "_" +
                                      fileSafe(strategy.label()) + ".json"));
                }
                auto& rec = out[localIndex(g, mi, modei, si)];
                rec.n = cell.n;
                rec.conflictRate = cell.rate;
                rec.seed = cell.seed;
                rec.m = w.cores.coreCount;
                rec.mode = g.modes[modei];
                rec.strategy = strategy;
                rec.horizonMs = sch.horizonMs;
                rec.makespanMs = sch.scheduleMakespanMs;
                rec.wallTimeMs = sch.wallTimeMs;
                rec.speedup = computeSpeedups(sch).makespanOnly;
            }
        }
    }
    return out;
}

double
median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    auto const k = v.size();
    return k % 2 == 1 ? v[k / 2] : (v[k / 2 - 1] + v[k / 2]) / 2.0;
}

void
writeFile(std::filesystem::path const& path, std::string const& body)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
    {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << body;
}

} // namespace

GridResult
runGrid(ExperimentGrid const& grid,
        std::optional<std::filesystem::path> const& outDir)
{
    grid.validate();
    std::optional<std::filesystem::path> dumpDir;
    if (outDir)
    {
        std::filesystem::create_directories(*outDir);
        if (grid.dumpInstances)
        {
            dumpDir = outDir;
            std::filesystem::create_directories(*outDir / "workloads");
            std::filesystem::create_directories(*outDir / "schedules");
        }
    }

    std::vector<Cell> cells;
    for (auto n : grid.processCounts)
    {
        for (auto rate : grid.conflictRates)
        {
            for (auto seed : grid.seeds)
            {
                cells.push_back({n, rate, seed});
            }
        }
    }

    std::vector<std::vector<InstanceRecord>> perCell(cells.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failureMutex;
    auto worker = [&] {
        for (;;)
        {
            auto const i = next.fetch_add(1);
            if (i >= cells.size())
            {
                return;
            }
            try
            {
                perCell[i] = runCell(grid, cells[i], dumpDir);
            }
            catch (...)
            {
                std::lock_guard lock(failureMutex);
                if (!failure)
                {
                    failure = std::current_exception();
                }
                next = cells.size();
                return;
            }
        }
    };
    auto const threads = std::max(1u, grid.threads);
    if (threads == 1)
    {
        worker();
    }
    else
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
        {
            pool.emplace_back(worker);
        }
    }
    if (failure)
    {
        std::rethrow_exception(failure);
    }

    GridResult result;
    auto const perCellCount =
        grid.coreCounts.size() * grid.modes.size() * grid.strategies.size();
    auto const seedCount = grid.seeds.size();
    std::size_t group = 0;
    std::size_t cellBase = 0;
    for (auto n : grid.processCounts)
    {
        for (auto rate : grid.conflictRates)
        {
            ++group;
            for (std::size_t s = 0; s < seedCount; ++s)
            {
                auto const& recs = perCell[cellBase + s];
                result.instances.insert(result.instances.end(), recs.begin(),
                                        recs.end());
            }
            for (std::size_t k = 0; k < perCellCount; ++k)
            {
                ResultRow row;
                auto const& head = perCell[cellBase][k];
                row.group = group;
                row.n = n;
                row.conflictRate = rate;
                row.m = head.m;
                row.mode = head.mode;
                row.strategy = head.strategy;
                row.speedupMin = head.speedup;
                row.speedupMax = head.speedup;
                std::vector<double> walls;
                for (std::size_t s = 0; s < seedCount; ++s)
                {
                    auto const& rec = perCell[cellBase + s][k];
                    row.speedupMean += rec.speedup;
                    row.speedupMin = std::min(row.speedupMin, rec.speedup);
                    row.speedupMax = std::max(row.speedupMax, rec.speedup);
                    row.makespanMsMean += static_cast<double>(rec.makespanMs);
                    row.horizonMsMean += static_cast<double>(rec.horizonMs);
                    row.wallMsMean += rec.wallTimeMs;
                    walls.push_back(rec.wallTimeMs);
                }
                auto const k_ = static_cast<double>(seedCount);
                row.speedupMean /= k_;
                row.makespanMsMean /= k_;
                row.horizonMsMean /= k_;
                row.wallMsMean /= k_;
                row.wallMsMedian = median(std::move(walls));
                BoundParams const bp{n, row.horizonMsMean / static_cast<double>(n),
                                     row.m, rate};
                row.ubClosedMs = upperBoundClosedForm(bp);
                row.ubChromaticMs = upperBoundChromatic(bp);
                result.rows.push_back(row);
            }
            cellBase += seedCount;
        }
    }

    if (outDir)
    {
        writeFile(*outDir / "results.csv", resultsCsv(result.rows));
        writeFile(*outDir / "table_speedups.md",
                  speedupTableMarkdown(grid, result.rows));
        if (std::find(grid.coreCounts.begin(), grid.coreCounts.end(), 3u) !=
            grid.coreCounts.end())
        {
            writeFile(*outDir / "table_walltime_m3.md",
                      wallTimeTableMarkdown(grid, result.rows, 3));
        }
    }
    return result;
}

std::string
resultsCsv(std::vector<ResultRow> const& rows)
{
    std::ostringstream out;
    out << kCsvHeader << "\n";
    for (auto const& r : rows)
    {
        out << r.group << ',' << r.n << ',' << fixed(r.conflictRate, 4) << ','
            << r.m << ',' << toString(r.mode) << ',' << r.strategy.label() << ','
            << fixed(r.speedupMean, 6) << ',' << fixed(r.speedupMin, 6) << ','
            << fixed(r.speedupMax, 6) << ',' << fixed(r.makespanMsMean, 4)
            << ',' << fixed(r.wallMsMean, 6) << ',' << fixed(r.wallMsMedian, 6)
            << ',' << fixed(r.horizonMsMean, 4) << ',' << fixed(r.ubClosedMs, 4)
            << ',' << fixed(r.ubChromaticMs, 4) << "\n";
    }
    return out.str();
}

namespace
{

using RowKey = std::tuple<std::size_t, std::uint32_t, Mode>;

std::map<RowKey, ResultRow const*>
rowsFor(Strategy const& strategy, std::vector<ResultRow> const& rows)
{
    std::map<RowKey, ResultRow const*> out;
    for (auto const& r : rows)
    {
        if (r.strategy == strategy)
        {
            out[{r.group, r.m, r.mode}] = &r;
        }
    }
    return out;
}

} // namespace

std::string
speedupTableMarkdown(ExperimentGrid const& grid,
                     std::vector<ResultRow> const& rows)
{
    auto const index = rowsFor(grid.reportStrategy, rows);
    std::ostringstream out;
    out << "Speedups (horizon / makespan), strategy " << grid.reportStrategy.label()
        << ", mean over seeds\n\n";
    out << "| Group | Process Count | Conflict % |";
    for (auto m : grid.coreCounts)
    {
        for (auto mode : grid.modes)
        {
            out << ' ' << m << " cores " << toString(mode) << " |";
        }
    }
    out << "\n|---|---|---|";
    for (std::size_t i = 0; i < grid.coreCounts.size() * grid.modes.size(); ++i)
    {
        out << "---|";
    }
    out << "\n";

    std::size_t group = 0;
    std::vector<double> colSum(grid.coreCounts.size() * grid.modes.size(), 0.0);
    double nSum = 0.0;
    double rateSum = 0.0;
    for (auto n : grid.processCounts)
    {
        for (auto rate : grid.conflictRates)
        {
            ++group;
            nSum += static_cast<double>(n);
            rateSum += rate * 100.0;
            out << "| " << group << " | " << n << " | " << fixed(rate * 100.0, 0)
                << " |";
            std::size_t col = 0;
            for (auto m : grid.coreCounts)
            {
                for (auto mode : grid.modes)
                {
                    auto it = index.find({group, m, mode});
                    if (it == index.end())
                    {
                        out << " - |";
                    }
                    else
                    {
                        out << ' ' << fixed(it->second->speedupMean, 2) << " |";
                        colSum[col] += it->second->speedupMean;
                    }
                    ++col;
                }
            }
            out << "\n";
        }
    }
    auto const groups = static_cast<double>(std::max<std::size_t>(group, 1));
    out << "| **AVG** | " << fixed(nSum / groups, 0) << " | "
        << fixed(rateSum / groups, 0) << " |";
    for (auto s : colSum)
    {
        out << ' ' << fixed(s / groups, 2) << " |";
    }
    out << "\n";
    return out.str();
}

std::string
wallTimeTableMarkdown(ExperimentGrid const& grid,
                      std::vector<ResultRow> const& rows, std::uint32_t m)
{
    auto const index = rowsFor(grid.reportStrategy, rows);
    std::ostringstream out;
    out << "Greedy scheduler on " << m << " cores, proposer, strategy "
        << grid.reportStrategy.label() << "\n\n";
    out << "| Grp | Procs | Conf. % | Wtime mean (ms) | Wtime median (ms) | "
           "Mkspn (ms) | Horizon (ms) | UB-closed (ms) | UB-chromatic (ms) |\n";
    out << "|---|---|---|---|---|---|---|---|---|\n";
    std::size_t group = 0;
    for (auto n : grid.processCounts)
    {
        for (auto rate : grid.conflictRates)
        {
            ++group;
            auto it = index.find({group, m, Mode::Proposer});
            if (it == index.end())
            {
                continue;
            }
            auto const& r = *it->second;
            out << "| " << group << " | " << n << " | " << fixed(rate * 100.0, 0)
                << " | " << fixed(r.wallMsMean, 4) << " | "
                << fixed(r.wallMsMedian, 4) << " | "
                << fixed(r.makespanMsMean, 2) << " | "
                << fixed(r.horizonMsMean, 2) << " | " << fixed(r.ubClosedMs, 2)
                << " | " << fixed(r.ubChromaticMs, 2) << " |\n";
        }
    }
    return out.str();
}

} // namespace txsched
