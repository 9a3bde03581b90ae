// Copyright 2026 The txsched Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "txsched/model.hpp"
#include "txsched/oracle.hpp"
#include "txsched/scheduler.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace txsched
{

enum class Mode
{
    Proposer,
    Attestor,
};

std::string toString(Mode mode);

// Default sweep: every sort order under LOOSE with three review rounds.
std::vector<Strategy> defaultStrategies();

inline Strategy
defaultReportStrategy()
{
    return Strategy{SortType::MCDF, AssignType::Loose, 3};
}

struct ExperimentGrid
{
    std::vector<std::size_t> processCounts{50, 100, 150, 200};
    std::vector<double> conflictRates{0.15, 0.25, 0.35, 0.45};
    std::vector<std::uint64_t> seeds{1, 2, 3};
    std::vector<std::uint32_t> coreCounts{1, 2, 4, 8, 16, 32};
    std::vector<Strategy> strategies = defaultStrategies();
    std::vector<Mode> modes{Mode::Proposer, Mode::Attestor};

    ConflictModel model = ConflictModel::Participation;
    TimeDistribution timeDist;
    std::int64_t opsPerMs = 1000;
    double participantDensity = 0.3;
    double costPerOp = 0.0;
    double costPerIdleMs = 0.0;

    // Strategy used for the markdown tables.
    Strategy reportStrategy = defaultReportStrategy();
    // Worker threads over (n, rate, seed) cells. Output bytes do not depend
    // on it.
    unsigned threads = 1;
    // Also write every generated workload and schedule under outDir.
    bool dumpInstances = false;

    void validate() const;
};

struct InstanceRecord
{
    std::size_t n = 0;
    double conflictRate = 0.0;
    std::uint64_t seed = 0;
    std::uint32_t m = 0;
    Mode mode = Mode::Proposer;
    Strategy strategy;
    Millis horizonMs = 0;
    Millis makespanMs = 0;
    double wallTimeMs = 0.0;
    double speedup = 0.0;
};

struct ResultRow
{
    std::size_t group = 0;
    std::size_t n = 0;
    double conflictRate = 0.0;
    std::uint32_t m = 0;
    Mode mode = Mode::Proposer;
    Strategy strategy;
    double speedupMean = 0.0;
    double speedupMin = 0.0;
    double speedupMax = 0.0;
    double makespanMsMean = 0.0;
    double wallMsMean = 0.0;
    double wallMsMedian = 0.0;
    double horizonMsMean = 0.0;
    double ubClosedMs = 0.0;
    double ubChromaticMs = 0.0;
};

struct GridResult
{
    std::vector<ResultRow> rows;          // canonical order
    std::vector<InstanceRecord> instances; // canonical order
};

// A produced schedule failed validation. Indicates a scheduler bug.
class GridValidationError : public std::runtime_error
{
  public:
    GridValidationError(std::string const& what, ValidationReport report)
        : std::runtime_error(what), mReport(std::move(report))
    {
    }
    ValidationReport const&
    report() const noexcept
    {
        return mReport;
    }

  private:
    ValidationReport mReport;
};

// Runs every (n, rate, seed, m, mode, strategy) combination and aggregates
// over seeds. When outDir is set, writes results.csv, table_speedups.md and,
// if m = 3 is in the grid, table_walltime_m3.md.
GridResult runGrid(ExperimentGrid const& grid,
                   std::optional<std::filesystem::path> const& outDir = {});

inline constexpr char kCsvHeader[] =
    "group,n,conflict_rate,m,mode,strategy,speedup_mean,speedup_min,"
    "speedup_max,makespan_ms_mean,wall_ms_mean,wall_ms_median,"
    "horizon_ms_mean,ub_closed_ms,ub_chromatic_ms";

std::string resultsCsv(std::vector<ResultRow> const& rows);
std::string speedupTableMarkdown(ExperimentGrid const& grid,
                                 std::vector<ResultRow> const& rows);
std::string wallTimeTableMarkdown(ExperimentGrid const& grid,
                                  std::vector<ResultRow> const& rows,
                                  std::uint32_t m);

// Command-line entry point. Returns 0 on success, 1 on a validation
// failure, 2 on a usage error.
int runCli(int argc, char const* const* argv);

} // namespace txsched
