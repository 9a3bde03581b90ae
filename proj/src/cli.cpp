// Copyright 2026 The txsched Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "txsched/bench.hpp"
#include "txsched/metrics.hpp"
#include "txsched/oracle.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace txsched
{
namespace
{

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

// Unreadable or invalid input files.
class UsageError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

void
emit(std::string const& path, std::string const& body)
{
    if (path.empty() || path == "-")
    {
        std::cout << body;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
    {
        throw UsageError("cannot write " + path);
    }
    out << body;
}

std::string
number(double v)
{
    std::ostringstream out;
    out << std::setprecision(12) << v;
    return out.str();
}

struct GenerateArgs
{
    std::size_t n = 0;
    double cr = 0.0;
    std::string model = "PARTICIPATION";
    std::uint64_t seed = 0;
    std::uint32_t cores = 1;
    double costPerOp = 0.0;
    double costPerIdle = 0.0;
    bool attestor = false;
    Millis timeMin = 1;
    Millis timeMax = 15;
    Millis constantTime = 0;
    std::int64_t opsPerMs = 1000;
    double participantDensity = 0.3;
    std::string out = "-";
};

struct ScheduleArgs
{
    std::string workload;
    std::string strategy;
    std::string sort = "MCDF";
    std::string assign = "LOOSE";
    std::uint32_t rounds = 3;
    std::uint32_t cores = 0;
    std::string mode;
    double alphaTime = 1.0;
    std::string out;
    std::string metricsOut = "-";
};

struct ValidateArgs
{
    std::string workload;
    std::string schedule;
};

struct BoundArgs
{
    std::size_t n = 0;
    double meanT = 0.0;
    std::uint32_t m = 0;
    double cr = 0.0;
    bool json = false;
};

struct BenchArgs
{
    std::string outDir;
    std::vector<std::size_t> n;
    std::vector<double> cr;
    std::vector<std::uint64_t> seeds;
    std::vector<std::uint32_t> m;
    std::vector<std::string> strategies;
    std::string reportStrategy;
    std::string model = "PARTICIPATION";
    std::string modes;
    unsigned threads = 1;
    bool dump = false;
    Millis timeMin = 1;
    Millis timeMax = 15;
    double participantDensity = 0.3;
};

struct OracleArgs
{
    std::string workload;
    std::uint64_t budget = 50'000'000;
    bool noPruning = false;
    std::string out;
};

Workload
readWorkload(std::string const& path)
{
    try
    {
        return loadWorkload(path);
    }
    catch (std::exception const& e)
    {
        throw UsageError(e.what());
    }
}

int
doGenerate(GenerateArgs const& a)
{
    GeneratorConfig cfg;
    cfg.n = a.n;
    cfg.conflictRate = a.cr;
    cfg.model = conflictModelFromString(a.model);
    cfg.seed = a.seed;
    cfg.cores = CoreProfile{a.cores, a.costPerOp, a.costPerIdle};
    cfg.attestor = a.attestor;
    cfg.timeDist = a.constantTime > 0
                       ? TimeDistribution::constant(a.constantTime)
                       : TimeDistribution::uniform(a.timeMin, a.timeMax);
    cfg.opsPerMs = a.opsPerMs;
    cfg.participantDensity = a.participantDensity;
    emit(a.out, serializeWorkload(generateWorkload(cfg)));
    return kExitOk;
}

int
doSchedule(ScheduleArgs const& a)
{
    Workload w = readWorkload(a.workload);
    if (a.cores > 0)
    {
        w.cores.coreCount = a.cores;
    }
    if (a.mode == "attestor")
    {
        w.attestor = true;
    }
    else if (a.mode == "proposer")
    {
        w.attestor = false;
    }
    Strategy strategy;
    if (!a.strategy.empty())
    {
        strategy = Strategy::parse(a.strategy);
    }
    else
    {
        strategy.sortType = sortTypeFromString(a.sort);
        strategy.assignType = assignTypeFromString(a.assign);
        strategy.looseReviewRound = a.rounds;
    }
    auto const sch = schedule(w, strategy);
    auto const report = validateSchedule(sch, w);
    auto const metrics = computeMetrics(sch, w, Weights(a.alphaTime));

    nlohmann::json summary = metricsToJson(metrics);
    summary["strategy"] = strategy.label();
    summary["mode"] = w.attestor ? "attestor" : "proposer";
    summary["coreCount"] = w.cores.coreCount;
    summary["horizonMs"] = sch.horizonMs;
    summary["scheduleMakespanMs"] = sch.scheduleMakespanMs;
    summary["wallTimeMs"] = sch.wallTimeMs;
    summary["valid"] = report.ok;

    if (!a.out.empty())
    {
        emit(a.out, serializeSchedule(sch));
    }
    emit(a.metricsOut, summary.dump(1) + "\n");
    if (!report.ok)
    {
        std::cerr << validationReportToJson(report).dump(1) << "\n";
        return kExitViolation;
    }
    return kExitOk;
}

int
doValidate(ValidateArgs const& a)
{
    auto const w = readWorkload(a.workload);
    Schedule s;
    try
    {
        s = loadSchedule(a.schedule);
    }
    catch (std::exception const& e)
    {
        throw UsageError(e.what());
    }
    auto const report = validateSchedule(s, w);
    std::cout << validationReportToJson(report).dump(1) << "\n";
    return report.ok ? kExitOk : kExitViolation;
}

int
doBound(BoundArgs const& a)
{
    BoundParams const p{a.n, a.meanT, a.m, a.cr};
    auto const closed = upperBoundClosedForm(p);
    auto const chromatic = upperBoundChromatic(p);
    if (a.json)
    {
        nlohmann::json out{{"ubClosedMs", closed}, {"ubChromaticMs", chromatic}};
        std::cout << out.dump(1) << "\n";
    }
    else
    {
        std::cout << "UB-closed: " << number(closed) << "\n"
                  << "UB-chromatic: " << number(chromatic) << "\n";
    }
    return kExitOk;
}

int
doBench(BenchArgs const& a)
{
    ExperimentGrid grid;
    if (!a.n.empty())
    {
        grid.processCounts = a.n;
    }
    if (!a.cr.empty())
    {
        grid.conflictRates = a.cr;
    }
    if (!a.seeds.empty())
    {
        grid.seeds = a.seeds;
    }
    if (!a.m.empty())
    {
        grid.coreCounts = a.m;
    }
    if (!a.strategies.empty())
    {
        grid.strategies.clear();
        for (auto const& label : a.strategies)
        {
            grid.strategies.push_back(Strategy::parse(label));
        }
    }
    if (!a.reportStrategy.empty())
    {
        grid.reportStrategy = Strategy::parse(a.reportStrategy);
    }
    else if (std::find(grid.strategies.begin(), grid.strategies.end(),
                       grid.reportStrategy) == grid.strategies.end())
    {
        grid.reportStrategy = grid.strategies.front();
    }
    if (a.modes == "proposer")
    {
        grid.modes = {Mode::Proposer};
    }
    else if (a.modes == "attestor")
    {
        grid.modes = {Mode::Attestor};
    }
    grid.model = conflictModelFromString(a.model);
    grid.threads = a.threads;
    grid.dumpInstances = a.dump;
    grid.timeDist = TimeDistribution::uniform(a.timeMin, a.timeMax);
    grid.participantDensity = a.participantDensity;

    try
    {
        auto const result = runGrid(grid, std::filesystem::path(a.outDir));
        std::cout << "wrote " << result.rows.size() << " rows from "
                  << result.instances.size() << " schedules to " << a.outDir
                  << "\n";
    }
    catch (GridValidationError const& e)
    {
        std::cerr << e.what() << "\n"
                  << validationReportToJson(e.report()).dump(1) << "\n";
        return kExitViolation;
    }
    return kExitOk;
}

int
doOracle(OracleArgs const& a)
{
    auto const w = readWorkload(a.workload);
    OracleOptions opts;
    opts.nodeBudget = a.budget;
    opts.pruning = !a.noPruning;
    auto const result = exactOptimal(w, opts);
    nlohmann::json out{{"optimalMakespanMs", result.optimalMakespanMs},
                       {"optimal", result.optimal},
                       {"nodesExplored", result.nodesExplored}};
    if (!a.out.empty())
    {
        emit(a.out, serializeSchedule(result.witness));
    }
    std::cout << out.dump(1) << "\n";
    return kExitOk;
}

} // namespace

int
runCli(int argc, char const* const* argv)
{
    CLI::App app{"Conflict-aware transaction scheduler"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Generate a synthetic workload");
    generate->add_option("--n", gen.n, "Process count")->required()->check(CLI::PositiveNumber);
    generate->add_option("--cr", gen.cr, "Conflict rate")->required()->check(CLI::Range(0.0, 1.0));
    generate->add_option("--model", gen.model, "PARTICIPATION or PAIRWISE");
    generate->add_option("--seed", gen.seed, "Random seed")->required();
    generate->add_option("--cores", gen.cores, "Core count")->check(CLI::PositiveNumber);
    generate->add_option("--cost-per-op", gen.costPerOp);
    generate->add_option("--cost-per-idle", gen.costPerIdle);
    generate->add_flag("--attestor", gen.attestor, "Mark the workload for attestor mode");
    generate->add_option("--time-min", gen.timeMin, "Uniform execution time lower bound (ms)");
    generate->add_option("--time-max", gen.timeMax, "Uniform execution time upper bound (ms)");
    generate->add_option("--constant-time", gen.constantTime, "Give every process this time (ms)");
    generate->add_option("--ops-per-ms", gen.opsPerMs);
    generate->add_option("--participant-density", gen.participantDensity,
                         "PARTICIPATION: extra edges per participant");
    generate->add_option("--out", gen.out, "Output file, - for stdout");

    ScheduleArgs sch;
    auto* scheduleCmd = app.add_subcommand("schedule", "Schedule a workload file");
    scheduleCmd->add_option("--workload", sch.workload)->required();
    scheduleCmd->add_option("--strategy", sch.strategy, "Label like LOOSE:MCDF:3");
    scheduleCmd->add_option("--sort", sch.sort, "FIFO, MCCF, MCDF, LCCF or LCDF");
    scheduleCmd->add_option("--assign", sch.assign, "LOOSE or STRICT");
    scheduleCmd->add_option("--rounds", sch.rounds, "Loose review rounds");
    scheduleCmd->add_option("--cores", sch.cores, "Override the workload core count");
    scheduleCmd->add_option("--mode", sch.mode, "Override mode")
        ->check(CLI::IsMember({"proposer", "attestor"}));
    scheduleCmd->add_option("--alpha-time", sch.alphaTime)->check(CLI::Range(0.0, 1.0));
    scheduleCmd->add_option("--out", sch.out, "Schedule JSON output file");
    scheduleCmd->add_option("--metrics-out", sch.metricsOut, "Metrics JSON, - for stdout");

    ValidateArgs val;
    auto* validate = app.add_subcommand("validate", "Check a schedule against a workload");
    validate->add_option("--workload", val.workload)->required();
    validate->add_option("--schedule", val.schedule)->required();

    BoundArgs bnd;
    auto* bound = app.add_subcommand("bound", "Analytic makespan upper bounds");
    bound->add_option("--n", bnd.n)->required()->check(CLI::PositiveNumber);
    bound->add_option("--mean-t", bnd.meanT)->required()->check(CLI::NonNegativeNumber);
    bound->add_option("--m", bnd.m)->required()->check(CLI::PositiveNumber);
    bound->add_option("--cr", bnd.cr)->required()->check(CLI::Range(0.0, 1.0));
    bound->add_flag("--json", bnd.json);

    BenchArgs bench;
    auto* benchCmd = app.add_subcommand("bench", "Run the experiment grid");
    benchCmd->add_option("--out-dir", bench.outDir)->required();
    benchCmd->add_option("--n", bench.n)->delimiter(',');
    benchCmd->add_option("--cr", bench.cr)->delimiter(',');
    benchCmd->add_option("--seeds", bench.seeds)->delimiter(',');
    benchCmd->add_option("--m", bench.m)->delimiter(',');
    benchCmd->add_option("--strategies", bench.strategies)->delimiter(',');
    benchCmd->add_option("--report-strategy", bench.reportStrategy);
    benchCmd->add_option("--model", bench.model);
    benchCmd->add_option("--modes", bench.modes)->check(CLI::IsMember({"both", "proposer", "attestor"}));
    benchCmd->add_option("--threads", bench.threads)->check(CLI::PositiveNumber);
    benchCmd->add_flag("--dump-instances", bench.dump);
    benchCmd->add_option("--time-min", bench.timeMin);
    benchCmd->add_option("--time-max", bench.timeMax);
    benchCmd->add_option("--participant-density", bench.participantDensity);

    OracleArgs orc;
    auto* oracle = app.add_subcommand("oracle", "Exact optimum for a small workload");
    oracle->add_option("--workload", orc.workload)->required();
    oracle->add_option("--budget", orc.budget, "Search node budget");
    oracle->add_flag("--no-pruning", orc.noPruning);
    oracle->add_option("--out", orc.out, "Witness schedule JSON output");

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::CallForHelp const& e)
    {
        return app.exit(e);
    }
    catch (CLI::CallForAllHelp const& e)
    {
        return app.exit(e);
    }
    catch (CLI::ParseError const& e)
    {
        app.exit(e);
        return kExitUsage;
    }

    try
    {
        if (generate->parsed())
        {
            return doGenerate(gen);
        }
        if (scheduleCmd->parsed())
        {
            return doSchedule(sch);
        }
        if (validate->parsed())
        {
            return doValidate(val);
        }
        if (bound->parsed())
        {
            return doBound(bnd);
        }
        if (benchCmd->parsed())
        {
            return doBench(bench);
        }
        if (oracle->parsed())
        {
            return doOracle(orc);
        }
    }
    catch (std::exception const& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace txsched
