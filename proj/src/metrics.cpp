// Copyright 2026 The txsched Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "txsched/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace txsched
{

Millis
computeTe(Schedule const& s)
{
    Millis te = 0;
    for (auto const& a : s.assignments)
    {
        te = std::max(te, a.finishMs);
    }
    return te;
}

CoreAccounting
computeIdleAndEnergy(Schedule const& s, Workload const& w)
{
    auto const m = w.cores.coreCount;
    CoreAccounting acc;
    acc.busyPerCoreMs.assign(m, 0);
    acc.idlePerCoreMs.assign(m, 0);
    acc.energyPerCore.assign(m, 0.0);
    std::vector<std::int64_t> ops(m, 0);
    for (auto const& a : s.assignments)
    {
        if (a.coreId >= m || a.processId >= w.size())
        {
            throw std::invalid_argument("assignment references an unknown "
                                        "core or process");
        }
        acc.busyPerCoreMs[a.coreId] += a.finishMs - a.startMs;
        ops[a.coreId] += w.processes[a.processId].opCount;
    }
    auto const te = computeTe(s);
    for (std::uint32_t k = 0; k < m; ++k)
    {
        acc.idlePerCoreMs[k] = te - acc.busyPerCoreMs[k];
        acc.energyPerCore[k] =
            static_cast<double>(ops[k]) * w.cores.costPerOp +
            static_cast<double>(acc.idlePerCoreMs[k]) * w.cores.costPerIdleMs;
        acc.pce += acc.energyPerCore[k];
    }
    return acc;
}

double
weightedObjective(Millis te, double pce, Weights const& weights)
{
    return weights.alphaTime() * static_cast<double>(te) +
           weights.alphaCost() * pce;
}

Speedups
computeSpeedups(Schedule const& s)
{
    if (s.scheduleMakespanMs <= 0)
    {
        throw std::invalid_argument("speedup needs a positive makespan");
    }
    auto const horizon = static_cast<double>(s.horizonMs);
    auto const makespan = static_cast<double>(s.scheduleMakespanMs);
    return {horizon / makespan, horizon / (makespan + s.wallTimeMs)};
}

MetricsReport
computeMetrics(Schedule const& s, Workload const& w, Weights const& weights)
{
    MetricsReport r;
    r.teMs = computeTe(s);
    r.cores = computeIdleAndEnergy(s, w);
    r.weightedObjective = weightedObjective(r.teMs, r.cores.pce, weights);
    if (s.scheduleMakespanMs > 0)
    {
        r.speedup = computeSpeedups(s);
    }
    return r;
}

nlohmann::json
metricsToJson(MetricsReport const& r)
{
    return {{"teMs", r.teMs},
            {"busyPerCoreMs", r.cores.busyPerCoreMs},
            {"idlePerCoreMs", r.cores.idlePerCoreMs},
            {"energyPerCore", r.cores.energyPerCore},
            {"pce", r.cores.pce},
            {"weightedObjective", r.weightedObjective},
            {"speedupMakespanOnly", r.speedup.makespanOnly},
            {"speedupTotal", r.speedup.total}};
}

namespace
{

void
checkParams(BoundParams const& p)
{
    if (p.n < 1 || p.m < 1 || !(p.cr >= 0.0 && p.cr <= 1.0) ||
        !(p.meanTimeMs >= 0.0))
    {
        throw std::invalid_argument(
            "bound parameters need n >= 1, m >= 1, t >= 0, 0 <= cr <= 1");
    }
}

// ln(1 / (1 - cr)) without cancellation for tiny cr.
double
logInverseComplement(double cr)
{
    return -std::log1p(-cr);
}

} // namespace

double
upperBoundClosedForm(BoundParams const& p)
{
    checkParams(p);
    auto const n = static_cast<double>(p.n);
    auto const perCore = p.meanTimeMs / static_cast<double>(p.m);
    if (p.cr >= 1.0)
    {
        return n * p.meanTimeMs;
    }
    if (p.cr == 0.0)
    {
        return n / 2.0 * perCore;
    }
    return n * p.cr / (2.0 * logInverseComplement(p.cr)) * perCore;
}

double
upperBoundChromatic(BoundParams const& p)
{
    checkParams(p);
    auto const n = static_cast<double>(p.n);
    auto const m = static_cast<double>(p.m);
    if (p.cr >= 1.0)
    {
        return p.meanTimeMs * n;
    }
    if (p.cr == 0.0 || p.n < 2)
    {
        return p.meanTimeMs * std::ceil(n / m);
    }
    double const chromatic =
        n * logInverseComplement(p.cr) / (2.0 * std::log(n));
    return p.meanTimeMs * std::ceil(chromatic / m);
}

} // namespace txsched
