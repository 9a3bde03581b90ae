// Copyright 2026 The txsched Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "txsched/model.hpp"
#include "txsched/scheduler.hpp"

#include <vector>

namespace txsched
{

struct CoreAccounting
{
    std::vector<Millis> busyPerCoreMs;
    // Idle is measured against the global makespan: a core stays powered
    // until the whole block finishes.
    std::vector<Millis> idlePerCoreMs;
    std::vector<double> energyPerCore;
    double pce = 0.0;
};

struct Speedups
{
    double makespanOnly = 0.0; // horizon / makespan
    double total = 0.0;        // horizon / (makespan + wall time)
};

struct MetricsReport
{
    Millis teMs = 0;
    CoreAccounting cores;
    double weightedObjective = 0.0;
    Speedups speedup;
};

// Latest finish over all assignments; 0 for an empty schedule.
Millis computeTe(Schedule const& s);

CoreAccounting computeIdleAndEnergy(Schedule const& s, Workload const& w);

// Reported after the fact; the greedy scheduler never consults it.
double weightedObjective(Millis te, double pce, Weights const& weights);

// Throws std::invalid_argument when the makespan is not positive.
Speedups computeSpeedups(Schedule const& s);

MetricsReport computeMetrics(Schedule const& s, Workload const& w,
                             Weights const& weights);

nlohmann::json metricsToJson(MetricsReport const& r);

struct BoundParams
{
    std::size_t n = 1;
    double meanTimeMs = 1.0;
    std::uint32_t m = 1;
    double cr = 0.0;
};

// (n * cr / (2 ln(1 / (1 - cr)))) * (t / m). cr = 0 takes the algebraic
// limit n t / (2 m); cr = 1 returns n t.
double upperBoundClosedForm(BoundParams const& p);

// t * ceil(chi / m) with chi ~ n / (2 log_{1/(1-cr)} n) for a random
// conflict graph; t * ceil(n / m) with no edges and t * n when complete.
double upperBoundChromatic(BoundParams const& p);

} // namespace txsched
