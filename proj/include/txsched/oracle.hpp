// Copyright 2026 The txsched Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "txsched/model.hpp"
#include "txsched/scheduler.hpp"

#include <string>
#include <vector>

namespace txsched
{

enum class Constraint
{
    Completeness,
    C1, // no overlap on a core
    C2, // no overlap between conflicting processes
    C3, // attestor order preservation
};

std::string toString(Constraint c);

struct Violation
{
    Constraint constraint = Constraint::Completeness;
    std::vector<ProcessId> processes;
    std::string detail;
};

struct ValidationReport
{
    bool ok = true;
    std::vector<Violation> violations;

    bool
    has(Constraint c) const
    {
        for (auto const& v : violations)
        {
            if (v.constraint == c)
            {
                return true;
            }
        }
        return false;
    }
};

// Checks an arbitrary candidate schedule against w and lists every
// violation found. Never throws for bad schedules.
ValidationReport validateSchedule(Schedule const& s, Workload const& w);

nlohmann::json validationReportToJson(ValidationReport const& r);

struct OracleOptions
{
    std::uint64_t nodeBudget = 50'000'000;
    // Lower-bound cuts and identical-core symmetry breaking. Turning this off
    // gives plain enumeration over orders and core choices.
    bool pruning = true;
};

struct OracleResult
{
    Millis optimalMakespanMs = 0;
    Schedule witness;
    bool optimal = false; // false when the node budget ran out
    std::uint64_t nodesExplored = 0;
};

// Branch and bound over (next process, core). Each placement starts at the
// earliest time after the core's last finish and after every placed
// conflicting process, which suffices for some optimal schedule to be
// reachable. In attestor mode a process is eligible only after all of its
// conflicting predecessors.
OracleResult exactOptimal(Workload const& w, OracleOptions const& options = {});

} // namespace txsched
