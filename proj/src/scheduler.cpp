// Copyright 2026 The txsched Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "txsched/scheduler.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace txsched
{

std::string
toString(SortType s)
{
    switch (s)
    {
    case SortType::FIFO:
        return "FIFO";
    case SortType::MCCF:
        return "MCCF";
    case SortType::MCDF:
        return "MCDF";
    case SortType::LCCF:
        return "LCCF";
    case SortType::LCDF:
        return "LCDF";
    }
    return "?";
}

std::string
toString(AssignType a)
{
    return a == AssignType::Loose ? "LOOSE" : "STRICT";
}

SortType
sortTypeFromString(std::string const& name)
{
    for (auto s : kAllSortTypes)
    {
        if (toString(s) == name)
        {
            return s;
        }
    }
    throw std::invalid_argument("unknown sort type '" + name + "'");
}

AssignType
assignTypeFromString(std::string const& name)
{
    if (name == "LOOSE")
    {
        return AssignType::Loose;
    }
    if (name == "STRICT")
    {
        return AssignType::Strict;
    }
    throw std::invalid_argument("unknown assign type '" + name + "'");
}

std::string
Strategy::label() const
{
    if (assignType == AssignType::Strict)
    {
        return "STRICT:" + toString(sortType);
    }
    return "LOOSE:" + toString(sortType) + ":" + std::to_string(looseReviewRound);
}

Strategy
Strategy::parse(std::string const& label)
{
    std::vector<std::string> parts;
    std::size_t pos = 0;
    for (;;)
    {
        auto const next = label.find(':', pos);
        parts.push_back(label.substr(pos, next - pos));
        if (next == std::string::npos)
        {
            break;
        }
        pos = next + 1;
    }
    if (parts.size() < 2 || parts.size() > 3)
    {
        throw std::invalid_argument("strategy label '" + label +
                                    "' must look like LOOSE:MCDF:3 or STRICT:FIFO");
    }
    Strategy s;
    s.assignType = assignTypeFromString(parts[0]);
    s.sortType = sortTypeFromString(parts[1]);
    if (parts.size() == 3)
    {
        if (parts[2].empty() ||
            parts[2].find_first_not_of("0123456789") != std::string::npos)
        {
            throw std::invalid_argument("bad review round in '" + label + "'");
        }
        s.looseReviewRound = static_cast<std::uint32_t>(std::stoul(parts[2]));
    }
    return s;
}

std::vector<ProcessId>
sortProcesses(Workload const& w, ConflictIndex const& idx, SortType sortType,
              bool isAttestor)
{
    std::vector<ProcessId> order(w.size());
    std::iota(order.begin(), order.end(), ProcessId{0});
    if (isAttestor)
    {
        std::stable_partition(order.begin(), order.end(), [&](ProcessId p) {
            return idx.conflictCount(p) > 0;
        });
        return order;
    }
    switch (sortType)
    {
    case SortType::FIFO:
        break;
    case SortType::MCCF:
        std::stable_sort(order.begin(), order.end(), [&](ProcessId a, ProcessId b) {
            return idx.conflictCount(a) > idx.conflictCount(b);
        });
        break;
    case SortType::LCCF:
        std::stable_sort(order.begin(), order.end(), [&](ProcessId a, ProcessId b) {
            return idx.conflictCount(a) < idx.conflictCount(b);
        });
        break;
    case SortType::MCDF:
        std::stable_sort(order.begin(), order.end(), [&](ProcessId a, ProcessId b) {
            return idx.conflictDurationMs(a) > idx.conflictDurationMs(b);
        });
        break;
    case SortType::LCDF:
        std::stable_sort(order.begin(), order.end(), [&](ProcessId a, ProcessId b) {
            return idx.conflictDurationMs(a) < idx.conflictDurationMs(b);
        });
        break;
    }
    return order;
}

ComputingPlan::ComputingPlan(Workload const& w, ConflictIndex const& idx)
    : mWorkload(w)
    , mIndex(idx)
    , mCores(w.cores.coreCount)
    , mAssignment(w.size())
    , mAssigned(w.size(), false)
{
    for (CoreId k = 0; k < mCores.size(); ++k)
    {
        mCores[k].coreId = k;
    }
}

CoreState&
ComputingPlan::leastOccupied()
{
    // min_element keeps the first minimum, so ties go to the lowest core id.
    return *std::min_element(mCores.begin(), mCores.end(),
                             [](CoreState const& a, CoreState const& b) {
                                 return a.occupiedUntilMs < b.occupiedUntilMs;
                             });
}

bool
ComputingPlan::hasUnassignedPredecessor(ProcessId p) const
{
    for (auto q : mIndex.neighbors(p))
    {
        if (q >= p)
        {
            break;
        }
        if (!mAssigned[q])
        {
            return true;
        }
    }
    return false;
}

void
ComputingPlan::commit(Assignment const& a)
{
    auto& core = mCores[a.coreId];
    core.intervals.push_back({a.processId, a.startMs, a.finishMs});
    core.occupiedUntilMs = a.finishMs;
    mAssignment[a.processId] = a;
    mAssigned[a.processId] = true;
}

Assignment
ComputingPlan::assignStrictly(ProcessId p, bool isAttestor)
{
    if (mAssigned[p])
    {
        throw std::logic_error("process " + std::to_string(p) +
                               " is already assigned");
    }
    if (isAttestor && hasUnassignedPredecessor(p))
    {
        throw AttestorOrderViolation(
            "process " + std::to_string(p) +
            " has an unassigned conflicting predecessor in attestor mode");
    }
    auto const& core = leastOccupied();
    Millis start = core.occupiedUntilMs;
    for (auto q : mIndex.neighbors(p))
    {
        if (mAssigned[q])
        {
            start = std::max(start, mAssignment[q].finishMs);
        }
    }
    Assignment const a{p, core.coreId, start,
                       start + mWorkload.processes[p].execTimeMs};
    commit(a);
    return a;
}

std::optional<Assignment>
ComputingPlan::assignLoosely(ProcessId p, bool isAttestor)
{
    if (mAssigned[p])
    {
        throw std::logic_error("process " + std::to_string(p) +
                               " is already assigned");
    }
    if (isAttestor && hasUnassignedPredecessor(p))
    {
        return std::nullopt;
    }
    auto const& core = leastOccupied();
    Millis const start = core.occupiedUntilMs;
    Millis const finish = start + mWorkload.processes[p].execTimeMs;
    for (auto q : mIndex.neighbors(p))
    {
        if (!mAssigned[q])
        {
            continue;
        }
        auto const& other = mAssignment[q];
        if (start < other.finishMs && other.startMs < finish)
        {
            return std::nullopt;
        }
    }
    Assignment const a{p, core.coreId, start, finish};
    commit(a);
    return a;
}

Millis
ComputingPlan::scheduleMakespan() const noexcept
{
    Millis best = 0;
    for (auto const& c : mCores)
    {
        best = std::max(best, c.occupiedUntilMs);
    }
    return best;
}

std::vector<Assignment>
ComputingPlan::assignments() const
{
    for (std::size_t i = 0; i < mAssigned.size(); ++i)
    {
        if (!mAssigned[i])
        {
            throw std::logic_error("process " + std::to_string(i) +
                                   " was never assigned");
        }
    }
    return mAssignment;
}

namespace
{

Schedule
runScheduler(Workload const& w, ConflictIndex const& idx,
             Strategy const& strategy)
{
    bool const attestor = w.attestor;
    auto const order = sortProcesses(w, idx, strategy.sortType, attestor);
    ComputingPlan plan(w, idx);
    Millis horizon = 0;

    if (strategy.assignType == AssignType::Strict)
    {
        for (auto p : order)
        {
            horizon += w.processes[p].execTimeMs;
            plan.assignStrictly(p, attestor);
        }
    }
    else
    {
        for (std::uint32_t round = 0; round <= strategy.looseReviewRound; ++round)
        {
            std::size_t unassigned = 0;
            for (auto p : order)
            {
                if (round == 0)
                {
                    horizon += w.processes[p].execTimeMs;
                }
                if (!plan.isAssigned(p) && !plan.assignLoosely(p, attestor))
                {
                    ++unassigned;
                }
            }
            if (unassigned == 0)
            {
                break;
            }
        }
        for (auto p : order)
        {
            if (!plan.isAssigned(p))
            {
                plan.assignStrictly(p, attestor);
            }
        }
    }

    Schedule out;
    out.assignments = plan.assignments();
    out.horizonMs = horizon;
    out.scheduleMakespanMs = plan.scheduleMakespan();
    return out;
}

double
elapsedMs(std::chrono::steady_clock::time_point since)
{
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - since)
        .count();
}

} // namespace

Schedule
schedule(Workload const& w, ConflictIndex const& idx, Strategy const& strategy)
{
    auto const started = std::chrono::steady_clock::now();
    auto out = runScheduler(w, idx, strategy);
    out.wallTimeMs = elapsedMs(started);
    return out;
}

Schedule
schedule(Workload const& w, Strategy const& strategy)
{
    auto const started = std::chrono::steady_clock::now();
    ConflictIndex const idx(w);
    auto out = runScheduler(w, idx, strategy);
    out.wallTimeMs = elapsedMs(started);
    return out;
}

} // namespace txsched
