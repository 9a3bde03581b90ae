// Copyright 2026 The txsched Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "txsched/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <sstream>

namespace txsched
{

std::string
toString(Constraint c)
{
    switch (c)
    {
    case Constraint::Completeness:
        return "COMPLETENESS";
    case Constraint::C1:
        return "C1";
    case Constraint::C2:
        return "C2";
    case Constraint::C3:
        return "C3";
    }
    return "?";
}

namespace
{

std::string
describe(Assignment const& a)
{
    std::ostringstream out;
    out << "P" << a.processId << "@core" << a.coreId << "[" << a.startMs << ","
        << a.finishMs << ")";
    return out.str();
}

} // namespace

ValidationReport
validateSchedule(Schedule const& s, Workload const& w)
{
    ValidationReport report;
    auto add = [&](Constraint c, std::vector<ProcessId> ids, std::string detail) {
        report.violations.push_back({c, std::move(ids), std::move(detail)});
    };

    auto const n = w.size();
    auto const m = w.cores.coreCount;
    std::vector<int> seen(n, 0);
    std::vector<Assignment const*> first(n, nullptr);
    std::vector<std::vector<Assignment const*>> perCore(m);

    for (auto const& a : s.assignments)
    {
        if (a.processId >= n)
        {
            add(Constraint::Completeness, {a.processId},
                "unknown process " + describe(a));
            continue;
        }
        if (++seen[a.processId] == 2)
        {
            add(Constraint::Completeness, {a.processId},
                "process assigned more than once");
        }
        if (first[a.processId] == nullptr)
        {
            first[a.processId] = &a;
        }
        if (a.coreId >= m)
        {
            add(Constraint::Completeness, {a.processId},
                "unknown core in " + describe(a));
        }
        else
        {
            perCore[a.coreId].push_back(&a);
        }
        if (a.startMs < 0)
        {
            add(Constraint::Completeness, {a.processId},
                "negative start in " + describe(a));
        }
        if (a.finishMs != a.startMs + w.processes[a.processId].execTimeMs)
        {
            add(Constraint::Completeness, {a.processId},
                "finish != start + execTime in " + describe(a));
        }
    }
    for (ProcessId i = 0; i < n; ++i)
    {
        if (seen[i] == 0)
        {
            add(Constraint::Completeness, {i}, "process never assigned");
        }
    }

    for (auto& core : perCore)
    {
        std::sort(core.begin(), core.end(),
                  [](Assignment const* x, Assignment const* y) {
                      return std::tie(x->startMs, x->processId) <
                             std::tie(y->startMs, y->processId);
                  });
        for (std::size_t i = 0; i < core.size(); ++i)
        {
            for (std::size_t j = i + 1;
                 j < core.size() && core[j]->startMs < core[i]->finishMs; ++j)
            {
                add(Constraint::C1, {core[i]->processId, core[j]->processId},
                    describe(*core[i]) + " overlaps " + describe(*core[j]));
            }
        }
    }

    for (auto const& c : w.conflicts)
    {
        if (c.a >= n || c.b >= n)
        {
            continue;
        }
        auto const* x = first[c.a];
        auto const* y = first[c.b];
        if (x == nullptr || y == nullptr)
        {
            continue;
        }
        if (!(x->startMs >= y->finishMs || y->startMs >= x->finishMs))
        {
            add(Constraint::C2, {c.a, c.b},
                "conflicting " + describe(*x) + " overlaps " + describe(*y));
        }
        auto const* early = c.a < c.b ? x : y;
        auto const* late = c.a < c.b ? y : x;
        if (w.attestor && early->finishMs > late->startMs)
        {
            add(Constraint::C3, {early->processId, late->processId},
                describe(*late) + " starts before predecessor " +
                    describe(*early) + " finishes");
        }
    }

    report.ok = report.violations.empty();
    return report;
}

nlohmann::json
validationReportToJson(ValidationReport const& r)
{
    nlohmann::json violations = nlohmann::json::array();
    for (auto const& v : r.violations)
    {
        violations.push_back({{"constraint", toString(v.constraint)},
                              {"processes", v.processes},
                              {"detail", v.detail}});
    }
    return {{"ok", r.ok}, {"violations", std::move(violations)}};
}

namespace
{

class BranchAndBound
{
  public:
    BranchAndBound(Workload const& w, OracleOptions const& options)
        : mW(w)
        , mOptions(options)
        , mN(w.size())
        , mM(w.cores.coreCount)
        , mNeighbors(w.size())
        , mCoreEnd(mM, 0)
        , mStart(mN, -1)
        , mCore(mN, 0)
    {
        for (auto const& c : w.conflicts)
        {
            mNeighbors[c.a].push_back(c.b);
            mNeighbors[c.b].push_back(c.a);
        }
        mTime.reserve(mN);
        for (auto const& p : w.processes)
        {
            mTime.push_back(p.execTimeMs);
        }
        mRemaining = w.totalExecTimeMs();

        // Candidates are tried longest first so good incumbents show up early.
        mCandidateOrder.resize(mN);
        std::iota(mCandidateOrder.begin(), mCandidateOrder.end(), ProcessId{0});
        std::stable_sort(mCandidateOrder.begin(), mCandidateOrder.end(),
                         [&](ProcessId a, ProcessId b) {
                             return mTime[a] > mTime[b];
                         });

        // Serial schedule in original order is always feasible.
        mBest = mRemaining;
        mBestStart.resize(mN);
        mBestCore.assign(mN, 0);
        Millis t = 0;
        for (std::size_t i = 0; i < mN; ++i)
        {
            mBestStart[i] = t;
            t += mTime[i];
        }

        mStaticLowerBound = ceilDiv(mRemaining, mM);
        for (std::size_t i = 0; i < mN; ++i)
        {
            Millis around = 0;
            for (auto j : mNeighbors[i])
            {
                around += mTime[j];
            }
            mStaticLowerBound =
                std::max(mStaticLowerBound, mTime[i] + ceilDiv(around, mM));
        }
    }

    OracleResult
    run()
    {
        mExhausted = false;
        if (!(mOptions.pruning && mBest <= mStaticLowerBound))
        {
            search(0, 0);
        }
        OracleResult r;
        r.optimalMakespanMs = mBest;
        r.optimal = !mExhausted;
        r.nodesExplored = mNodes;
        r.witness.horizonMs = mW.totalExecTimeMs();
        r.witness.scheduleMakespanMs = mBest;
        for (ProcessId i = 0; i < mN; ++i)
        {
            r.witness.assignments.push_back(
                {i, mBestCore[i], mBestStart[i], mBestStart[i] + mTime[i]});
        }
        return r;
    }

  private:
    static Millis
    ceilDiv(Millis a, Millis b)
    {
        return (a + b - 1) / b;
    }

    bool
    eligible(ProcessId p) const
    {
        if (mStart[p] >= 0)
        {
            return false;
        }
        if (!mW.attestor)
        {
            return true;
        }
        for (auto q : mNeighbors[p])
        {
            if (q < p && mStart[q] < 0)
            {
                return false;
            }
        }
        return true;
    }

    Millis
    conflictReady(ProcessId p) const
    {
        Millis ready = 0;
        for (auto q : mNeighbors[p])
        {
            if (mStart[q] >= 0)
            {
                ready = std::max(ready, mStart[q] + mTime[q]);
            }
        }
        return ready;
    }

    Millis
    lowerBound(Millis currentMax) const
    {
        Millis sumEnds = 0;
        Millis minEnd = std::numeric_limits<Millis>::max();
        for (auto e : mCoreEnd)
        {
            sumEnds += e;
            minEnd = std::min(minEnd, e);
        }
        Millis lb = std::max({currentMax, mStaticLowerBound,
                              ceilDiv(sumEnds + mRemaining, mM)});
        for (ProcessId p = 0; p < mN; ++p)
        {
            if (mStart[p] < 0)
            {
                lb = std::max(lb, std::max(minEnd, conflictReady(p)) + mTime[p]);
            }
        }
        return lb;
    }

    void
    search(std::size_t placed, Millis currentMax)
    {
        if (mExhausted)
        {
            return;
        }
        if (++mNodes > mOptions.nodeBudget)
        {
            mExhausted = true;
            return;
        }
        if (placed == mN)
        {
            if (currentMax < mBest)
            {
                mBest = currentMax;
                mBestStart = mStart;
                mBestCore = mCore;
            }
            return;
        }
        if (mOptions.pruning && lowerBound(currentMax) >= mBest)
        {
            return;
        }

        for (auto p : mCandidateOrder)
        {
            if (!eligible(p))
            {
                continue;
            }
            Millis const ready = conflictReady(p);
            for (CoreId k = 0; k < mM; ++k)
            {
                if (mOptions.pruning && seenEqualEnd(k))
                {
                    continue;
                }
                Millis const start = std::max(mCoreEnd[k], ready);
                Millis const finish = start + mTime[p];
                if (mOptions.pruning && finish >= mBest)
                {
                    continue;
                }
                Millis const savedEnd = mCoreEnd[k];
                mStart[p] = start;
                mCore[p] = k;
                mCoreEnd[k] = finish;
                mRemaining -= mTime[p];
                search(placed + 1, std::max(currentMax, finish));
                mRemaining += mTime[p];
                mCoreEnd[k] = savedEnd;
                mStart[p] = -1;
                if (mExhausted)
                {
                    return;
                }
            }
        }
    }

    // Cores are interchangeable, so only the first of several cores with the
    // same current end needs exploring.
    bool
    seenEqualEnd(CoreId k) const
    {
        for (CoreId j = 0; j < k; ++j)
        {
            if (mCoreEnd[j] == mCoreEnd[k])
            {
                return true;
            }
        }
        return false;
    }

    Workload const& mW;
    OracleOptions mOptions;
    std::size_t mN;
    std::uint32_t mM;
    std::vector<std::vector<ProcessId>> mNeighbors;
    std::vector<Millis> mTime;
    std::vector<ProcessId> mCandidateOrder;
    std::vector<Millis> mCoreEnd;
    std::vector<Millis> mStart;
    std::vector<CoreId> mCore;
    Millis mRemaining = 0;
    Millis mStaticLowerBound = 0;
    Millis mBest = 0;
    std::vector<Millis> mBestStart;
    std::vector<CoreId> mBestCore;
    std::uint64_t mNodes = 0;
    bool mExhausted = false;
};

} // namespace

OracleResult
exactOptimal(Workload const& w, OracleOptions const& options)
{
    auto const started = std::chrono::steady_clock::now();
    BranchAndBound solver(w, options);
    auto result = solver.run();
    result.witness.wallTimeMs = std::chrono::duration<double, std::milli>(
                                    std::chrono::steady_clock::now() - started)
                                    .count();
    return result;
}

} // namespace txsched
