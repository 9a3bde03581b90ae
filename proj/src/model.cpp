// Copyright 2026 The txsched Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "txsched/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace txsched
{

ConflictPair
ConflictPair::canonical(ProcessId x, ProcessId y)
{
    return x < y ? ConflictPair{x, y} : ConflictPair{y, x};
}

Millis
Workload::totalExecTimeMs() const
{
    return std::accumulate(
        processes.begin(), processes.end(), Millis{0},
        [](Millis acc, Process const& p) { return acc + p.execTimeMs; });
}

void
validateAndCanonicalize(Workload& w)
{
    if (w.processes.empty())
    {
        throw ValidationError("processes", "at least one process is required");
    }
    auto const n = w.processes.size();
    std::vector<bool> seen(n, false);
    for (std::size_t pos = 0; pos < n; ++pos)
    {
        auto const& p = w.processes[pos];
        std::string const where = "processes[" + std::to_string(pos) + "]";
        if (p.id >= n)
        {
            throw ValidationError(where + ".id",
                                  "id " + std::to_string(p.id) +
                                      " outside 0.." + std::to_string(n - 1));
        }
        if (seen[p.id])
        {
            throw ValidationError(where + ".id",
                                  "duplicate id " + std::to_string(p.id));
        }
        seen[p.id] = true;
        if (p.id != pos)
        {
            throw ValidationError(where + ".id",
                                  "id " + std::to_string(p.id) +
                                      " does not match original order position " +
                                      std::to_string(pos));
        }
        if (p.execTimeMs < 1)
        {
            throw ValidationError(where + ".execTimeMs",
                                  "must be positive, got " +
                                      std::to_string(p.execTimeMs));
        }
        if (p.opCount < 1)
        {
            throw ValidationError(where + ".opCount",
                                  "must be positive, got " +
                                      std::to_string(p.opCount));
        }
    }

    for (std::size_t k = 0; k < w.conflicts.size(); ++k)
    {
        auto& c = w.conflicts[k];
        std::string const where = "conflicts[" + std::to_string(k) + "]";
        for (auto id : {c.a, c.b})
        {
            if (id >= n)
            {
                throw ValidationError(where, "unknown process id " +
                                                 std::to_string(id));
            }
        }
        if (c.a == c.b)
        {
            throw ValidationError(where, "self-conflict on process " +
                                             std::to_string(c.a));
        }
        c = ConflictPair::canonical(c.a, c.b);
    }
    std::sort(w.conflicts.begin(), w.conflicts.end());
    w.conflicts.erase(std::unique(w.conflicts.begin(), w.conflicts.end()),
                      w.conflicts.end());

    if (w.cores.coreCount < 1)
    {
        throw ValidationError("cores.count", "must be at least 1");
    }
    if (!(w.cores.costPerOp >= 0.0) || !std::isfinite(w.cores.costPerOp))
    {
        throw ValidationError("cores.costPerOp", "must be finite and >= 0");
    }
    if (!(w.cores.costPerIdleMs >= 0.0) ||
        !std::isfinite(w.cores.costPerIdleMs))
    {
        throw ValidationError("cores.costPerIdleMs", "must be finite and >= 0");
    }
    if (!w.meta.is_object())
    {
        throw ValidationError("meta", "must be an object");
    }
}

Weights::Weights(double alphaTime) : mAlphaTime(alphaTime)
{
    if (!(alphaTime >= 0.0 && alphaTime <= 1.0))
    {
        throw std::invalid_argument("alphaTime must lie in [0, 1]");
    }
}

std::string
toString(ConflictModel model)
{
    return model == ConflictModel::Pairwise ? "PAIRWISE" : "PARTICIPATION";
}

ConflictModel
conflictModelFromString(std::string const& name)
{
    if (name == "PAIRWISE" || name == "pairwise")
    {
        return ConflictModel::Pairwise;
    }
    if (name == "PARTICIPATION" || name == "participation")
    {
        return ConflictModel::Participation;
    }
    throw std::invalid_argument("unknown conflict model '" + name + "'");
}

std::string
TimeDistribution::name() const
{
    std::ostringstream out;
    if (kind == Kind::Constant)
    {
        out << "constant[" << lo << "]";
    }
    else
    {
        out << "uniform[" << lo << "," << hi << "]";
    }
    return out.str();
}

Millis
estimateExecTime(std::uint64_t gasEstimate, GasTimeModel const& model)
{
    if (!(model.slope > 0.0))
    {
        throw std::invalid_argument("gas model slope must be positive");
    }
    double const t = std::round(model.slope * static_cast<double>(gasEstimate) +
                                model.intercept);
    return std::max<Millis>(1, static_cast<Millis>(t));
}

} // namespace txsched
