// Copyright 2026 The txsched Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "txsched/model.hpp"
#include "txsched/random.hpp"

#include <cmath>
#include <numeric>

namespace txsched
{
namespace
{

Millis
drawTime(Rng& rng, TimeDistribution const& dist)
{
    if (dist.kind == TimeDistribution::Kind::Constant)
    {
        return dist.lo;
    }
    return rng.between(dist.lo, dist.hi);
}

void
wirePairwise(Workload& w, double rate, Rng& rng)
{
    auto const n = static_cast<ProcessId>(w.size());
    for (ProcessId i = 0; i < n; ++i)
    {
        for (ProcessId j = i + 1; j < n; ++j)
        {
            if (rng.unit() < rate)
            {
                w.conflicts.push_back({i, j});
            }
        }
    }
}

// Picks exactly k participants; pairs them by a random perfect matching
// (an odd leftover joins a random partner), then adds an Erdos-Renyi layer
// with edge probability participantDensity among participants only.
// participantDensity = 0 skips the layer.
void
wireParticipation(Workload& w, std::size_t k, double participantDensity,
                  Rng& rng, Rng& layer)
{
    if (k == 0)
    {
        return;
    }
    if (k == 1)
    {
        throw std::invalid_argument(
            "PARTICIPATION model cannot involve exactly one process in a "
            "conflict; adjust n or conflictRate");
    }
    std::vector<ProcessId> ids(w.size());
    std::iota(ids.begin(), ids.end(), ProcessId{0});
    // Partial Fisher-Yates: the first k slots become a uniform k-subset.
    for (std::size_t i = 0; i < k; ++i)
    {
        auto const j = i + rng.below(ids.size() - i);
        std::swap(ids[i], ids[j]);
    }
    std::vector<ProcessId> participants(ids.begin(), ids.begin() + k);

    for (std::size_t i = 0; i + 1 < k; i += 2)
    {
        w.conflicts.push_back(
            ConflictPair::canonical(participants[i], participants[i + 1]));
    }
    if (k % 2 == 1)
    {
        auto const partner = participants[rng.below(k - 1)];
        w.conflicts.push_back(ConflictPair::canonical(participants[k - 1], partner));
    }

    // The density layer draws one uniform per pair of processes from its own
    // stream, whether or not both are participants. Since participants for a
    // smaller k are a prefix of those for a larger k, graphs for the same seed
    // are nested as the rate grows.
    std::vector<bool> isParticipant(w.size(), false);
    for (auto p : participants)
    {
        isParticipant[p] = true;
    }
    auto const n = static_cast<ProcessId>(w.size());
    for (ProcessId i = 0; i < n; ++i)
    {
        for (ProcessId j = i + 1; j < n; ++j)
        {
            bool const hit = layer.unit() < participantDensity;
            if (hit && isParticipant[i] && isParticipant[j])
            {
                w.conflicts.push_back({i, j});
            }
        }
    }
}

} // namespace

Workload
generateWorkload(GeneratorConfig const& cfg)
{
    if (cfg.n < 1)
    {
        throw std::invalid_argument("generator needs n >= 1");
    }
    if (!(cfg.conflictRate >= 0.0 && cfg.conflictRate <= 1.0))
    {
        throw std::invalid_argument("conflictRate must lie in [0, 1]");
    }
    if (cfg.timeDist.lo < 1 || cfg.timeDist.hi < cfg.timeDist.lo)
    {
        throw std::invalid_argument("time distribution needs 1 <= lo <= hi");
    }
    if (cfg.opsPerMs < 1)
    {
        throw std::invalid_argument("opsPerMs must be positive");
    }
    if (!(cfg.participantDensity >= 0.0 && cfg.participantDensity <= 1.0))
    {
        throw std::invalid_argument("participantDensity must lie in [0, 1]");
    }

    Rng rng(cfg.seed);
    Workload w;
    w.cores = cfg.cores;
    w.attestor = cfg.attestor;
    w.processes.reserve(cfg.n);
    for (std::size_t i = 0; i < cfg.n; ++i)
    {
        Process p;
        p.id = static_cast<ProcessId>(i);
        p.execTimeMs = drawTime(rng, cfg.timeDist);
        p.opCount = p.execTimeMs * cfg.opsPerMs;
        w.processes.push_back(p);
    }

    if (cfg.model == ConflictModel::Pairwise)
    {
        wirePairwise(w, cfg.conflictRate, rng);
    }
    else
    {
        auto const k = static_cast<std::size_t>(
            std::llround(static_cast<double>(cfg.n) * cfg.conflictRate));
        Rng layer(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
        wireParticipation(w, k, cfg.participantDensity, rng, layer);
    }

    w.meta = {{"seed", cfg.seed},
              {"conflictRate", cfg.conflictRate},
              {"conflictModel", toString(cfg.model)},
              {"distribution", cfg.timeDist.name()},
              {"opsPerMs", cfg.opsPerMs}};
    if (cfg.model == ConflictModel::Participation)
    {
        w.meta["participantDensity"] = cfg.participantDensity;
    }
    validateAndCanonicalize(w);
    return w;
}

} // namespace txsched
