// Copyright 2026 The txsched Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "txsched/conflict.hpp"

#include <algorithm>

namespace txsched
{

ConflictIndex::ConflictIndex(Workload const& w)
    : mAdjacency(w.size())
    , mDuration(w.size(), 0)
    , mWordsPerRow((w.size() + 63) / 64)
{
    mBits.assign(mWordsPerRow * w.size(), 0);
    for (auto const& c : w.conflicts)
    {
        if (c.a == c.b || conflictsWith(c.a, c.b))
        {
            continue;
        }
        mAdjacency[c.a].push_back(c.b);
        mAdjacency[c.b].push_back(c.a);
        mDuration[c.a] += w.processes[c.b].execTimeMs;
        mDuration[c.b] += w.processes[c.a].execTimeMs;
        mBits[c.a * mWordsPerRow + c.b / 64] |= std::uint64_t{1} << (c.b % 64);
        mBits[c.b * mWordsPerRow + c.a / 64] |= std::uint64_t{1} << (c.a % 64);
    }
    for (auto& adj : mAdjacency)
    {
        std::sort(adj.begin(), adj.end());
    }
}

bool
ConflictIndex::conflictsWith(ProcessId i, ProcessId j) const noexcept
{
    return (mBits[i * mWordsPerRow + j / 64] >> (j % 64)) & 1u;
}

} // namespace txsched
