// Copyright 2026 The txsched Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "txsched/model.hpp"

#include <span>
#include <vector>

namespace txsched
{

// Adjacency plus per-process statistics used by the conflict-driven sort
// orders. Membership tests go through a packed n x n bit matrix.
class ConflictIndex
{
  public:
    ConflictIndex() = default;
    explicit ConflictIndex(Workload const& w);

    std::size_t
    size() const noexcept
    {
        return mAdjacency.size();
    }

    bool conflictsWith(ProcessId i, ProcessId j) const noexcept;

    // Sorted ascending.
    std::span<ProcessId const>
    neighbors(ProcessId i) const noexcept
    {
        return mAdjacency[i];
    }

    std::size_t
    conflictCount(ProcessId i) const noexcept
    {
        return mAdjacency[i].size();
    }

    // Sum of the partners' execution times (own time excluded).
    Millis
    conflictDurationMs(ProcessId i) const noexcept
    {
        return mDuration[i];
    }

    bool operator==(ConflictIndex const&) const = default;

  private:
    std::vector<std::vector<ProcessId>> mAdjacency;
    std::vector<Millis> mDuration;
    std::vector<std::uint64_t> mBits;
    std::size_t mWordsPerRow = 0;
};

inline ConflictIndex
buildConflictIndex(Workload const& w)
{
    return ConflictIndex(w);
}

} // namespace txsched
