// Copyright 2026 The txsched Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "txsched/conflict.hpp"
#include "txsched/model.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace txsched
{

enum class SortType
{
    FIFO, // original order
    MCCF, // most conflicting count first
    MCDF, // most conflicting duration first
    LCCF, // least conflicting count first
    LCDF, // least conflicting duration first
};

enum class AssignType
{
    Loose,
    Strict,
};

std::string toString(SortType s);
std::string toString(AssignType a);
SortType sortTypeFromString(std::string const& name);
AssignType assignTypeFromString(std::string const& name);

inline constexpr SortType kAllSortTypes[] = {SortType::FIFO, SortType::MCCF,
                                             SortType::MCDF, SortType::LCCF,
                                             SortType::LCDF};

struct Strategy
{
    SortType sortType = SortType::MCDF;
    AssignType assignType = AssignType::Loose;
    // Loose passes run for rounds 0..looseReviewRound inclusive.
    std::uint32_t looseReviewRound = 3;

    // "LOOSE:MCDF:3" or "STRICT:FIFO".
    std::string label() const;
    static Strategy parse(std::string const& label);

    bool operator==(Strategy const&) const = default;
};

struct Assignment
{
    ProcessId processId = 0;
    CoreId coreId = 0;
    Millis startMs = 0;
    Millis finishMs = 0;

    bool operator==(Assignment const&) const = default;
};

struct Interval
{
    ProcessId processId = 0;
    Millis startMs = 0;
    Millis finishMs = 0;
};

// Processes placed on one core, in start order.
struct CoreState
{
    CoreId coreId = 0;
    std::vector<Interval> intervals;
    Millis occupiedUntilMs = 0;
};

struct Schedule
{
    std::vector<Assignment> assignments; // scheduler output is sorted by id
    Millis horizonMs = 0;
    Millis scheduleMakespanMs = 0;
    double wallTimeMs = 0.0;

    // Equality ignores wall time, which is a measurement, not an output.
    bool
    sameAssignments(Schedule const& other) const
    {
        return assignments == other.assignments &&
               horizonMs == other.horizonMs &&
               scheduleMakespanMs == other.scheduleMakespanMs;
    }
};

// Thrown when a strict placement in attestor mode would run ahead of an
// unassigned conflicting predecessor. Reaching it means the caller broke
// the sort-order contract.
class AttestorOrderViolation : public std::logic_error
{
  public:
    using std::logic_error::logic_error;
};

// Orders process ids for assignment. Proposers get a stable sort by the
// sortType key; attestors get conflict participants first, then the
// conflict-free processes, both in original order.
std::vector<ProcessId> sortProcesses(Workload const& w, ConflictIndex const& idx,
                                     SortType sortType, bool isAttestor);

// Mutable per-run placement state over all cores.
class ComputingPlan
{
  public:
    ComputingPlan(Workload const& w, ConflictIndex const& idx);

    // Least-occupied core, then start after every already-placed conflicting
    // process. Always succeeds.
    Assignment assignStrictly(ProcessId p, bool isAttestor);

    // Appends at the least-occupied core's end only when that slot overlaps
    // no placed conflicting process. Never inserts idle time, never probes
    // another core. Leaves the plan untouched on refusal.
    std::optional<Assignment> assignLoosely(ProcessId p, bool isAttestor);

    bool
    isAssigned(ProcessId p) const noexcept
    {
        return mAssigned[p];
    }

    std::span<CoreState const>
    cores() const noexcept
    {
        return mCores;
    }

    Millis scheduleMakespan() const noexcept;

    // Requires every process to be assigned.
    std::vector<Assignment> assignments() const;

  private:
    CoreState& leastOccupied();
    bool hasUnassignedPredecessor(ProcessId p) const;
    void commit(Assignment const& a);

    Workload const& mWorkload;
    ConflictIndex const& mIndex;
    std::vector<CoreState> mCores;
    std::vector<Assignment> mAssignment;
    std::vector<bool> mAssigned;
};

// Runs the full greedy scheduler on w using its attestor flag and core
// count. wallTimeMs covers the whole call body; the overload taking a
// prebuilt index does not time the index construction.
Schedule schedule(Workload const& w, Strategy const& strategy);
Schedule schedule(Workload const& w, ConflictIndex const& idx,
                  Strategy const& strategy);

// Schedule JSON I/O.
nlohmann::json scheduleToJson(Schedule const& s);
Schedule scheduleFromJson(nlohmann::json const& doc);
std::string serializeSchedule(Schedule const& s);
Schedule loadSchedule(std::filesystem::path const& path);
void saveSchedule(Schedule const& s, std::filesystem::path const& path);

} // namespace txsched
