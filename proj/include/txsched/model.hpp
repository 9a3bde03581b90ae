// Copyright 2026 The txsched Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace txsched
{

using ProcessId = std::uint32_t;
using CoreId = std::uint32_t;
using Millis = std::int64_t;

// Raised when a workload or schedule document is not well-formed JSON or
// does not have the expected shape.
class ParseError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Raised when a document parses but violates a domain invariant. `field()`
// names the offending key path, e.g. "conflicts[3][1]".
class ValidationError : public std::runtime_error
{
  public:
    ValidationError(std::string field, std::string const& message)
        : std::runtime_error(field + ": " + message), mField(std::move(field))
    {
    }

    std::string const&
    field() const noexcept
    {
        return mField;
    }

  private:
    std::string mField;
};

// One schedulable unit: a transaction or external function call. The id is
// the position in the original block order.
struct Process
{
    ProcessId id = 0;
    Millis execTimeMs = 1;
    std::int64_t opCount = 1;

    bool operator==(Process const&) const = default;
};

// Unordered conflict between two processes, always stored with a < b.
struct ConflictPair
{
    ProcessId a = 0;
    ProcessId b = 0;

    static ConflictPair canonical(ProcessId x, ProcessId y);

    bool operator==(ConflictPair const&) const = default;
    auto operator<=>(ConflictPair const&) const = default;
};

// Homogeneous core pool: every core shares the same cost coefficients.
struct CoreProfile
{
    std::uint32_t coreCount = 1;
    double costPerOp = 0.0;
    double costPerIdleMs = 0.0;

    bool operator==(CoreProfile const&) const = default;
};

// Complete scheduler input. Process order defines the original block order
// used by attestor-mode order preservation.
struct Workload
{
    std::vector<Process> processes;
    std::vector<ConflictPair> conflicts; // sorted, unique, canonical
    CoreProfile cores;
    bool attestor = false;
    nlohmann::json meta = nlohmann::json::object();

    std::size_t
    size() const noexcept
    {
        return processes.size();
    }

    Millis totalExecTimeMs() const;

    bool operator==(Workload const&) const = default;
};

// Checks every Workload invariant; throws ValidationError naming the field.
// Canonicalizes and deduplicates the conflict list in place.
void validateAndCanonicalize(Workload& w);

// Objective weighting. alphaCost is derived, never set independently.
class Weights
{
  public:
    explicit Weights(double alphaTime);

    double
    alphaTime() const noexcept
    {
        return mAlphaTime;
    }
    double
    alphaCost() const noexcept
    {
        return 1.0 - mAlphaTime;
    }

  private:
    double mAlphaTime;
};

// Workload JSON I/O.
Workload workloadFromJson(nlohmann::json const& doc);
nlohmann::json workloadToJson(Workload const& w);
Workload parseWorkload(std::string const& text);
std::string serializeWorkload(Workload const& w);
Workload loadWorkload(std::filesystem::path const& path);
void saveWorkload(Workload const& w, std::filesystem::path const& path);

enum class ConflictModel
{
    Pairwise,      // Erdos-Renyi G(n, rate)
    Participation, // exactly round(n * rate) processes touch a conflict
};

std::string toString(ConflictModel model);
ConflictModel conflictModelFromString(std::string const& name);

// Per-process execution time distribution, integer milliseconds.
struct TimeDistribution
{
    enum class Kind
    {
        Uniform,
        Constant,
    };
    Kind kind = Kind::Uniform;
    Millis lo = 1;
    Millis hi = 15;

    static TimeDistribution
    uniform(Millis lo, Millis hi)
    {
        return {Kind::Uniform, lo, hi};
    }
    static TimeDistribution
    constant(Millis value)
    {
        return {Kind::Constant, value, value};
    }

    std::string name() const;
};

struct GeneratorConfig
{
    std::size_t n = 50;
    double conflictRate = 0.15;
    ConflictModel model = ConflictModel::Participation;
    std::uint64_t seed = 1;
    CoreProfile cores;
    bool attestor = false;
    TimeDistribution timeDist;
    std::int64_t opsPerMs = 1000;
    // PARTICIPATION only: probability of an extra edge between any two
    // participants, on top of the matching that guarantees participation.
    double participantDensity = 0.3;
};

Workload generateWorkload(GeneratorConfig const& cfg);

// Linear gas-to-time estimator: max(1, round(slope * gas + intercept)).
struct GasTimeModel
{
    double slope = 1.0 / 21000.0;
    double intercept = 0.0;
};

Millis estimateExecTime(std::uint64_t gasEstimate, GasTimeModel const& model);

} // namespace txsched
