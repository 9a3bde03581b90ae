// Copyright 2026 The txsched Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "txsched/model.hpp"

#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

using nlohmann::json;

namespace txsched
{
namespace
{

void
rejectUnknownKeys(json const& obj, std::string const& where,
                  std::initializer_list<char const*> allowed)
{
    for (auto it = obj.begin(); it != obj.end(); ++it)
    {
        bool known = false;
        for (auto const* key : allowed)
        {
            known = known || it.key() == key;
        }
        if (!known)
        {
            throw ValidationError(where.empty() ? it.key()
                                                : where + "." + it.key(),
                                  "unknown key");
        }
    }
}

json const&
require(json const& obj, std::string const& where, char const* key)
{
    auto it = obj.find(key);
    if (it == obj.end())
    {
        throw ValidationError(where.empty() ? key : where + "." + key,
                              "missing required key");
    }
    return *it;
}

std::int64_t
requireInt(json const& value, std::string const& where)
{
    if (!value.is_number_integer())
    {
        throw ValidationError(where, "expected an integer");
    }
    return value.get<std::int64_t>();
}

ProcessId
requireId(json const& value, std::string const& where)
{
    auto const raw = requireInt(value, where);
    if (raw < 0 || raw > std::numeric_limits<ProcessId>::max())
    {
        throw ValidationError(where,
                              "process id " + std::to_string(raw) +
                                  " out of range");
    }
    return static_cast<ProcessId>(raw);
}

double
requireNumber(json const& value, std::string const& where)
{
    if (!value.is_number())
    {
        throw ValidationError(where, "expected a number");
    }
    return value.get<double>();
}

} // namespace

Workload
workloadFromJson(json const& doc)
{
    if (!doc.is_object())
    {
        throw ParseError("workload document must be a JSON object");
    }
    rejectUnknownKeys(doc, "",
                      {"processes", "conflicts", "cores", "attestor", "meta"});

    Workload w;
    auto const& procs = require(doc, "", "processes");
    if (!procs.is_array())
    {
        throw ValidationError("processes", "expected an array");
    }
    w.processes.reserve(procs.size());
    for (std::size_t i = 0; i < procs.size(); ++i)
    {
        std::string const where = "processes[" + std::to_string(i) + "]";
        auto const& p = procs[i];
        if (!p.is_object())
        {
            throw ValidationError(where, "expected an object");
        }
        rejectUnknownKeys(p, where, {"id", "execTimeMs", "opCount"});
        Process proc;
        proc.id = requireId(require(p, where, "id"), where + ".id");
        proc.execTimeMs =
            requireInt(require(p, where, "execTimeMs"), where + ".execTimeMs");
        proc.opCount =
            requireInt(require(p, where, "opCount"), where + ".opCount");
        w.processes.push_back(proc);
    }

    auto const& conflicts = require(doc, "", "conflicts");
    if (!conflicts.is_array())
    {
        throw ValidationError("conflicts", "expected an array");
    }
    w.conflicts.reserve(conflicts.size());
    for (std::size_t k = 0; k < conflicts.size(); ++k)
    {
        std::string const where = "conflicts[" + std::to_string(k) + "]";
        auto const& c = conflicts[k];
        if (!c.is_array() || c.size() != 2)
        {
            throw ValidationError(where, "expected a two-element array");
        }
        w.conflicts.push_back(
            {requireId(c[0], where + "[0]"), requireId(c[1], where + "[1]")});
    }

    auto const& cores = require(doc, "", "cores");
    if (!cores.is_object())
    {
        throw ValidationError("cores", "expected an object");
    }
    rejectUnknownKeys(cores, "cores", {"count", "costPerOp", "costPerIdleMs"});
    auto const count = requireInt(require(cores, "cores", "count"), "cores.count");
    if (count < 1 || count > std::numeric_limits<std::uint32_t>::max())
    {
        throw ValidationError("cores.count", "must be at least 1");
    }
    w.cores.coreCount = static_cast<std::uint32_t>(count);
    w.cores.costPerOp =
        requireNumber(require(cores, "cores", "costPerOp"), "cores.costPerOp");
    w.cores.costPerIdleMs = requireNumber(
        require(cores, "cores", "costPerIdleMs"), "cores.costPerIdleMs");

    auto const& attestor = require(doc, "", "attestor");
    if (!attestor.is_boolean())
    {
        throw ValidationError("attestor", "expected a boolean");
    }
    w.attestor = attestor.get<bool>();

    if (auto it = doc.find("meta"); it != doc.end())
    {
        w.meta = *it;
    }

    validateAndCanonicalize(w);
    return w;
}

json
workloadToJson(Workload const& w)
{
    json procs = json::array();
    for (auto const& p : w.processes)
    {
        procs.push_back(
            {{"id", p.id}, {"execTimeMs", p.execTimeMs}, {"opCount", p.opCount}});
    }
    json conflicts = json::array();
    for (auto const& c : w.conflicts)
    {
        conflicts.push_back(json::array({c.a, c.b}));
    }
    return json{{"processes", std::move(procs)},
                {"conflicts", std::move(conflicts)},
                {"cores",
                 {{"count", w.cores.coreCount},
                  {"costPerOp", w.cores.costPerOp},
                  {"costPerIdleMs", w.cores.costPerIdleMs}}},
                {"attestor", w.attestor},
                {"meta", w.meta}};
}

Workload
parseWorkload(std::string const& text)
{
    json doc;
    try
    {
        doc = json::parse(text);
    }
    catch (json::parse_error const& e)
    {
        throw ParseError(std::string("malformed workload JSON: ") + e.what());
    }
    return workloadFromJson(doc);
}

std::string
serializeWorkload(Workload const& w)
{
    return workloadToJson(w).dump(1) + "\n";
}

Workload
loadWorkload(std::filesystem::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw std::runtime_error("cannot open workload file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parseWorkload(buf.str());
}

void
saveWorkload(Workload const& w, std::filesystem::path const& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
    {
        throw std::runtime_error("cannot write workload file " + path.string());
    }
    out << serializeWorkload(w);
    if (!out)
    {
        throw std::runtime_error("write failed for " + path.string());
    }
}

} // namespace txsched
