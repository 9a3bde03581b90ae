// Copyright 2026 The txsched Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "txsched/scheduler.hpp"

#include <fstream>
#include <sstream>

using nlohmann::json;

namespace txsched
{
namespace
{

std::int64_t
intField(json const& obj, std::string const& where, char const* key)
{
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_number_integer())
    {
        throw ValidationError(where.empty() ? std::string(key) : where + "." + key,
                              "missing or non-integer");
    }
    return it->get<std::int64_t>();
}

} // namespace

json
scheduleToJson(Schedule const& s)
{
    json assignments = json::array();
    for (auto const& a : s.assignments)
    {
        assignments.push_back({{"processId", a.processId},
                               {"coreId", a.coreId},
                               {"startMs", a.startMs},
                               {"finishMs", a.finishMs}});
    }
    return json{{"assignments", std::move(assignments)},
                {"horizonMs", s.horizonMs},
                {"scheduleMakespanMs", s.scheduleMakespanMs},
                {"wallTimeMs", s.wallTimeMs}};
}

Schedule
scheduleFromJson(json const& doc)
{
    if (!doc.is_object())
    {
        throw ParseError("schedule document must be a JSON object");
    }
    for (auto it = doc.begin(); it != doc.end(); ++it)
    {
        auto const& k = it.key();
        if (k != "assignments" && k != "horizonMs" &&
            k != "scheduleMakespanMs" && k != "wallTimeMs")
        {
            throw ValidationError(k, "unknown key");
        }
    }
    auto it = doc.find("assignments");
    if (it == doc.end() || !it->is_array())
    {
        throw ValidationError("assignments", "missing or not an array");
    }
    Schedule s;
    for (std::size_t i = 0; i < it->size(); ++i)
    {
        auto const& a = (*it)[i];
        std::string const where = "assignments[" + std::to_string(i) + "]";
        if (!a.is_object())
        {
            throw ValidationError(where, "expected an object");
        }
        auto const pid = intField(a, where, "processId");
        auto const core = intField(a, where, "coreId");
        if (pid < 0 || core < 0)
        {
            throw ValidationError(where, "ids must be non-negative");
        }
        s.assignments.push_back({static_cast<ProcessId>(pid),
                                 static_cast<CoreId>(core),
                                 intField(a, where, "startMs"),
                                 intField(a, where, "finishMs")});
    }
    s.horizonMs = intField(doc, "", "horizonMs");
    s.scheduleMakespanMs = intField(doc, "", "scheduleMakespanMs");
    if (auto w = doc.find("wallTimeMs"); w != doc.end())
    {
        if (!w->is_number())
        {
            throw ValidationError("wallTimeMs", "expected a number");
        }
        s.wallTimeMs = w->get<double>();
    }
    return s;
}

std::string
serializeSchedule(Schedule const& s)
{
    return scheduleToJson(s).dump(1) + "\n";
}

Schedule
loadSchedule(std::filesystem::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw std::runtime_error("cannot open schedule file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try
    {
        return scheduleFromJson(json::parse(buf.str()));
    }
    catch (json::parse_error const& e)
    {
        throw ParseError(std::string("malformed schedule JSON: ") + e.what());
    }
}

void
saveSchedule(Schedule const& s, std::filesystem::path const& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
    {
        throw std::runtime_error("cannot write schedule file " + path.string());
    }
    out << serializeSchedule(s);
}

} // namespace txsched
