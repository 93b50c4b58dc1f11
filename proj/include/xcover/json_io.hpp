#pragma once

// JSON renderings shared by the verification harness and the command-line tool.
// Key order is fixed (ordered_json) so equal values always print identically.

#include "xcover/bounds.hpp"
#include "xcover/partitions.hpp"
#include "xcover/solve_result.hpp"

#include <json.hpp>

namespace xcover {

using Json = nlohmann::ordered_json;

inline Json to_json(const SolveResult& r)
{
    Json j;
    j["answer"] = answer_name(r.answer);
    j["optimum"] = r.optimum ? Json(*r.optimum) : Json(nullptr);
    j["certificate"] = r.certificate;
    j["stats"] = {{"explored", r.stats.explored}};
    return j;
}

inline Json to_json(const BoundReport& b)
{
    Json j;
    j["reduction"] = b.reduction;
    j["ntilde"] = b.ntilde;
    j["delta"] = b.delta;
    if (b.epsilon != 0)
        j["epsilon"] = b.epsilon;
    if (b.g != 0)
        j["g"] = b.g;
    Json checks = Json::array();
    for (const auto& c : b.checks)
        checks.push_back({{"name", c.name},
                          {"declared_log2", c.declared_log2},
                          {"realised_log2", c.realised_log2},
                          {"within", c.within()}});
    j["checks"] = std::move(checks);
    if (b.composed_runtime_log2)
        j["composed_runtime_log2"] = *b.composed_runtime_log2;
    j["verdict"] = b.all_within() ? "within bound" : "bound exceeded";
    return j;
}

inline Json to_json(const Partition& p)
{
    return p.parts;
}

} // namespace xcover
