#pragma once

#include <json.hpp>

#include "shorsim/modexp.hpp"
#include "shorsim/pipeline.hpp"
#include "shorsim/spectrum.hpp"

namespace shorsim {

// Field order is fixed by construction (ordered_json) so identical runs
// serialize byte-identically.
using Json = nlohmann::ordered_json;

inline Json to_json(const CircuitStats& stats) {
    return Json{
        {"controlled_stage_applications", stats.controlled_stage_applications},
        {"single_qubit_gate_applications", stats.single_qubit_gate_applications},
        {"amplitude_operations", stats.amplitude_operations},
    };
}

inline Json to_json(const SampleRecord& record) {
    Json j{{"c", record.c}};
    if (record.has_candidate) {
        j["d"] = record.d;
        j["r"] = record.r;
    } else {
        j["d"] = nullptr;
        j["r"] = nullptr;
    }
    j["status"] = record.status;
    return j;
}

inline Json to_json(const ShorReport& report) {
    Json j;
    j["n"] = report.n;
    if (report.x) j["x"] = *report.x; else j["x"] = nullptr;
    j["s"] = report.s;
    j["q"] = report.q;
    j["method"] = report.method;
    j["samples"] = Json::array();
    for (const auto& record : report.samples) j["samples"].push_back(to_json(record));
    if (report.verified_r) j["verified_r"] = *report.verified_r; else j["verified_r"] = nullptr;
    if (report.verified_via.empty()) j["verified_via"] = nullptr; else j["verified_via"] = report.verified_via;
    if (report.factors) {
        j["factors"] = Json::array({report.factors->first, report.factors->second});
    } else {
        j["factors"] = nullptr;
    }
    j["stats"] = to_json(report.stats);
    j["outcome"] = to_string(report.outcome);
    return j;
}

inline Json to_json(const AuditReport& report) {
    return Json{
        {"t", report.t},
        {"claimed_invocations", report.claimed_invocations},
        {"max_amplitude_deviation", report.max_amplitude_deviation},
        {"equal", report.equal},
    };
}

inline Json to_json(const DemoAuditRow& row) {
    return Json{
        {"label", row.label},
        {"citation", row.citation},
        {"n", row.n},
        {"s1", row.s1},
        {"s2", row.s2},
        {"q_ok", row.q_ok},
        {"width_ok", row.width_ok},
        {"required_s1", row.required_s1},
        {"verdict", row.verdict},
    };
}

inline Json to_json(const std::vector<DemoAuditRow>& rows) {
    Json j = Json::array();
    for (const auto& row : rows) j.push_back(to_json(row));
    return j;
}

inline Json to_json(const SweepRow& row) {
    return Json{
        {"s", row.s},
        {"q", row.q},
        {"trials", row.trials},
        {"successes", row.successes},
        {"rate", row.rate},
    };
}

inline Json to_json(const std::vector<SweepRow>& rows) {
    Json j = Json::array();
    for (const auto& row : rows) j.push_back(to_json(row));
    return j;
}

inline Json marginal_to_json(const OutcomeDistribution& dist) {
    Json j = Json::array();
    for (double p : dist.marginal) j.push_back(p);
    return j;
}

}  // namespace shorsim
