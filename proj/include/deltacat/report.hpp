#pragma once

#include <deltacat/harness.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace deltacat {

/// Version tag carried by every structured record.
inline constexpr const char* report_schema = "deltacat.lawreport/1";

inline std::string report_status(const LawReport& r) {
    if (r.skipped) return "skipped";
    return r.failures == 0 ? "pass" : "fail";
}

/// One record. Key order is fixed; `elapsed_ms` is only written when asked
/// for, so default output is byte-identical across runs.
inline nlohmann::ordered_json report_to_json(const LawReport& r, bool with_timing = false) {
    nlohmann::ordered_json j;
    j["schema"] = report_schema;
    j["law"] = r.law;
    j["suite"] = r.suite;
    j["model"] = r.model;
    j["seed"] = r.seed;
    j["trials"] = r.trials;
    j["depth"] = r.depth;
    j["failures"] = r.failures;
    j["vacuous"] = r.vacuous;
    j["status"] = report_status(r);
    if (r.skipped) j["skipped_reason"] = *r.skipped;
    if (r.witness) {
        const Witness& w = *r.witness;
        j["witness"] = {{"part", w.part}, {"terms", w.terms}, {"input", w.input},
                        {"lhs", w.lhs},   {"rhs", w.rhs},     {"mode", w.mode}};
    } else {
        j["witness"] = nullptr;
    }
    if (with_timing) j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

inline LawReport report_from_json(const nlohmann::json& j) {
    if (j.value("schema", "") != report_schema) throw Error("unsupported report schema");
    LawReport r;
    r.law = j.at("law").get<std::string>();
    r.suite = j.at("suite").get<std::string>();
    r.model = j.at("model").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.trials = j.at("trials").get<std::size_t>();
    r.depth = j.at("depth").get<std::size_t>();
    r.failures = j.at("failures").get<std::size_t>();
    r.vacuous = j.at("vacuous").get<std::size_t>();
    if (j.contains("skipped_reason")) r.skipped = j["skipped_reason"].get<std::string>();
    if (!j.at("witness").is_null()) {
        const auto& w = j["witness"];
        r.witness = Witness{w.at("part"), w.at("terms"), w.at("input"), w.at("lhs"), w.at("rhs"), w.at("mode")};
    }
    r.elapsed_ms = j.value("elapsed_ms", 0.0);
    return r;
}

inline void write_jsonl(std::ostream& out, const std::vector<LawReport>& reports, bool with_timing = false) {
    for (const auto& r : reports) out << report_to_json(r, with_timing).dump() << '\n';
}

inline void write_table(std::ostream& out, const std::vector<LawReport>& reports, bool with_timing = false) {
    std::size_t law_w = 3, model_w = 5;
    for (const auto& r : reports) {
        law_w = std::max(law_w, r.law.size());
        model_w = std::max(model_w, r.model.size());
    }
    auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w > s.size() ? w - s.size() : 0, ' '); };
    out << pad("law", law_w) << "  " << pad("model", model_w) << "  trials  failures  vacuous  status";
    if (with_timing) out << "  ms";
    out << '\n';
    std::size_t failed = 0, skipped = 0;
    for (const auto& r : reports) {
        char nums[64];
        std::snprintf(nums, sizeof nums, "%6zu  %8zu  %7zu  ", r.trials, r.failures, r.vacuous);
        out << pad(r.law, law_w) << "  " << pad(r.model, model_w) << "  " << nums << report_status(r);
        if (with_timing) {
            char ms[32];
            std::snprintf(ms, sizeof ms, "  %.1f", r.elapsed_ms);
            out << ms;
        }
        out << '\n';
        if (r.skipped) {
            ++skipped;
            out << "    reason: " << *r.skipped << '\n';
        }
        if (r.witness) {
            ++failed;
            const Witness& w = *r.witness;
            out << "    part:  " << w.part << '\n';
            if (!w.terms.empty()) out << "    terms: " << w.terms << '\n';
            if (!w.input.empty()) out << "    input: " << w.input << '\n';
            out << "    lhs:   " << w.lhs << '\n';
            out << "    rhs:   " << w.rhs << '\n';
            out << "    mode:  " << w.mode << '\n';
        }
    }
    out << reports.size() << (reports.size() == 1 ? " law, " : " laws, ") << failed << " failing, " << skipped
        << " skipped\n";
}

} // namespace deltacat
