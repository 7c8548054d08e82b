#include "bracecalc/report.hpp"

#include <algorithm>

#include <json.hpp>

namespace bracecalc {

void Report::add_verdict(std::string label, Verdict v) {
    cite(v.citations);
    verdicts.emplace_back(std::move(label), std::move(v));
}

void Report::cite(const std::vector<std::string>& citations) {
    for (const auto& c : citations)
        if (std::find(tables_used.begin(), tables_used.end(), c) == tables_used.end())
            tables_used.push_back(c);
}

int Report::exit_code() const {
    for (const auto& [label, v] : verdicts)
        if (v.status == Status::Fails) return 2;
    return 0;
}

std::string render_text(const Report& r) {
    std::string out = "bracecalc " + std::string(tool_version) + " -- " + r.command + "\n";
    if (!r.inputs.empty()) {
        out += "inputs:\n";
        for (const auto& [k, v] : r.inputs) out += "  " + k + ": " + v + "\n";
    }
    for (const auto& [label, v] : r.verdicts) {
        out += "[" + label + "] " + v.summary() + "\n";
        for (const auto& line : v.certificate) out += "  | " + line + "\n";
        for (const auto& c : v.caveats) out += "  ! " + c + "\n";
        for (const auto& c : v.citations) out += "  > " + c + "\n";
    }
    if (!r.notes.empty()) {
        out += "notes:\n";
        for (const auto& n : r.notes) out += "  " + n + "\n";
    }
    if (!r.tables_used.empty()) {
        out += "tables used:\n";
        for (const auto& c : r.tables_used) out += "  - " + c + "\n";
    }
    return out;
}

std::string render_json(const Report& r) {
    nlohmann::ordered_json doc;
    doc["tool"] = "bracecalc";
    doc["version"] = tool_version;
    doc["command"] = r.command;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.inputs) inputs[k] = v;
    doc["inputs"] = std::move(inputs);
    doc["verdicts"] = nlohmann::ordered_json::array();
    for (const auto& [label, v] : r.verdicts) {
        nlohmann::ordered_json jv;
        jv["check"] = label;
        jv["status"] = status_name(v.status);
        if (v.status == Status::HoldsUpToDegree) jv["degree"] = v.degree;
        if (v.status == Status::Fails) jv["witness"] = v.witness;
        jv["certificate"] = v.certificate;
        jv["caveats"] = v.caveats;
        jv["citations"] = v.citations;
        doc["verdicts"].push_back(std::move(jv));
    }
    doc["notes"] = r.notes;
    doc["tables_used"] = r.tables_used;
    return doc.dump(2) + "\n";
}

}  // namespace bracecalc
