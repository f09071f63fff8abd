#include "optf/report.hpp"

#include <sstream>

#include "json.hpp"

namespace optf {

namespace {

using nlohmann::json;

json to_json(const CheckReport &r) {
    json w = json::array();
    for (const auto &x : r.witnesses)
        w.push_back({{"label", x.label}, {"algebra", x.algebra}, {"coords", x.coords}});
    json j{
        {"check", r.check},
        {"backend", r.backend},
        {"levels", r.levels},
        {"verdict", r.pass ? "pass" : "fail"},
        {"witnesses", w},
        {"tolerances", r.tolerances},
        {"seed", r.seed},
        {"samples", r.samples},
        {"runtime_ms", r.runtime_ms},
    };
    if (!r.records.empty()) {
        json recs = json::array();
        for (const auto &rec : r.records) {
            json jr{
                {"candidate", rec.candidate},
                {"composite_rank", rec.composite_rank},
                {"composite_dim", rec.composite_dim},
                {"excluded", rec.excluded},
                {"reason", rec.reason},
            };
            jr["rank" + std::to_string(rec.composite_rank) + "_dims"] = rec.admissible_dims;
            recs.push_back(jr);
        }
        j["records"] = recs;
    }
    if (!r.table.empty()) {
        json rows = json::array();
        for (const auto &row : r.table)
            rows.push_back({{"backend", row.backend},
                            {"local_equivalence", row.local_equivalence},
                            {"es_purification", row.es_purification}});
        j["table"] = rows;
    }
    return j;
}

}  // namespace

std::string emit_report_json(const CheckReport &r) { return to_json(r).dump(2) + "\n"; }

std::string emit_report_json(const std::vector<CheckReport> &rs) {
    json arr = json::array();
    for (const auto &r : rs) arr.push_back(to_json(r));
    return arr.dump(2) + "\n";
}

std::string emit_report_markdown(const CheckReport &r) {
    std::ostringstream os;
    os << "## " << r.check << "\n\n";
    os << "- backend: " << (r.backend.empty() ? "-" : r.backend) << "\n";
    os << "- levels: ";
    if (r.levels.empty())
        os << "-";
    else
        for (size_t i = 0; i < r.levels.size(); ++i) os << (i ? "," : "") << r.levels[i];
    os << "\n";
    os << "- verdict: " << (r.pass ? "pass" : "fail") << "\n";
    os << "- seed: " << r.seed << ", samples: " << r.samples << "\n";
    if (!r.table.empty()) {
        os << "\n| theory | local equivalence | ES purification |\n|---|---|---|\n";
        for (const auto &row : r.table)
            os << "| " << row.backend << " | " << (row.local_equivalence ? "✓" : "✗") << " | "
               << (row.es_purification ? "✓" : "✗") << " |\n";
    }
    if (!r.tolerances.empty()) {
        os << "- tolerances:";
        for (const auto &[k, v] : r.tolerances) os << " " << k << "=" << v;
        os << "\n";
    }
    if (!r.witnesses.empty()) {
        os << "\n| witness | algebra | coords |\n|---|---|---|\n";
        for (const auto &w : r.witnesses) {
            os << "| " << w.label << " | " << w.algebra << " | ";
            for (size_t i = 0; i < w.coords.size(); ++i) os << (i ? " " : "") << w.coords[i];
            os << " |\n";
        }
    }
    if (!r.records.empty()) {
        os << "\n| candidate | composite rank | composite dim | admissible dims | excluded | reason |\n";
        os << "|---|---|---|---|---|---|\n";
        for (const auto &rec : r.records) {
            os << "| " << rec.candidate << " | " << rec.composite_rank << " | " << rec.composite_dim << " | ";
            for (size_t i = 0; i < rec.admissible_dims.size(); ++i)
                os << (i ? " " : "") << rec.admissible_dims[i];
            os << " | " << (rec.excluded ? "yes" : "no") << " | " << rec.reason << " |\n";
        }
    }
    return os.str();
}

CheckReport parse_report_json(const std::string &text) {
    json j = json::parse(text);
    CheckReport r;
    r.check = j.at("check").get<std::string>();
    r.backend = j.at("backend").get<std::string>();
    r.levels = j.at("levels").get<std::vector<int>>();
    r.pass = j.at("verdict").get<std::string>() == "pass";
    for (const auto &w : j.at("witnesses")) {
        Witness x;
        x.label = w.at("label").get<std::string>();
        x.algebra = w.at("algebra").get<std::string>();
        x.coords = w.at("coords").get<std::vector<double>>();
        r.witnesses.push_back(std::move(x));
    }
    r.tolerances = j.at("tolerances").get<std::map<std::string, double>>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.samples = j.at("samples").get<int>();
    r.runtime_ms = j.at("runtime_ms").get<double>();
    if (j.contains("records")) {
        for (const auto &jr : j.at("records")) {
            ExclusionRecord rec;
            rec.candidate = jr.at("candidate").get<std::string>();
            rec.composite_rank = jr.at("composite_rank").get<int>();
            rec.composite_dim = jr.at("composite_dim").get<long long>();
            rec.excluded = jr.at("excluded").get<bool>();
            rec.reason = jr.at("reason").get<std::string>();
            std::string key = "rank" + std::to_string(rec.composite_rank) + "_dims";
            if (jr.contains(key)) rec.admissible_dims = jr.at(key).get<std::vector<long long>>();
            r.records.push_back(std::move(rec));
        }
    }
    if (j.contains("table")) {
        for (const auto &jr : j.at("table")) {
            PostulateRow row;
            row.backend = jr.at("backend").get<std::string>();
            row.local_equivalence = jr.at("local_equivalence").get<bool>();
            row.es_purification = jr.at("es_purification").get<bool>();
            r.table.push_back(std::move(row));
        }
    }
    return r;
}

}  // namespace optf
