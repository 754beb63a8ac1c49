#include "nirmal/bench/compare.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

#include "nirmal/bench/outputs.hpp"
#include "nirmal/error.hpp"

namespace nirmal::bench {

namespace {

std::optional<double> number_or_null(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    if (!j[key].is_number()) throw FormatError(std::string("metrics.json field final.") + key + " is not a number");
    return j[key].get<double>();
}

template <class Get, class Better>
void mark(std::vector<ComparisonRow>& rows, Get get, Better better, bool ComparisonRow::*flag) {
    std::optional<double> best;
    for (const auto& r : rows) {
        const auto v = get(r);
        if (v && (!best || better(*v, *best))) best = v;
    }
    for (auto& r : rows) {
        const auto v = get(r);
        r.*flag = best && v && *v == *best;
    }
}

std::string cell(const std::optional<double>& v, bool best) {
    if (!v) return "n/a";
    return format_number(*v) + (best ? " *" : "");
}

std::string csv_number(const std::optional<double>& v) {
    if (!v) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", *v);
    return buf;
}

}  // namespace

void mark_best(Comparison& cmp) {
    mark(cmp.rows, [](const ComparisonRow& r) { return r.test_accuracy; }, std::greater<>(), &ComparisonRow::best_accuracy);
    mark(cmp.rows, [](const ComparisonRow& r) { return r.test_loss; }, std::less<>(), &ComparisonRow::best_loss);
    mark(cmp.rows, [](const ComparisonRow& r) { return r.weighted_f1; }, std::greater<>(), &ComparisonRow::best_f1);
}

Comparison compare(const std::vector<std::filesystem::path>& run_dirs) {
    if (run_dirs.size() < 2) throw ConfigError("compare needs at least two run directories");
    Comparison cmp;
    for (const auto& dir : run_dirs) {
        const auto path = dir / "metrics.json";
        if (!std::filesystem::is_regular_file(path)) throw IoError("missing metrics.json in run directory " + dir.string());
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(read_text(path));
        } catch (const nlohmann::json::exception& e) {
            throw FormatError(path.string() + ": " + e.what());
        }
        if (!j.is_object() || !j.contains("final")) throw FormatError(path.string() + ": no \"final\" field");
        const auto& f = j["final"];
        if (!f.is_null() && !f.is_object()) throw FormatError(path.string() + ": \"final\" is not an object");
        ComparisonRow row;
        row.run = dir.filename().empty() ? dir.parent_path().filename().string() : dir.filename().string();
        // A diverged run has final = null and appears with empty cells.
        if (f.is_object()) {
            row.test_accuracy = number_or_null(f, "test_accuracy");
            row.test_loss = number_or_null(f, "test_loss");
            row.weighted_f1 = number_or_null(f, "weighted_f1");
        }
        cmp.rows.push_back(std::move(row));
    }
    mark_best(cmp);
    return cmp;
}

std::string comparison_text(const Comparison& cmp) {
    std::size_t width = 3;
    for (const auto& r : cmp.rows) width = std::max(width, r.run.size());
    char line[256];
    std::string out;
    std::snprintf(line, sizeof line, "%-*s  %-14s  %-14s  %-14s\n", static_cast<int>(width), "run", "test_accuracy",
                  "test_loss", "weighted_f1");
    out += line;
    for (const auto& r : cmp.rows) {
        std::snprintf(line, sizeof line, "%-*s  %-14s  %-14s  %-14s\n", static_cast<int>(width), r.run.c_str(),
                      cell(r.test_accuracy, r.best_accuracy).c_str(), cell(r.test_loss, r.best_loss).c_str(),
                      cell(r.weighted_f1, r.best_f1).c_str());
        out += line;
    }
    out += "(* best in column)\n";
    return out;
}

std::string comparison_csv(const Comparison& cmp) {
    std::string out = std::string(kComparisonCsvHeader) + "\n";
    for (const auto& r : cmp.rows) {
        out += r.run + "," + csv_number(r.test_accuracy) + "," + csv_number(r.test_loss) + "," +
               csv_number(r.weighted_f1) + "," + (r.best_accuracy ? "1" : "0") + "," + (r.best_loss ? "1" : "0") +
               "," + (r.best_f1 ? "1" : "0") + "\n";
    }
    return out;
}

}  // namespace nirmal::bench
