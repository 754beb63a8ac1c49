#include "nirmal/bench/outputs.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nirmal/error.hpp"

namespace nirmal::bench {

namespace {

using nlohmann::ordered_json;

ordered_json optional_number(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

// One chart panel: a train and a test series against epoch.
struct Panel {
    std::string title;
    std::string key;  // series suffix, matching the history.csv columns
    std::vector<std::pair<double, double>> train;  // (epoch, value)
    std::vector<std::pair<double, double>> test;
    double lo, hi;
};

void draw_panel(std::ostringstream& svg, const Panel& p, double x0, double y0, double w, double h, double max_epoch) {
    const double span_x = std::max(1.0, max_epoch - 1.0);
    const double span_y = p.hi > p.lo ? p.hi - p.lo : 1.0;
    auto px = [&](double epoch) { return x0 + (epoch - 1.0) / span_x * w; };
    auto py = [&](double v) { return y0 + h - (v - p.lo) / span_y * h; };

    svg << "  <g>\n";
    svg << "    <text x=\"" << format_number(x0 + w / 2) << "\" y=\"" << format_number(y0 - 12)
        << "\" text-anchor=\"middle\" font-size=\"14\">" << p.title << "</text>\n";
    svg << "    <rect x=\"" << format_number(x0) << "\" y=\"" << format_number(y0) << "\" width=\"" << format_number(w)
        << "\" height=\"" << format_number(h) << "\" fill=\"none\" stroke=\"#888\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double v = p.lo + span_y * tick / 4.0;
        svg << "    <text x=\"" << format_number(x0 - 6) << "\" y=\"" << format_number(py(v) + 4)
            << "\" text-anchor=\"end\" font-size=\"10\">" << format_number(v) << "</text>\n";
    }
    svg << "    <text x=\"" << format_number(x0 + w / 2) << "\" y=\"" << format_number(y0 + h + 28)
        << "\" text-anchor=\"middle\" font-size=\"11\">epoch</text>\n";
    svg << "    <text x=\"" << format_number(x0) << "\" y=\"" << format_number(y0 + h + 14)
        << "\" font-size=\"10\">1</text>\n";
    svg << "    <text x=\"" << format_number(x0 + w) << "\" y=\"" << format_number(y0 + h + 14)
        << "\" text-anchor=\"end\" font-size=\"10\">" << format_number(max_epoch) << "</text>\n";

    auto series = [&](const std::vector<std::pair<double, double>>& pts, const char* colour, const char* label) {
        svg << "    <polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" data-series=\"" << label
            << '_' << p.key << "\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) svg << ' ';
            svg << format_number(px(pts[i].first)) << ',' << format_number(py(pts[i].second));
        }
        svg << "\"/>\n";
    };
    series(p.train, "#1f77b4", "train");
    series(p.test, "#d62728", "test");
    svg << "    <text x=\"" << format_number(x0 + w - 4) << "\" y=\"" << format_number(y0 + 14)
        << "\" text-anchor=\"end\" font-size=\"10\" fill=\"#1f77b4\">train</text>\n";
    svg << "    <text x=\"" << format_number(x0 + w - 4) << "\" y=\"" << format_number(y0 + 28)
        << "\" text-anchor=\"end\" font-size=\"10\" fill=\"#d62728\">test</text>\n";
    svg << "  </g>\n";
}

}  // namespace

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string history_csv(const RunRecord& record) {
    std::string out = "epoch,train_loss,train_acc,test_loss,test_acc\n";
    for (const auto& r : record.rows) {
        out += std::to_string(r.epoch) + "," + format_number(r.train_loss) + "," + format_number(r.train_accuracy) + ",";
        out += (r.test_loss ? format_number(*r.test_loss) : "") + ",";
        out += (r.test_accuracy ? format_number(*r.test_accuracy) : "") + "\n";
    }
    return out;
}

ordered_json metrics_json(const RunRecord& record) {
    ordered_json j;
    ordered_json config = to_json(record.config);
    config["network"] = record.network;
    config["normalization"] = {{"mean", record.normalization.mean}, {"std", record.normalization.stddev}};
    j["config"] = config;

    ordered_json final;
    std::optional<double> acc, loss, wf1, mf1;
    if (record.final_eval && record.report) {
        acc = record.report->accuracy;
        loss = record.final_eval->loss;
        wf1 = record.report->weighted_f1;
        mf1 = record.report->macro_f1;
    }
    final["test_accuracy"] = optional_number(acc);
    final["test_loss"] = optional_number(loss);
    final["weighted_f1"] = optional_number(wf1);
    final["macro_f1"] = optional_number(mf1);
    j["final"] = final;

    ordered_json per_class = ordered_json::array();
    if (record.report) {
        for (const auto& c : record.report->per_class) {
            per_class.push_back({{"precision", c.precision}, {"recall", c.recall}, {"f1", c.f1}, {"support", c.support}});
        }
    }
    j["per_class"] = per_class;
    j["wall_time_s"] = record.wall_time_s;
    j["status"] = record.status == RunStatus::ok ? "ok" : "diverged";
    if (!record.status_detail.empty()) j["status_detail"] = record.status_detail;
    return j;
}

std::string confusion_csv(const metrics::ConfusionMatrix& cm) {
    std::string out;
    for (std::size_t t = 0; t < cm.num_classes(); ++t) {
        for (std::size_t p = 0; p < cm.num_classes(); ++p) {
            if (p) out += ",";
            out += std::to_string(cm.at(t, p));
        }
        out += "\n";
    }
    return out;
}

std::string predictions_csv(const std::vector<Label>& labels, const std::vector<Label>& predictions) {
    if (labels.size() != predictions.size()) throw ContractViolation("predictions_csv: length mismatch");
    std::string out = "index,label,prediction\n";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out += std::to_string(i) + "," + std::to_string(labels[i]) + "," + std::to_string(predictions[i]) + "\n";
    }
    return out;
}

std::string history_svg(const RunRecord& record) {
    Panel loss{"Loss", "loss", {}, {}, 0.0, 0.0};
    Panel acc{"Accuracy", "acc", {}, {}, 1.0, 1.0};
    for (const auto& r : record.rows) {
        const auto e = static_cast<double>(r.epoch);
        loss.train.emplace_back(e, r.train_loss);
        acc.train.emplace_back(e, r.train_accuracy);
        if (r.test_loss) loss.test.emplace_back(e, *r.test_loss);
        if (r.test_accuracy) acc.test.emplace_back(e, *r.test_accuracy);
    }
    for (const auto* s : {&loss.train, &loss.test})
        for (const auto& [e, v] : *s) loss.hi = std::max(loss.hi, v * 1.05);
    for (const auto* s : {&acc.train, &acc.test})
        for (const auto& [e, v] : *s) acc.lo = std::min(acc.lo, v);
    acc.lo = std::max(0.0, acc.lo - 0.02);
    const double max_epoch = record.rows.empty() ? 1.0 : static_cast<double>(record.rows.back().epoch);

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" height=\"400\" viewBox=\"0 0 960 400\">\n";
    svg << "  <rect width=\"960\" height=\"400\" fill=\"white\"/>\n";
    draw_panel(svg, loss, 70, 40, 380, 300, max_epoch);
    draw_panel(svg, acc, 550, 40, 380, 300, max_epoch);
    svg << "</svg>\n";
    return svg.str();
}

void emit_outputs(const RunRecord& record, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
    write_text(dir / "history.csv", history_csv(record));
    write_text(dir / "metrics.json", metrics_json(record).dump(2) + "\n");
    if (record.final_eval) {
        write_text(dir / "confusion_matrix.csv", confusion_csv(record.final_eval->confusion));
        write_text(dir / "predictions.csv", predictions_csv(record.test_labels, record.final_eval->predictions));
    } else {
        std::filesystem::remove(dir / "confusion_matrix.csv", ec);
        std::filesystem::remove(dir / "predictions.csv", ec);
    }
    write_text(dir / "history.svg", history_svg(record));
}

}  // namespace nirmal::bench
