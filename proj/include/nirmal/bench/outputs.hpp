#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "nirmal/bench/training.hpp"

namespace nirmal::bench {

// Formats with 6 significant digits ("%.6g").
std::string format_number(double v);

std::string history_csv(const RunRecord& record);
nlohmann::ordered_json metrics_json(const RunRecord& record);
std::string confusion_csv(const metrics::ConfusionMatrix& cm);
std::string predictions_csv(const std::vector<Label>& labels, const std::vector<Label>& predictions);
// Two charts (loss, accuracy vs epoch), each with a train and a test polyline.
std::string history_svg(const RunRecord& record);

// history.csv, metrics.json, confusion_matrix.csv, predictions.csv and
// history.svg under dir (created if needed).
void emit_outputs(const RunRecord& record, const std::filesystem::path& dir);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace nirmal::bench
