#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace nirmal::bench {

struct ComparisonRow {
    std::string run;
    std::optional<double> test_accuracy;
    std::optional<double> test_loss;
    std::optional<double> weighted_f1;
    bool best_accuracy = false;
    bool best_loss = false;
    bool best_f1 = false;
};

struct Comparison {
    std::vector<ComparisonRow> rows;
};

// Column order of comparison CSV output.
inline constexpr const char* kComparisonCsvHeader =
    "run,test_accuracy,test_loss,weighted_f1,best_accuracy,best_loss,best_f1";

// Reads <dir>/metrics.json of every run. Best marks go to the highest
// accuracy, the lowest loss and the highest weighted F1; exact ties all get
// the mark and runs without final metrics never do.
Comparison compare(const std::vector<std::filesystem::path>& run_dirs);
void mark_best(Comparison& cmp);

std::string comparison_text(const Comparison& cmp);
std::string comparison_csv(const Comparison& cmp);

}  // namespace nirmal::bench
