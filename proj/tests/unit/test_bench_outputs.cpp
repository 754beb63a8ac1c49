#include <gtest/gtest.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <filesystem>
#include <json.hpp>
#include <sstream>

#include "nirmal/bench/compare.hpp"
#include "nirmal/bench/outputs.hpp"
#include "nirmal/bench/training.hpp"
#include "nirmal/error.hpp"

using namespace nirmal;
using namespace nirmal::bench;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("nirmal_out_" + name);
    fs::remove_all(dir);
    return dir;
}

RunRecord synth_record(std::size_t epochs, const fs::path& out, const optim::OptimizerConfig& opt = optim::AdamConfig{}) {
    RunConfig cfg;
    cfg.optimizer = opt;
    cfg.dataset = data::DatasetKind::synth;
    cfg.epochs = epochs;
    cfg.out_dir = out;
    return run_training(cfg);
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

void count_polylines(const boost::property_tree::ptree& node, std::vector<std::string>& series) {
    for (const auto& [name, child] : node) {
        if (name == "polyline") series.push_back(child.get<std::string>("<xmlattr>.data-series", ""));
        count_polylines(child, series);
    }
}

// Fabricated metrics.json with only the fields compare reads.
fs::path fake_run(const std::string& name, double acc, double loss, double f1) {
    const auto dir = scratch("fake_" + name);
    fs::create_directories(dir);
    nlohmann::json j;
    j["final"] = {{"test_accuracy", acc}, {"test_loss", loss}, {"weighted_f1", f1}, {"macro_f1", f1}};
    write_text(dir / "metrics.json", j.dump());
    return dir;
}

}  // namespace

TEST(Outputs, TenEpochHistoryRowCount) {
    const auto dir = scratch("ten");
    synth_record(10, dir);
    const auto text = read_text(dir / "history.csv");
    EXPECT_EQ(count_lines(text), 11u);
    EXPECT_EQ(text.substr(0, text.find('\n')), "epoch,train_loss,train_acc,test_loss,test_acc");
}

TEST(Outputs, NumberFormatting) {
    EXPECT_EQ(format_number(0.123456789), "0.123457");
    EXPECT_EQ(format_number(1.0), "1");
    EXPECT_EQ(format_number(2.5e-7), "2.5e-07");
}

TEST(Outputs, MetricsJsonRoundTripAndSchema) {
    const auto dir = scratch("json");
    synth_record(2, dir);
    const auto text = read_text(dir / "metrics.json");
    const auto j = nlohmann::json::parse(text);
    EXPECT_EQ(nlohmann::json::parse(j.dump()), j);
    for (const char* key : {"config", "final", "per_class", "wall_time_s", "status"}) EXPECT_TRUE(j.contains(key)) << key;
    for (const char* key : {"test_accuracy", "test_loss", "weighted_f1", "macro_f1"})
        EXPECT_TRUE(j["final"][key].is_number()) << key;
    ASSERT_EQ(j["per_class"].size(), 4u);
    for (const char* key : {"precision", "recall", "f1", "support"}) EXPECT_TRUE(j["per_class"][0].contains(key));
    EXPECT_EQ(j["status"], "ok");
    EXPECT_EQ(j["config"]["epochs"], 2);
    EXPECT_EQ(j["config"]["optimizer"]["name"], "adam");
}

TEST(Outputs, ConfusionCsvSumsToTestSize) {
    const auto dir = scratch("cm");
    synth_record(1, dir);
    std::stringstream ss(read_text(dir / "confusion_matrix.csv"));
    std::uint64_t total = 0;
    std::size_t rows = 0;
    for (std::string line; std::getline(ss, line); ++rows) {
        std::stringstream cells(line);
        std::size_t cols = 0;
        for (std::string c; std::getline(cells, c, ','); ++cols) total += std::stoull(c);
        EXPECT_EQ(cols, 4u);
    }
    EXPECT_EQ(rows, 4u);
    EXPECT_EQ(total, 1000u);
}

TEST(Outputs, SvgIsXmlWithFourSeries) {
    const auto dir = scratch("svg");
    synth_record(3, dir);
    std::stringstream ss(read_text(dir / "history.svg"));
    boost::property_tree::ptree tree;
    ASSERT_NO_THROW(boost::property_tree::read_xml(ss, tree));
    std::vector<std::string> series;
    count_polylines(tree, series);
    ASSERT_EQ(series.size(), 4u);
    std::sort(series.begin(), series.end());
    EXPECT_EQ(series, (std::vector<std::string>{"test_acc", "test_loss", "train_acc", "train_loss"}));
}

TEST(Outputs, UnwritableDirIsIoError) {
    const auto file = scratch("blocker");
    write_text(file, "x");
    RunRecord rec = synth_record(1, {});
    EXPECT_THROW(emit_outputs(rec, file / "sub"), IoError);
}

TEST(Compare, BestAccuracyMarked) {
    const auto cmp = compare({fake_run("a", 0.90, 0.3, 0.89), fake_run("b", 0.95, 0.2, 0.94)});
    ASSERT_EQ(cmp.rows.size(), 2u);
    EXPECT_FALSE(cmp.rows[0].best_accuracy);
    EXPECT_TRUE(cmp.rows[1].best_accuracy);
    EXPECT_TRUE(cmp.rows[1].best_loss);
    EXPECT_TRUE(cmp.rows[1].best_f1);
    EXPECT_NE(comparison_text(cmp).find('*'), std::string::npos);
}

TEST(Compare, TiesShareTheMark) {
    const auto cmp = compare({fake_run("t1", 0.9, 0.3, 0.8), fake_run("t2", 0.9, 0.3, 0.8)});
    for (const auto& r : cmp.rows) {
        EXPECT_TRUE(r.best_accuracy);
        EXPECT_TRUE(r.best_loss);
        EXPECT_TRUE(r.best_f1);
    }
}

TEST(Compare, CsvSchemaOnRealRuns) {
    std::vector<fs::path> dirs;
    for (const auto& [name, opt] : std::vector<std::pair<std::string, optim::OptimizerConfig>>{
             {"n", optim::NirmalConfig{}}, {"a", optim::AdamConfig{}}, {"s", optim::SgdMomentumConfig{}}}) {
        dirs.push_back(scratch("real_" + name));
        synth_record(1, dirs.back(), opt);
    }
    const auto csv = comparison_csv(compare(dirs));
    std::stringstream ss(csv);
    std::string header;
    std::getline(ss, header);
    EXPECT_EQ(header, "run,test_accuracy,test_loss,weighted_f1,best_accuracy,best_loss,best_f1");
    EXPECT_EQ(count_lines(csv), 4u);
}

TEST(Compare, Errors) {
    EXPECT_THROW(compare({fake_run("only", 0.5, 1, 0.5)}), ConfigError);
    const auto missing = scratch("missing_run");
    try {
        compare({fake_run("x", 0.5, 1, 0.5), missing});
        FAIL();
    } catch (const IoError& e) {
        EXPECT_NE(std::string(e.what()).find(missing.string()), std::string::npos);
    }
}

TEST(Compare, DivergedRunNeverBest) {
    const auto dir = scratch("fake_div");
    fs::create_directories(dir);
    write_text(dir / "metrics.json", R"({"final": null, "status": "diverged"})");
    const auto cmp = compare({fake_run("ok", 0.5, 1.0, 0.5), dir});
    EXPECT_TRUE(cmp.rows[0].best_accuracy);
    EXPECT_FALSE(cmp.rows[1].best_accuracy);
    EXPECT_FALSE(cmp.rows[1].test_accuracy.has_value());
}
