// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bodyarray/runner.hpp"

using namespace bodyarray;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("bodyarray_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

const ResultRow* find(const ResultTable& t, const Vec2& p, const std::string& quantity, double index = 0.0) {
    for (const auto& r : t.rows)
        if (r.position && *r.position == p && r.quantity == quantity && r.index == index) return &r;
    return nullptr;
}

} // namespace

TEST(Run, Fig4Table) {
    const auto cfg = preset_scenario("paper_fig4");
    const ResultTable t = run(cfg);
    EXPECT_EQ(t.config_hash, config_hash(cfg));
    for (int m = -2; m <= 2; ++m) {
        const ResultRow* r = find(t, Vec2(1.0, 0.0), "excess_attenuation_antenna_db", m);
        ASSERT_NE(r, nullptr);
        EXPECT_GE(r->value, 13.0);
        EXPECT_LE(r->value, 17.0);
        EXPECT_EQ(r->units, "dB");
    }
    ASSERT_NE(find(t, Vec2(1.0, 0.0), "mean_excess_attenuation_db"), nullptr);
    EXPECT_NEAR(find(t, Vec2(1.0, 0.0), "mean_excess_attenuation_db")->value, 15.0, 2.0);
    // Ordered by position.
    Vec2 last(-1e9, -1e9);
    for (const auto& r : t.rows) {
        ASSERT_TRUE(r.position.has_value());
        EXPECT_TRUE(std::tie(last.x(), last.y()) <= std::tie(r.position->x(), r.position->y()));
        last = *r.position;
    }
}

TEST(Run, Fig6OffLosNegligible) {
    const ResultTable t = run(preset_scenario("paper_fig6"));
    for (double y : {-1.0, 1.0}) EXPECT_LT(find(t, Vec2(1.0, y), "main_lobe_excess_attenuation_db")->value, 1.0);
}

TEST(Run, Fig3ArrayFactorOnly) {
    const auto cfg = preset_scenario("paper_fig3");
    EXPECT_TRUE(cfg.positions.empty());
    const ResultTable t = run(cfg);
    std::set<std::string> series;
    for (const auto& r : t.rows) {
        EXPECT_FALSE(r.position.has_value());
        series.insert(r.series);
    }
    EXPECT_EQ(series.size(), 5u);
    EXPECT_TRUE(series.count("d_a=0.5lambda"));
}

TEST(Run, SweepEqualsSingleRuns) {
    auto cfg = preset_scenario("paper_fig4");
    const ResultTable all = run(cfg, {3});
    std::vector<ResultRow> joined;
    for (const auto& p : cfg.positions) {
        auto one = cfg;
        one.positions = {p};
        const auto t = run(one);
        joined.insert(joined.end(), t.rows.begin(), t.rows.end());
    }
    ASSERT_EQ(joined.size(), all.rows.size());
    for (std::size_t i = 0; i < joined.size(); ++i) {
        EXPECT_EQ(joined[i].quantity, all.rows[i].quantity);
        EXPECT_EQ(joined[i].value, all.rows[i].value);
    }
}

TEST(Run, ErrorsCarryPosition) {
    auto cfg = preset_scenario("paper_fig4");
    cfg.positions = {Vec2(1.0, 0.0), Vec2(4.0, 0.0)}; // second barycenter sits on RX_0
    try {
        run(cfg);
        FAIL() << "expected error";
    } catch (const error& e) {
        EXPECT_NE(std::string(e.what()).find("at position (4, 0): degenerate geometry"), std::string::npos)
            << e.what();
    }
}

TEST(Run, NoiseIsSeededPerPosition) {
    auto cfg = preset_scenario("paper_fig4");
    cfg.noise_std = 0.05;
    cfg.seed = 9;
    const auto a = run(cfg, {1});
    const auto b = run(cfg, {3});
    const ResultRow* ra = find(a, Vec2(1.0, 0.0), "noisy_excess_attenuation_db");
    ASSERT_NE(ra, nullptr);
    EXPECT_EQ(ra->value, find(b, Vec2(1.0, 0.0), "noisy_excess_attenuation_db")->value);
    cfg.seed = 10;
    EXPECT_NE(ra->value, find(run(cfg), Vec2(1.0, 0.0), "noisy_excess_attenuation_db")->value);
}

TEST(Export, NumberFormatting) {
    EXPECT_EQ(format_number(1.0), "1");
    EXPECT_EQ(format_number(-0.0), "0");
    EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333");
    EXPECT_EQ(format_number(123456789012.0), "1.23456789e+11");
    EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
}

TEST(Export, FormatNames) {
    EXPECT_EQ(parse_export_format("csv"), ExportFormat::csv);
    EXPECT_EQ(parse_export_format("jsonl"), ExportFormat::jsonl);
    EXPECT_EQ(parse_export_format("gnuplot"), ExportFormat::gnuplot);
    EXPECT_THROW(parse_export_format("xlsx"), error);
}

TEST(Export, CsvHeaderAndRows) {
    const auto cfg = preset_scenario("paper_fig4");
    const ResultTable t = run(cfg);
    const fs::path dir = scratch("csv");
    export_table(t, ExportFormat::csv, (dir / "t.csv").string());
    std::istringstream in(read_file(dir / "t.csv"));
    std::string line;
    std::getline(in, line);
    EXPECT_NE(line.find(config_hash(cfg)), std::string::npos);
    EXPECT_NE(line.find(version), std::string::npos);
    std::getline(in, line);
    EXPECT_EQ(line, "config_hash,x_m,y_m,series,index_name,index,quantity,value,units");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        EXPECT_EQ(line.rfind(config_hash(cfg), 0), 0u);
        ++rows;
    }
    EXPECT_EQ(rows, t.rows.size());
}

TEST(Export, DoaCurveCsv) {
    const ResultTable t = run(preset_scenario("paper_fig4"));
    const fs::path dir = scratch("curves");
    const auto files = export_curves(t, ExportFormat::csv, dir.string());
    const fs::path spectrum = dir / "excess_attenuation_db_x1_y0.csv";
    ASSERT_TRUE(fs::exists(spectrum));
    EXPECT_NE(std::find(files.begin(), files.end(), spectrum.string()), files.end());
    std::istringstream in(read_file(spectrum));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line.rfind("# bodyarray", 0), 0u);
    std::getline(in, line);
    EXPECT_EQ(line, "gamma_deg,excess_attenuation_db");
    std::size_t n = 0;
    while (std::getline(in, line)) ++n;
    EXPECT_EQ(n, 257u);
}

TEST(Export, JsonlCentralAntenna) {
    const ResultTable t = run(preset_scenario("paper_fig4"));
    const fs::path dir = scratch("jsonl");
    export_table(t, ExportFormat::jsonl, (dir / "t.jsonl").string());
    std::istringstream in(read_file(dir / "t.jsonl"));
    std::string line;
    std::getline(in, line);
    const auto meta = nlohmann::json::parse(line);
    EXPECT_EQ(meta["config_hash"], t.config_hash);
    EXPECT_EQ(meta["version"], version);
    bool found = false;
    while (std::getline(in, line)) {
        const auto j = nlohmann::json::parse(line);
        if (j["quantity"] == "excess_attenuation_antenna_db" && j["x_m"] == 1.0 && j["y_m"] == 0.0 &&
            j["index"] == 0.0) {
            EXPECT_NEAR(j["value"].get<double>(), 15.0, 2.0);
            found = true;
        }
    }
    EXPECT_TRUE(found);
}

TEST(Export, ByteIdenticalReruns) {
    for (const auto format : {ExportFormat::csv, ExportFormat::jsonl, ExportFormat::gnuplot}) {
        const fs::path dir = scratch("rerun");
        const auto cfg = preset_scenario("paper_fig5");
        export_table(run(cfg, {1}), format, (dir / "a").string());
        export_table(run(cfg, {4}), format, (dir / "b").string());
        EXPECT_EQ(read_file(dir / "a"), read_file(dir / "b"));
        EXPECT_FALSE(read_file(dir / "a").empty());
    }
}

TEST(Export, UnwritablePathNamed) {
    const ResultTable t = run(preset_scenario("paper_fig3"));
    try {
        export_table(t, ExportFormat::csv, "/nonexistent-dir/out.csv");
        FAIL();
    } catch (const error& e) {
        EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/out.csv"), std::string::npos);
    }
}
