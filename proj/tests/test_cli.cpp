#include "forkedtl/cli.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = forkedtl::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args) {
    args.insert(args.begin(), "--json");
    const auto r = run(args);
    EXPECT_EQ(r.code, 0) << r.err;
    return nlohmann::json::parse(r.out);
}

// value printed after "key: " in text output
double text_value(const std::string& text, const std::string& key) {
    const auto at = text.find("\n" + key + ": ");
    const auto pos = at == std::string::npos ? (text.rfind(key + ": ", 0) == 0 ? 0 : std::string::npos) : at + 1;
    if (pos == std::string::npos) throw std::runtime_error("missing key " + key);
    return std::stod(text.substr(pos + key.size() + 2));
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("forkedtl_test_" + name);
}

} // namespace

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"graphs", "list"}).code, 0);
    EXPECT_EQ(run({"bogus"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"graphs", "norm", "--graph", "F4"}).code, 2);
    EXPECT_EQ(run({"angle", "--index", "5"}).code, 2);
    EXPECT_EQ(run({"classify", "--tau", "-1"}).code, 2);
    EXPECT_EQ(run({"verify", "nothing", "--graph", "D5"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, VerifyExitCodes) {
    EXPECT_EQ(run({"verify", "forked", "--graph", "D5", "--depth", "5", "--tol", "1e-9"}).code, 0);
    EXPECT_EQ(run({"verify", "tl", "--graph", "E6", "--depth", "4"}).code, 0);
    EXPECT_EQ(run({"verify", "evans-gould", "--graph", "D6", "--depth", "4"}).code, 0);
    // below roundoff every check fails
    EXPECT_EQ(run({"verify", "forked", "--graph", "D5", "--depth", "4", "--tol", "1e-300"}).code, 1);
    EXPECT_EQ(run({"verify", "forked", "--graph", "E6", "--depth", "4"}).code, 2);
}

TEST(Cli, AngleText) {
    const auto r = run({"angle", "--index", "3"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("angle: π/3 ≈ 1.047198"), std::string::npos) << r.out;
    const auto d5 = run({"angle", "--ghj", "5"});
    EXPECT_NE(d5.out.find("angle_rad: 1.1437177404"), std::string::npos) << d5.out;
    EXPECT_EQ(d5.out.find("π"), std::string::npos);
}

TEST(Cli, AngleDegenerate) {
    const auto j = run_json({"angle", "--index", "2"});
    EXPECT_EQ(j["degenerate"], true);
    EXPECT_EQ(j["angle_rad"], 0.0);
}

TEST(Cli, JsonIsDeterministic) {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"--json", "verify", "forked", "--graph", "D5", "--depth", "4"},
             {"--json", "angle", "--graph", "D5", "--numeric", "--depth", "4"},
             {"--json", "tower", "--graph", "E6", "--depth", "5"},
             {"--json", "graphs", "list"}}) {
        const auto a = run(args), b = run(args);
        EXPECT_EQ(a.code, 0);
        EXPECT_EQ(a.out, b.out);
        EXPECT_TRUE(nlohmann::json::accept(a.out));
    }
}

TEST(Cli, TextAndJsonAgree) {
    const std::vector<std::string> args{"angle", "--graph", "D6", "--numeric", "--depth", "4"};
    const auto text = run(args).out;
    const auto j = run_json(args);
    for (const char* key : {"index", "tau", "lambda", "angle_rad", "angle_deg"}) {
        const double t = text_value(text, key);
        const double v = j[key].get<double>();
        EXPECT_NEAR(t, v, 1e-11 * std::max(1.0, std::abs(v))) << key;
    }
    const auto norm_text = run({"graphs", "norm", "--graph", "E7"}).out;
    const auto norm_json = run_json({"graphs", "norm", "--graph", "E7"});
    EXPECT_NEAR(text_value(norm_text, "norm"), norm_json["norm"].get<double>(), 1e-11);
}

TEST(Cli, NumbersHaveTwelveDigits) {
    const auto j = run_json({"graphs", "norm", "--graph", "D5"});
    EXPECT_EQ(j["norm"].get<double>(), 1.84775906502);
    EXPECT_NEAR(j["norm"].get<double>(), 2.0 * std::cos(std::numbers::pi / 8), 5e-12);
}

TEST(Cli, TowerJsonSchema) {
    const auto j = run_json({"tower", "--graph", "D5", "--star", "trivalent", "--depth", "2"});
    EXPECT_EQ(j["graph"], "D5");
    EXPECT_EQ(j["star"], "c3");
    ASSERT_EQ(j["levels"].size(), 3u);
    EXPECT_EQ(j["levels"][0]["dim"], 1);
    EXPECT_EQ(j["levels"][1]["dim"], 3);
    EXPECT_EQ(j["levels"][2]["dim"], 10);
    EXPECT_EQ(j["levels"][1]["blocks"][0]["vertex"], "c2");
}

TEST(Cli, VerifyJsonSchema) {
    const auto j = run_json({"verify", "forked", "--graph", "D4", "--depth", "4"});
    EXPECT_EQ(j["system"]["graph"], "D4");
    EXPECT_TRUE(j["overall"].get<bool>());
    EXPECT_GT(j["checks"].size(), 10u);
}

TEST(Cli, Classify) {
    const auto inad = run({"classify", "--tau", "0.30798", "--k", "2"});
    EXPECT_EQ(inad.code, 0);
    EXPECT_NE(inad.out.find("classification: inadmissible"), std::string::npos);
    const auto j = run_json({"classify", "--tau", "0.2928932188134524", "--k", "2"});
    EXPECT_EQ(j["result"], "admissible");
    EXPECT_EQ(j["n"], 4);
    EXPECT_EQ(run_json({"classify", "--tau", "0.2"})["result"], "unconstrained");
}

TEST(Cli, FusionAndAngleSet) {
    const auto f = run_json({"fusion", "--index", "3", "--max-k", "2"});
    ASSERT_EQ(f["dims"].size(), 3u);
    EXPECT_NEAR(f["dims"][1].get<double>(), 2.0, 1e-11);
    const auto s = run_json({"angleset", "--max-k", "5"});
    ASSERT_EQ(s.size(), 3u);
    EXPECT_EQ(s[0]["k"], 3);
    EXPECT_NEAR(s[0]["angle_deg"].get<double>(), 60.0, 1e-9);
}

TEST(Cli, DotFiles) {
    const auto graph_dot = temp_file("graph.dot");
    const auto tower_dot = temp_file("tower.dot");
    std::filesystem::remove(graph_dot);
    std::filesystem::remove(tower_dot);
    EXPECT_EQ(run({"graphs", "norm", "--graph", "D5", "--star", "trivalent", "--dot", graph_dot.string()}).code, 0);
    EXPECT_EQ(run({"tower", "--graph", "D5", "--depth", "3", "--dot", tower_dot.string()}).code, 0);
    std::stringstream g, t;
    g << std::ifstream(graph_dot).rdbuf();
    t << std::ifstream(tower_dot).rdbuf();
    EXPECT_NE(g.str().find("star=true"), std::string::npos);
    EXPECT_EQ(g.str().rfind("graph \"D5\"", 0), 0u);
    EXPECT_EQ(t.str().rfind("digraph", 0), 0u);
    std::filesystem::remove(graph_dot);
    std::filesystem::remove(tower_dot);

    const auto misuse = run({"angle", "--index", "3", "--dot", temp_file("x.dot").string()});
    EXPECT_EQ(misuse.code, 2);
    EXPECT_FALSE(misuse.err.empty());
}
