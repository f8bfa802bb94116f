#include <ppd/report_json.hpp>

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(PPD_BINARY) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string data(const std::string& name) { return std::string(PPD_TEST_DATA) + "/" + name; }

} // namespace

TEST(Cli, CheckExitCodes) {
    auto fig1 = run("check " + data("fig1.csv"));
    EXPECT_EQ(fig1.status, 0);
    EXPECT_EQ(fig1.out, "compatible\n");
    EXPECT_EQ(run("check " + data("square.csv")).status, 1);
    EXPECT_EQ(run("check " + data("fig3a.csv")).status, 1);
    EXPECT_EQ(run("check " + data("ragged.csv")).status, 2);
    EXPECT_EQ(run("check /nonexistent/file.csv").status, 2);
    EXPECT_EQ(run("frobnicate").status, 2);
}

TEST(Cli, ObstructJson) {
    auto r = run("obstruct " + data("fig3a.csv"));
    ASSERT_EQ(r.status, 1);
    auto j = ppd::Json::parse(r.out);
    EXPECT_EQ(j["verdict"], "incompatible_triple");
    EXPECT_EQ(j["triple"], ppd::Json::parse(R"(["a","b","c"])"));
    EXPECT_TRUE(j["pair"].empty());
    ASSERT_EQ(j["dependent"].size(), 2u);
    EXPECT_EQ(j["dependent"][0]["char"], "c");
    EXPECT_EQ(j["dependent"][0]["path"].size(), 5u);

    auto pair = ppd::Json::parse(run("obstruct " + data("square.csv")).out);
    EXPECT_EQ(pair["verdict"], "incompatible_pair");
    EXPECT_EQ(pair["pair"], ppd::Json::parse(R"(["a","b"])"));
}

TEST(Cli, ErrorJson) {
    auto r = run("obstruct --output json " + data("ragged.csv"));
    EXPECT_EQ(r.status, 2);
    EXPECT_TRUE(ppd::Json::parse(r.out).contains("error"));
}

TEST(Cli, TreeNewick) {
    auto r = run("tree " + data("fig1.csv"));
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "((((t2,t5),t6),t3),t1,t4);\n");
    EXPECT_EQ(run("tree " + data("fig3b.csv")).status, 1);
}

TEST(Cli, CompactFormatAndStdin) {
    auto r = run("check --format compact - < " + data("fig1.txt"));
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "compatible\n");
    auto piped = run("obstruct < " + data("fig3c.csv"));
    EXPECT_EQ(piped.status, 1);
    EXPECT_EQ(ppd::Json::parse(piped.out)["verdict"], "incompatible_triple");
}

TEST(Cli, OracleAgrees) {
    for (const char* f : {"fig1.csv", "fig3a.csv", "fig3b.csv", "fig3c.csv", "square.csv"}) {
        auto fast = run("check " + data(f));
        auto slow = run("oracle " + data(f));
        EXPECT_EQ(fast.status, slow.status) << f;
        EXPECT_EQ(ppd::Json::parse(slow.out)["oracle"], true);
    }
}

TEST(Cli, GenIsDeterministic) {
    auto a = run("gen --taxa 8 --chars 5 --seed 4 --mode obstructed");
    auto b = run("gen --taxa 8 --chars 5 --seed 4 --mode obstructed");
    EXPECT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(ppd::parse_matrix(a.out, ppd::InputFormat::Csv).taxa(), 8u);
    EXPECT_EQ(run("gen --mode nonsense").status, 2);
}

TEST(Cli, GenFeedsCheck) {
    const auto path = std::filesystem::temp_directory_path() / "ppd_cli_test_gen.csv";
    {
        std::ofstream f(path);
        f << run("gen --taxa 30 --chars 12 --seed 8 --mode compatible-biased").out;
    }
    EXPECT_EQ(run("check " + path.string()).status, 0);
    EXPECT_EQ(run("tree " + path.string()).status, 0);
    std::filesystem::remove(path);
}

TEST(Cli, BenchJson) {
    auto r = run("bench --sizes 5,10 --taxa 10 --reps 1 --output json");
    ASSERT_EQ(r.status, 0);
    auto j = ppd::Json::parse(r.out);
    EXPECT_EQ(j["records"].size(), 4u);
    EXPECT_TRUE(j["slopes"].contains("algorithm1"));
}

TEST(Cli, ThreadsGiveSameBytes) {
    const auto path = std::filesystem::temp_directory_path() / "ppd_cli_test_threads.csv";
    {
        std::ofstream f(path);
        f << run("gen --taxa 40 --chars 30 --seed 2 --mode obstructed").out;
    }
    auto one = run("obstruct " + path.string());
    auto four = run("obstruct --threads 4 " + path.string());
    EXPECT_EQ(one.out, four.out);
    EXPECT_EQ(one.status, four.status);
    std::filesystem::remove(path);
}
