#include <deltacat/cli.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace deltacat;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args, bool tty = false) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err, tty);
    return {code, out.str(), err.str()};
}

std::string sample(const char* name) { return std::string(DELTACAT_SAMPLES_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& content) {
    const std::string path = ::testing::TempDir() + name;
    std::ofstream(path) << content;
    return path;
}

} // namespace

TEST(Cli, EvalPrintsAParenthesizedPoint) {
    const CliRun r = run({"eval", "--model", "findiff", sample("findiff.dc"), "sq4", "(1)"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "(1)\n");
    EXPECT_EQ(run({"eval", sample("findiff.dc"), "sq4", "(2)"}).out, "(16)\n");
    EXPECT_EQ(run({"eval", sample("findiff.dc"), "swap", "(1 2)"}).out, "(2 1)\n");
    EXPECT_EQ(run({"eval", sample("stream.dc"), "running", "([1 2 3 4 5 6 7 8])"}).out, "([1 5 14 30 55 91 140 204])\n");
}

TEST(Cli, DiffPrintsSecondOrderType) {
    const CliRun r = run({"diff", "--order", "2", sample("findiff.dc"), "sq"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("; (prod (prod Z Z) (prod Z Z)) -> Z"), std::string::npos) << r.out;
    const CliRun one = run({"diff", sample("findiff.dc"), "sq"});
    EXPECT_EQ(one.out, "(diff (prim sq))\n; (prod Z Z) -> Z\n");
}

TEST(Cli, KleisliComposite) {
    const CliRun r = run({"kleisli", sample("findiff.dc"), "flow", "field"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("; Z -> T Z"), std::string::npos);
    EXPECT_EQ(run({"kleisli", sample("findiff.dc"), "sq", "field"}).code, 3);
}

TEST(Cli, LawsCdcFindiff) {
    const CliRun r = run({"laws", "--model", "findiff", "--suite", "cdc", "--seed", "42", "--trials", "200"});
    EXPECT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    int n = 0;
    while (std::getline(lines, line)) {
        const auto j = nlohmann::json::parse(line);
        EXPECT_EQ(j["failures"], 0);
        EXPECT_EQ(j["trials"], 200);
        ++n;
    }
    EXPECT_EQ(n, 10);
}

TEST(Cli, LawFailureExitsWithOne) {
    const CliRun r = run({"laws", "--model", "findiff", "--law", "CD2_additive_violation", "--trials", "50"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("\"status\":\"fail\""), std::string::npos);
}

TEST(Cli, FormatDefaultsFollowTheTerminal) {
    const std::vector<std::string> args{"laws", "--model", "findiff", "--law", "CD0", "--trials", "5"};
    EXPECT_EQ(run(args, false).out.front(), '{');
    EXPECT_EQ(run(args, true).out.rfind("law", 0), 0u);
    auto forced = args;
    forced.insert(forced.end(), {"--format", "jsonl"});
    EXPECT_EQ(run(forced, true).out.front(), '{');
}

TEST(Cli, ReportsAreByteIdentical) {
    const std::vector<std::string> args{"laws", "--model", "stream", "--suite", "all", "--trials", "40"};
    const CliRun a = run(args), b = run(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.code, b.code);
    auto threaded = args;
    threaded.insert(threaded.end(), {"--threads", "3"});
    EXPECT_EQ(run(threaded).out, a.out);
}

TEST(Cli, SeedFromEnvironment) {
    const std::vector<std::string> args{"laws", "--model", "findiff", "--law", "CD5", "--trials", "3"};
    ::setenv("DELTA_CAT_SEED", "7", 1);
    const CliRun env = run(args);
    ::unsetenv("DELTA_CAT_SEED");
    EXPECT_NE(env.out.find("\"seed\":7"), std::string::npos);
    auto explicit_seed = args;
    explicit_seed.insert(explicit_seed.end(), {"--seed", "7"});
    EXPECT_EQ(run(explicit_seed).out, env.out);
    EXPECT_NE(run(args).out.find("\"seed\":42"), std::string::npos);
    ::setenv("DELTA_CAT_SEED", "abc", 1);
    EXPECT_EQ(run(args).code, 2);
    ::unsetenv("DELTA_CAT_SEED");
}

TEST(Cli, MonadCommand) {
    const CliRun r = run({"monad", "--model", "module:r=1", "--trials", "20"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("MONAD_ASSOC"), std::string::npos);
}

TEST(Cli, ToleranceAndStreamDepthFlags) {
    const CliRun r = run({"laws", "--model", "stream", "--stream-depth", "3", "--law", "STREAM_OPLUS", "--trials", "5"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("stream:depth=3"), std::string::npos);
    EXPECT_EQ(run({"laws", "--model", "smooth", "--tol", "1e-4", "--law", "CD2", "--trials", "5"}).code, 0);
    EXPECT_EQ(run({"laws", "--model", "smooth", "--tol", "-1", "--law", "CD2"}).code, 2);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"laws"}).code, 2);
    EXPECT_EQ(run({"laws", "--model", "nope"}).code, 2);
    EXPECT_EQ(run({"laws", "--model", "findiff", "--suite", "nope"}).code, 2);
    EXPECT_EQ(run({"laws", "--model", "findiff", "--law", "CD99"}).code, 2);
    EXPECT_EQ(run({"laws", "--model", "findiff", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"eval", "/nonexistent.dc", "f", "(1)"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
    const std::string bad = temp_file("bad.dc", "(model findiff)\n(def bad (comp (prim sq) (pair (id Z) (id Z))))\n");
    const CliRun t = run({"eval", bad, "bad", "(1)"});
    EXPECT_EQ(t.code, 3);
    EXPECT_NE(t.err.find("bad.dc:2:10: type mismatch: comp: expected Z"), std::string::npos) << t.err;
    EXPECT_EQ(run({"eval", sample("findiff.dc"), "missing", "(1)"}).code, 3);
    EXPECT_EQ(run({"eval", sample("findiff.dc"), "sq", "(1 2)"}).code, 3);
    EXPECT_EQ(run({"eval", sample("stream.dc"), "sq", "([1 2])"}).code, 3);
    EXPECT_EQ(run({"eval", "--model", "smooth", sample("findiff.dc"), "sq", "(1)"}).code, 3);
}

TEST(Cli, ListLaws) {
    const CliRun r = run({"laws", "--model", "findiff", "--list"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("cdc CD0\n"), std::string::npos);
    EXPECT_NE(r.out.find("control CD2_additive_violation\n"), std::string::npos);
}
