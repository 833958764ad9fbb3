#include "doctest.h"
#include "test_util.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "peg/cli.hpp"

using namespace peg;
using namespace peg::test;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "")
{
    args.insert(args.begin(), "peg");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::istringstream in(input);
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), in, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content)
{
    auto dir = std::filesystem::temp_directory_path() / "peg_cli_tests";
    std::filesystem::create_directories(dir);
    auto p = dir / name;
    std::ofstream(p) << content;
    return p.string();
}

const char* zero_loop = R"({"states":["q"],"initial":"q","alphabet":["a"],
    "transitions":[["q","a","q",0]],"observations":"blind"})";
const char* two_state = R"({"states":["q0","q1"],"initial":"q0","alphabet":["s"],
    "transitions":[["q0","s","q1",-2],["q1","s","q1",0]],"observations":[["q0"],["q1"]]})";

}  // namespace

TEST_CASE("solve")
{
    auto path = temp_file("one_state_zero_loop.json", zero_loop);
    auto r = run({"solve", path, "--credit", "0"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("Win\n", 0) == 0);

    auto t = run({"solve", "-", "--credit", "1", "--format", "json"}, two_state);
    CHECK(t.code == 1);
    auto j = nlohmann::json::parse(t.out);
    CHECK(j["verdict"] == "Lose");

    auto lim = run({"--limits-nodes", "1", "solve", "-", "--credit", "2"}, two_state);
    CHECK(lim.code == 3);
    CHECK(lim.out.rfind("ResourceLimit", 0) == 0);
}

TEST_CASE("usage and I/O errors")
{
    CHECK(run({}).code == 2);
    CHECK(run({"solve"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    auto missing = run({"solve", "/nonexistent/game.json"});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("/nonexistent/game.json") != std::string::npos);
    CHECK(run({"solve", "-", "--credit", "-1"}, zero_loop).code == 2);
    CHECK(run({"solve", "-"}, "{broken").code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("fgh")
{
    auto e = run({"fgh", "eval", "--i", "2", "--x", "2"});
    CHECK(e.code == 0);
    CHECK(e.out == "23\n");
    CHECK(run({"fgh", "phi", "--a", "1,0", "--x", "2"}).out == "5\n");
    auto o = run({"fgh", "omega", "--x", "3"});
    CHECK(o.code == 3);
    auto tr = run({"fgh", "rewrite", "--a", "1,0", "--x", "1", "--trace"});
    CHECK(tr.out == "(1,0; 1)\nN1_1 (0,2; 1)\nN2 (0,1; 2)\nN2 (0,0; 3)\nN0 3\n");
    auto bad = run({"fgh", "rewrite", "--a", "0,0", "--x", "1", "--rules", "N2"});
    CHECK(bad.code == 2);
    auto j = run({"--format", "json", "fgh", "eval", "--i", "1", "--x", "3"});
    CHECK(nlohmann::json::parse(j.out)["value"] == 7);
}

TEST_CASE("gen and check")
{
    auto g = run({"gen", "pump", "--m", "1"});
    CHECK(g.code == 0);
    auto c = run({"check", "-"}, g.out);
    CHECK(c.code == 0);
    CHECK(c.out.find("6 states") != std::string::npos);

    auto mpath = temp_file("m_halt.json", serialize_machine(m_halt()));
    auto gm = run({"gen", "minsky", "--machine", mpath});
    CHECK(gm.code == 0);
    CHECK(run({"check", "-"}, gm.out).code == 0);
    auto full = run({"gen", "full", "--machine", mpath});
    CHECK(run({"check", "-"}, full.out).code == 0);
    auto g5 = run({"gen", "gadget", "--machine", mpath, "--which", "5", "--counter", "2"});
    CHECK(run({"check", "-"}, g5.out).code == 0);

    auto invalid = run({"check", "-"}, R"({"states":["q"],"initial":"q","alphabet":["a","b"],
        "transitions":[["q","a","q",0]],"observations":"blind"})");
    CHECK(invalid.code == 1);
    CHECK(invalid.err.find("not total") != std::string::npos);
}

TEST_CASE("minsky run")
{
    auto h = run({"minsky", "run", "--machine", temp_file("h.json", serialize_machine(m_halt())), "--bound", "3"});
    CHECK(h.code == 0);
    CHECK(h.out.rfind("Halted", 0) == 0);
    auto l = run({"minsky", "run", "--machine", temp_file("l.json", serialize_machine(m_loop())), "--bound", "3"});
    CHECK(l.code == 1);
    CHECK(l.out.rfind("BoundExceeded(c1, 4)", 0) == 0);
}

TEST_CASE("strategy, simulate and oracle")
{
    auto path = temp_file("two_state.json", two_state);
    auto spath = (std::filesystem::temp_directory_path() / "peg_cli_tests" / "strat.json").string();
    CHECK(run({"strategy", path, "--credit", "1", "-o", spath}).code == 1);
    CHECK(run({"strategy", path, "--credit", "2", "-o", spath}).code == 0);
    for (std::string adam : {"random", "greedy", "exhaustive"}) {
        auto s = run({"simulate", path, "--credit", "2", "--strategy", spath, "--adam", adam, "--steps", "50"});
        CHECK(s.code == 0);
        CHECK(s.out.find("violated: false") != std::string::npos);
    }
    auto w = run({"simulate", path, "--credit", "1", "--word", "s", "--cycle", "s", "--adam", "exhaustive", "--steps",
                  "5", "--format", "json"});
    CHECK(w.code == 1);
    CHECK(nlohmann::json::parse(w.out)["violated"] == true);

    auto o = run({"oracle", path, "--credit", "2", "--format", "json"});
    CHECK(o.code == 0);
    auto j = nlohmann::json::parse(o.out);
    CHECK(j["credits"]["q0"] == 2);
    CHECK(run({"oracle", "-"}, R"({"states":["a","b"],"initial":"a","alphabet":["s"],
        "transitions":[["a","s","b",0],["b","s","a",0]],"observations":"blind"})")
              .code == 2);
}

TEST_CASE("output is deterministic")
{
    auto path = temp_file("two_state.json", two_state);
    auto a = run({"--seed", "5", "--format", "json", "solve", path, "--credit", "2"});
    auto b = run({"--seed", "5", "--format", "json", "solve", path, "--credit", "2"});
    CHECK(a.out == b.out);
    auto pa = run({"gen", "pump", "--m", "2"});
    auto pb = run({"gen", "pump", "--m", "2"});
    CHECK(pa.out == pb.out);
}
