#include "cli.hpp"
#include "fixtures.hpp"

#include <hrql/io.hpp>

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <sstream>

using namespace hrql;
using namespace hrql::test;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "hrql");
    std::ostringstream out, err;
    int code = cli_main(args, out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir = fs::temp_directory_path() / ("hrql_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                           "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    std::string put(const std::string &name, const std::string &text)
    {
        auto p = (dir / name).string();
        write_file(p, text);
        return p;
    }
    std::string path(const std::string &name) const { return (dir / name).string(); }

    fs::path dir;
};

} // namespace

TEST_F(Cli, SolveNoInstance)
{
    auto f = put("f1.json", serialize_instance(f1()));
    for (std::string method : {"auto", "q2", "fpt", "brute", "ilp"}) {
        auto r = run({"solve", f, "--method", method});
        EXPECT_EQ(r.code, 1) << method << r.err;
        EXPECT_EQ(r.out, "NO\n") << method;
    }
}

TEST_F(Cli, SolveYesAndCheck)
{
    auto inst = f4();
    auto f = put("f4.json", serialize_instance(inst));
    auto r = run({"solve", f, "-o", path("m.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(parse_matching(inst, read_file(path("m.json"))), f4_final(inst));

    auto c = run({"check", f, path("m.json")});
    EXPECT_EQ(c.code, 0);
    EXPECT_EQ(nlohmann::json::parse(c.out)["stable"], true);

    auto empty = put("empty.json", serialize_matching(inst, Matching(inst.n())));
    c = run({"check", f, empty});
    EXPECT_EQ(c.code, 1);
    EXPECT_EQ(nlohmann::json::parse(c.out)["stable"], false);
}

TEST_F(Cli, Trace)
{
    auto f = put("f4.json", serialize_instance(f4()));
    auto r = run({"solve", f, "--method", "q2", "--trace", path("t.log")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(read_file(path("t.log")).find("ROTATION (r1,h1),(r3,r2)"), std::string::npos);
    r = run({"solve", f, "--method", "brute", "--trace", path("t.log")});
    EXPECT_EQ(r.code, 2);
}

TEST_F(Cli, EnumerateAndCount)
{
    auto inst = f2();
    auto f = put("f2.json", serialize_instance(inst));
    auto r = run({"enumerate", f});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out).size(), 2u);

    r = run({"solve", f, "--count-open", "1"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(parse_matching(inst, r.out), f2_m1(inst));
    r = run({"solve", f, "--count-open", "3"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "NO\n");
    r = run({"solve", f, "--open", "h1,h2"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(parse_matching(inst, r.out), f2_m2(inst));
}

TEST_F(Cli, GenerateAndExport)
{
    auto r = run({"generate", "counterexample", "-o", path("c.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(read_file(path("c.json")), serialize_instance(f1()));

    r = run({"generate", "sat", "--formula", "1,-2,3;-1,2,-3;1,2,3;-1,-2,-3", "-o", path("s.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(parse_instance(read_file(path("s.json"))).n(), 21);

    r = run({"generate", "clique", "--demo", "--k", "3", "-o", path("k.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    r = run({"export-lp", path("k.json"), "-o", path("k.lp")});
    ASSERT_EQ(r.code, 0) << r.err;
    auto lp = read_file(path("k.lp"));
    EXPECT_EQ(lp.rfind("Minimize\n", 0), 0u);
    EXPECT_EQ(lp.substr(lp.size() - 4), "End\n");

    auto f = put("f4.json", serialize_instance(f4()));
    r = run({"export-lp", f, "--guess", "open=h1,h2;worst=h1:r3,h2:r2;full=h1,h2", "-o", path("g.lp")});
    ASSERT_EQ(r.code, 0) << r.err;
    r = run({"export-lp", f, "--guess", "open=h1;worst=h1:r2", "-o", path("bad.lp")});
    EXPECT_EQ(r.code, 2);
}

TEST_F(Cli, Errors)
{
    auto r = run({"solve", path("missing.json")});
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(r.err.rfind("error: ", 0), 0u) << r.err;

    auto bad = put("bad.json", "{\"variant\": ");
    r = run({"solve", bad});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("line 1"), std::string::npos) << r.err;

    auto f = put("f2.json", serialize_instance(f2()));
    r = run({"solve", f, "--method", "q2"});
    EXPECT_EQ(r.code, 2);
    r = run({"solve", f, "--open", "h7"});
    EXPECT_EQ(r.code, 2);
    r = run({"frobnicate"});
    EXPECT_EQ(r.code, 2);
    r = run({"--help"});
    EXPECT_EQ(r.code, 0);
}
