#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gw/cli.hpp"
#include "gw/presets.hpp"
#include "gw/textio.hpp"
#include "helpers.hpp"

using namespace gw;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& contents)
        : path("cli_test_" + name)
    {
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = run_command(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("validate command")
{
    TempFile f("z2.gw", serialize_groupoid(make_z2()));
    Run r = run({"validate", f.path});
    CHECK(r.code == 0);
    CHECK(r.out.find("is_open=1") != std::string::npos);

    TempFile broken("broken.gw", "objects: a\nnonsense\n");
    Run r2 = run({"validate", broken.path});
    CHECK(r2.code == 2);

    Run r3 = run({"validate", "does_not_exist.gw"});
    CHECK(r3.code == 2);
}

TEST_CASE("subgroupoids and site listings")
{
    TempFile f("p2.gw", serialize_groupoid(make_p2()));
    Run r = run({"subgroupoids", f.path});
    CHECK(r.code == 0);
    CHECK(r.out.find("5 open subgroupoids") != std::string::npos);

    Run s = run({"site", f.path});
    CHECK(s.code == 0);
}

TEST_CASE("hom command cross-checks the bijection")
{
    TempFile f("z2.gw", serialize_groupoid(make_z2()));
    // site objects of Z2 in order: 0 = (∅,∅), 1 = ({*},{1}), 2 = ({*},{1,s})
    Run r = run({"hom", f.path, "1", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("1 T-sets") != std::string::npos);
    CHECK(r.out.find("oracle agrees") != std::string::npos);

    Run none = run({"hom", f.path, "2", "1"});
    CHECK(none.code == 0);
    CHECK(none.out.find("0 T-sets") != std::string::npos);

    Run endo = run({"hom", f.path, "1", "1"});
    CHECK(endo.out.find("2 T-sets") != std::string::npos);

    Run bad = run({"hom", f.path, "9", "0"});
    CHECK(bad.code == 2);
}

TEST_CASE("subobjects command")
{
    TempFile f("p2.gw", serialize_groupoid(make_p2()));
    // index 3 is (G0,{1a,1b}) in lex order: (∅,∅), ({a},{1a}), ({a,b},{1a,1b}), ...
    Run r = run({"site", f.path});
    Run sub = run({"subobjects", f.path, "2"});
    CHECK(sub.code == 0);
    CHECK(sub.out.find("4 subobjects") != std::string::npos);
}

TEST_CASE("restrict command")
{
    TempFile f("d2.gw", serialize_groupoid(make_d2()));
    Run r = run({"restrict", f.path, "--h0", "a"});
    CHECK(r.code == 0);
    CHECK(r.out.find("essentially_surjective=1") != std::string::npos);
    CHECK(r.out.find("essentially_full=1") != std::string::npos);

    TempFile p("p2.gw", serialize_groupoid(make_p2()));
    Run bad = run({"restrict", p.path, "--h0", "a"});
    CHECK(bad.code == 2); // {a} is not replete in P2
}

TEST_CASE("closure and definable commands")
{
    TempFile f("i2.gw", serialize_groupoid(make_i2()));
    Run r = run({"closure", f.path, "--set", "a"});
    CHECK(r.code == 0);
    CHECK(r.out.find("{a,b}") != std::string::npos);

    Run d = run({"definable", f.path, "--set", "a"});
    CHECK(d.code == 0); // a query, not a failure
    CHECK(d.out.find("definable=false") != std::string::npos);

    TempFile f2("d2.gw", serialize_groupoid(make_d2()));
    Run d2r = run({"definable", f2.path, "--set", "a"});
    CHECK(d2r.code == 0);
    CHECK(d2r.out.find("definable=true") != std::string::npos);
}

TEST_CASE("check command passes on Z2 and is byte-deterministic")
{
    TempFile f("z2.gw", serialize_groupoid(make_z2()));
    Run a = run({"--format", "machine", "check", f.path, "--all"});
    Run b = run({"--format", "machine", "check", f.path, "--all"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"pass\": true") != std::string::npos);
    CHECK(a.out.find("\"pass\": false") == std::string::npos);
}

TEST_CASE("check exits 1 when a check fails")
{
    // valid axioms and continuity, but the domain map is not open
    TempFile f("nonopen.gw", serialize_groupoid(gw::testing::non_open_groupoid()));
    Run r = run({"check", f.path, "--all"});
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL") != std::string::npos);

    // site-level queries refuse it outright
    Run h = run({"site", f.path});
    CHECK(h.code == 2);
}

TEST_CASE("gen command writes parseable deterministic files")
{
    std::string path = "cli_test_gen.gw";
    Run r = run({"gen", "random", "-o", path, "--seed", "7"});
    CHECK(r.code == 0);
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    FinGroupoid g = parse_groupoid(buf.str());
    FinGroupoid again = random_groupoid(7);
    CHECK(g == again);
    std::remove(path.c_str());

    Run p = run({"gen", "pair:2:discrete", "-o", path});
    CHECK(p.code == 0);
    std::ifstream in2(path);
    std::stringstream buf2;
    buf2 << in2.rdbuf();
    CHECK(parse_groupoid(buf2.str()) == make_p2());
    std::remove(path.c_str());

    Run bad = run({"gen", "mystery", "-o", path});
    CHECK(bad.code == 2);
}

TEST_CASE("usage errors exit with 2")
{
    Run r = run({"frobnicate"});
    CHECK(r.code == 2);
    Run empty = run({});
    CHECK(empty.code == 2);
}

TEST_CASE("help exits cleanly")
{
    Run r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("check") != std::string::npos);
}

TEST_CASE("machine output is well-formed JSON")
{
    TempFile f("z2.gw", serialize_groupoid(make_z2()));
    for (std::vector<std::string> args :
         {std::vector<std::string>{"--format", "machine", "subgroupoids", f.path},
          {"--format", "machine", "site", f.path},
          {"--format", "machine", "hom", f.path, "1", "2"},
          {"--format", "machine", "closure", f.path, "--set", "*"},
          {"--format", "machine", "check", f.path}}) {
        Run r = run(args);
        CHECK(r.code == 0);
        CHECK_NOTHROW(nlohmann::json::parse(r.out));
    }
}
