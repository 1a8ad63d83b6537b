#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "weyl/cli.hpp"
#include "weyl/serialize.hpp"

using namespace weyl;

namespace
{

struct Run {
    int status;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "weylcalc");
    std::vector<const char *> argv;
    for (const auto &a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

std::string first_line(const std::string &s) { return s.substr(0, s.find('\n')); }

} // namespace

TEST_CASE("zag")
{
    const Run r = run({"zag", "--k", "5"});
    CHECK(r.status == 0);
    CHECK(r.out == "1 2 16 272 7936\n");
    CHECK(run({"zag", "--k", "5", "--route", "bernoulli"}).out == r.out);
    CHECK(run({"zag", "--k", "3", "--format", "json"}).out == "{\"zag\":[\"1\",\"2\",\"16\"]}\n");
    CHECK(run({"zag", "--k", "0"}).status == 2);
    CHECK(run({"zag", "--route", "guess"}).status == 2);
}

TEST_CASE("graph enumeration")
{
    CHECK(first_line(run({"graphs", "enum", "--edges", "4", "--reduced"}).out) == "15 graphs");
    CHECK(first_line(run({"graphs", "enum", "--edges", "4", "--reduced", "--connected"}).out) == "12 graphs");
    CHECK(first_line(run({"graphs", "enum", "--edges", "4", "--include-odd"}).out) == "23 graphs");
    const Run j = run({"graphs", "enum", "--edges", "2", "--format", "json"});
    REQUIRE(j.status == 0);
    const Json parsed = Json::parse(j.out);
    CHECK(parsed["count"] == 2);
    for (const auto &g : parsed["graphs"]) {
        const UnlabeledGraph u = unlabeled_graph_from_json(g);
        CHECK(to_json(u)["edges"] == g["edges"]);
        CHECK(g["S"] == symmetry_order(u));
    }
    CHECK(run({"graphs", "enum"}).status == 2);
    CHECK(run({"graphs", "enum", "--edges", "99"}).status == 2);
}

TEST_CASE("graph invariants")
{
    const Run r = run({"graphs", "invariants", "--in", R"({"V":3,"edges":[[1,2],[1,2],[1,3],[2,3]]})"});
    REQUIRE(r.status == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["S"] == 4);
    CHECK(j["c"] == 2);
    CHECK(j["connected"] == true);
    CHECK(run({"graphs", "invariants", "--in", "/nonexistent/g.json"}).status == 2);
    CHECK(run({"graphs", "invariants", "--in", R"({"V":2,"edges":[[1,3]]})"}).status == 2);
    CHECK(run({"graphs", "invariants", "--in", "{not json"}).status == 2);
}

TEST_CASE("lambda")
{
    const Run r = run({"lambda", "--graph", R"({"V":2,"edges":[[1,2],[1,2]]})", "--symbol", "x^2+p^2"});
    CHECK(r.status == 0);
    CHECK(r.out == "8\n");
    const Run s = run({"lambda", "--graph", R"({"V":2,"edges":[[1,2]]})", "--symbol", "p^2", "--tensor", "standard"});
    CHECK(s.out == "0\n");
    CHECK(run({"lambda", "--graph", R"({"V":2,"edges":[[1,2]]})", "--symbol", "x^"}).status == 2);
}

TEST_CASE("star and expand agree")
{
    const Run st = run({"star", "--order", "2", "x^2+p^2", "x^2+p^2"});
    const Run ex = run({"expand", "--order", "2", "--symbol", "x^2+p^2", "--function", "poly:0,0,1"});
    REQUIRE(st.status == 0);
    REQUIRE(ex.status == 0);
    CHECK(Json::parse(st.out) == Json::parse(ex.out));
    const SymbolSeries s = series_from_json(Json::parse(st.out));
    CHECK(to_json(s) == Json::parse(st.out));
    CHECK(to_string(s[2]) == "-1");
    const Run text = run({"star", "--order", "2", "--format", "text", "x", "p"});
    CHECK(text.out == "hbar^0: x*p\nhbar^1: (1/2*i)\nhbar^2: 0\n");
    CHECK(run({"star", "--graphs", "--order", "3", "x^2*p", "p^2", "x"}).out ==
          run({"star", "--order", "3", "x^2*p", "p^2", "x"}).out);
}

TEST_CASE("expand outputs re-parse")
{
    const Run jet = run({"expand", "--symbol", "x^3+p^2"});
    REQUIRE(jet.status == 0);
    const Json j = Json::parse(jet.out);
    CHECK(to_json(jet_from_json(j)) == j);
    for (const char *form : {"labeled", "connected"})
        CHECK(run({"expand", "--symbol", "x^3+p^2", "--form", form}).out == jet.out);
    const Run res = run({"expand", "--symbol", "x^3+p^2", "--function", "resolvent", "--order", "2"});
    REQUIRE(res.status == 0);
    CHECK(to_json(resolvent_series_from_json(Json::parse(res.out))) == Json::parse(res.out));
    const Run ex = run({"expand", "--symbol", "x^2+p^2", "--function", "exp:1/2"});
    REQUIRE(ex.status == 0);
    CHECK(to_json(series_from_json(Json::parse(ex.out))) == Json::parse(ex.out));
    CHECK(run({"expand", "--symbol", "x1*p2+x2^2", "--order", "2"}).status == 0);
    CHECK(run({"expand", "--symbol", "x", "--form", "planar"}).status == 2);
    CHECK(run({"expand", "--symbol", "x", "--function", "sin"}).status == 2);
}

TEST_CASE("quadratic")
{
    const Run r = run({"quadratic", "--Q", "1,0;0,1", "--function", "exp", "--order", "4"});
    REQUIRE(r.status == 0);
    const SymbolSeries s = series_from_json(Json::parse(r.out));
    CHECK(to_string(s[2]) == "-1/24*x^2 - 1/24*p^2 - 1/8");
    CHECK(run({"quadratic", "--Q", "1,0;0,1", "--route", "exponent"}).out ==
          run({"quadratic", "--Q", "1,0;0,1"}).out);
    const Run p = run({"quadratic", "--Q", "1,0;0,1", "--propagator", "--order", "4"});
    REQUIRE(p.status == 0);
    CHECK(to_json(propagator_from_json(Json::parse(p.out))) == Json::parse(p.out));
    CHECK(run({"quadratic", "--Q", "1,2;0,1"}).status == 2);
}

TEST_CASE("bs")
{
    const Run r = run({"bs", "--potential", "x^2/2", "--mass", "1", "--hbar", "1", "--levels", "3", "--order", "4",
                       "--compare-oracle"});
    REQUIRE(r.status == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "n,E_bs0,E_bs2,E_bs4,E_oracle,abs_err");
    for (int n = 1; n <= 3; ++n) {
        std::getline(in, line);
        std::vector<double> cols;
        std::istringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ','))
            cols.push_back(std::stod(cell));
        REQUIRE(cols.size() == 6);
        CHECK(cols[0] == n);
        for (int k = 1; k <= 4; ++k)
            CHECK(cols[static_cast<std::size_t>(k)] == doctest::Approx(n - 0.5).epsilon(1e-9));
        CHECK(cols[5] < 1e-8);
    }
    const Run no_oracle = run({"bs", "--potential", "x^4", "--levels", "2", "--order", "2"});
    std::istringstream in2(no_oracle.out);
    std::getline(in2, line);
    std::getline(in2, line);
    // Regression pin.
    CHECK(line == "1,0.546267325078,0.617844047095,,,");
    CHECK(run({"bs", "--potential", "x^3"}).status == 2);
    CHECK(run({"bs", "--potential", "x^4", "--order", "3"}).status == 2);
    CHECK(run({"bs", "--potential", "x^4", "--hbar", "0"}).status == 2);
    CHECK(run({"bs", "--potential", "x^4", "--form", "tiny"}).status == 2);
}

TEST_CASE("verify")
{
    const Run r = run({"verify", "--suite", "zag", "--suite", "graph_table"});
    CHECK(r.status == 0);
    // Fixed reporting order regardless of the command line.
    CHECK(r.out.find("graph_table") < r.out.find("zag"));
    CHECK(r.out.find("2/2 suites passed") != std::string::npos);
    CHECK(run({"verify", "--suite", "nothing"}).status == 2);
    CHECK(run({"verify", "--all", "--suite", "zag"}).status == 2);
}

TEST_CASE("configuration")
{
    CHECK(run({}).status == 2);
    CHECK(run({"frobnicate"}).status == 2);
    CHECK(run({"--help"}).status == 0);
    CHECK(run({"star", "--order", "9", "x"}).status == 2);
    CHECK(run({"star", "--tensor", "weyl", "x"}).status == 2);
    CHECK(run({"star", "--format", "xml", "x"}).status == 2);
    ::setenv(kOrderEnvironment, "2", 1);
    CHECK(Json::parse(run({"star", "x", "p"}).out)["order"] == 2);
    ::setenv(kOrderEnvironment, "two", 1);
    CHECK(run({"star", "x", "p"}).status == 2);
    ::unsetenv(kOrderEnvironment);
    CHECK(Json::parse(run({"star", "x", "p"}).out)["order"] == 4);
}
