#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mpv/cli/session.hpp"

using namespace mpv;
using namespace mpv::cli;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string script_path(const char* name) { return std::string(MPV_SOURCE_DIR) + "/scripts/" + name; }
std::string golden_path(const char* name) { return std::string(MPV_SOURCE_DIR) + "/tests/golden/" + name; }

int run_tool(const std::string& args) {
  std::string cmd = std::string(MPV_TOOL) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Session execute(const std::string& text, Options opt = {}) {
  Session s(opt);
  s.run(parse_script(text));
  return s;
}

const char* kInvolution =
    "space P = PP(2) vars x, y, z\n"
    "map q : P -> PP(2) = [y*z, x*z, x*y]\n";

}  // namespace

TEST(Parse, SessionScript) {
  auto s = parse_script(slurp(script_path("cubic_fourfold.mpv")));
  EXPECT_EQ(s.size(), 23u);
  EXPECT_EQ(s[2].render(), "map f : P5 -> PP(2) = [t, u, v]");
  EXPECT_EQ(s[5].kind, Statement::Kind::Variety);
  EXPECT_EQ(s[5].line, 7);
}

TEST(Parse, Statements) {
  auto s = parse_script("space P = PP(2,2)\nmap m : P -> PP(1, 1) = [x1_0, x1_1; x2_0, x2_1] # two factors\n");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].kind, Statement::Kind::Space);
  EXPECT_EQ(s[0].dims, (std::vector<int>{2, 2}));
  EXPECT_EQ(s[1].polys.size(), 2u);
  auto l = parse_script("let (a, b) = graph(f)\nassert first((1, 2)) == 1\n");
  EXPECT_EQ(l[0].names, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(l[1].expr.kind, Expr::Kind::Equal);
  EXPECT_TRUE(parse_script("").empty());
  EXPECT_TRUE(parse_script("# only a comment\n\n").empty());
}

TEST(Parse, ErrorsCarryPosition) {
  auto expect_error = [](const char* text, const char* where) {
    try {
      parse_script(text);
      FAIL() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::ParseError);
      EXPECT_NE(std::string(e.what()).find(where), std::string::npos) << e.what();
    }
  };
  expect_error("space P = PP(2\n", "line 2");
  expect_error("print 1\nfield ZZ\n", "line 2, column 7");
  expect_error("frobnicate x\n", "line 1, column 1");
  expect_error("print $\n", "line 1, column 7");
  expect_error("map f : P -> PP(1) = [x, ]\n", "expected a polynomial");
}

TEST(Parse, RoundTrip) {
  for (const char* name : {"cubic_fourfold.mpv", "cubic_fourfold_modp.mpv"}) {
    auto once = render(parse_script(slurp(script_path(name))));
    EXPECT_EQ(render(parse_script(once)), once);
  }
  auto text = std::string(kInvolution) + "let (a, b) = graph(q)\nprint (dim(a), q == q)\n";
  auto once = render(parse_script(text));
  EXPECT_EQ(once, text);
}

TEST(Execute, GoldenSession) {
  Session s;
  EXPECT_EQ(s.run(parse_script(slurp(script_path("cubic_fourfold.mpv")))), Outcome::Ok);
  EXPECT_EQ(s.text(), slurp(golden_path("cubic_fourfold.txt")));
}

TEST(Execute, GoldenFiniteField) {
  Options opt;
  opt.seed = 1;
  Session s(opt);
  EXPECT_EQ(s.run(parse_script(slurp(script_path("cubic_fourfold_modp.mpv")))), Outcome::Ok);
  EXPECT_EQ(s.text(), slurp(golden_path("cubic_fourfold_modp.txt")));
  EXPECT_EQ(s.to_json().dump(2) + "\n", slurp(golden_path("cubic_fourfold_modp.json")));
}

TEST(Execute, Empty) {
  auto s = execute("");
  EXPECT_TRUE(s.records().empty());
  EXPECT_EQ(s.text(), "");
  EXPECT_EQ(s.to_json().dump(), "[]");
}

TEST(Execute, AssertFailureCitesLine) {
  Session s;
  auto st = parse_script(std::string(kInvolution) + "print 7\nassert mapdegree(q) == 2\nprint 8\n");
  EXPECT_EQ(s.run(st), Outcome::AssertFailed);
  EXPECT_EQ(s.text(), "o3 = 7\n");
  EXPECT_NE(s.error_message().find("line 4"), std::string::npos);
  auto j = s.to_json();
  EXPECT_EQ(j.back()["value"]["code"], "AssertionFailed");
  auto ok = execute(std::string(kInvolution) + "assert mapdegree(q) == 1\n");
  EXPECT_EQ(ok.to_json().back(), json({{"kind", "assert"}, {"line", 3}, {"value", true}}));
}

TEST(Execute, RuntimeErrors) {
  auto check = [](const std::string& text, const char* code, int line) {
    Session s;
    EXPECT_EQ(s.run(parse_script(text)), Outcome::Error) << text;
    ASSERT_TRUE(s.error().has_value());
    EXPECT_EQ(s.error()->value["code"], code) << s.error_message();
    EXPECT_EQ(s.error()->line, line);
  };
  check("space P = PP(2)\nmap q : P -> PP(2) = [x1_0^2, x1_1^2, x1_2^2]\nlet r = inverse(q)\n", "NotBirational", 3);
  check("space P = PP(1)\nspace P = PP(2)\n", "DuplicateName", 2);
  check("print nothing\n", "TypeError", 1);
  check("space P = PP(1)\nprint degree(P, P)\n", "BadArity", 2);
  check("space P = PP(1)\nprint point(P)\n", "UnsupportedClass", 2);
  check("field GF 9\n", "BadArity", 1);
  check(std::string(kInvolution) + "let h = basechange(q, 7)\nlet h = basechange(h, 7)\n", "BadReduction", 4);
  check(std::string(kInvolution) + "let h = basechange(q, 7)\nprint compose(h, q)\n", "MixedFields", 4);
}

TEST(Execute, JsonValues) {
  auto s = execute(slurp(script_path("cubic_fourfold_modp.mpv")));
  const auto j = s.to_json();
  json projdeg, k3;
  for (const auto& r : j) {
    if (r["line"] == 19) projdeg = r["value"];
    if (r["kind"] == "describe") k3 = r["value"]["multidegree"];
  }
  EXPECT_EQ(projdeg, json::parse("[[3,9,25,63,141],[6,18,40,78,141]]"));
  EXPECT_EQ(k3["codim"], 2);
  EXPECT_EQ(k3["terms"], json::parse(R"([{"coefficient":2,"exponents":[2,0]},{"coefficient":5,"exponents":[1,1]},
                                          {"coefficient":2,"exponents":[0,2]}])"));
}

TEST(Execute, Deterministic) {
  const auto text = slurp(script_path("cubic_fourfold_modp.mpv"));
  for (std::uint64_t seed : {1u, 7u}) {
    Options opt;
    opt.seed = seed;
    EXPECT_EQ(execute(text, opt).to_json().dump(), execute(text, opt).to_json().dump());
  }
}

TEST(Execute, FieldOverride) {
  Options opt;
  opt.field = 101;
  auto s = execute(std::string(kInvolution) + "print projdegrees(q)\nprint randprojdegrees(q)\n", opt);
  EXPECT_EQ(s.text(), "o3 = {1, 2, 1}\no4 = {1, 2, 1}\n");
}

TEST(Tool, ExitCodes) {
  const std::string dir = ::testing::TempDir();
  auto write = [&](const char* name, const std::string& text) {
    std::ofstream(dir + name) << text;
    return dir + name;
  };
  EXPECT_EQ(run_tool("run " + write("ok.mpv", std::string(kInvolution) + "print mapdegree(q)\n")), 0);
  EXPECT_EQ(run_tool("run " + write("empty.mpv", "")), 0);
  EXPECT_EQ(run_tool("run " + write("assert.mpv", std::string(kInvolution) + "assert mapdegree(q) == 2\n")), 1);
  EXPECT_EQ(run_tool("run " + write("parse.mpv", "space P = PP(\n")), 2);
  EXPECT_EQ(run_tool("run " + write("runtime.mpv", "print x\n")), 2);
  EXPECT_EQ(run_tool("run " + dir + "ok.mpv --field GF:8"), 2);
  EXPECT_EQ(run_tool("run " + dir + "ok.mpv --json --seed 3 --field GF:65537 --timeout 60"), 0);
}
