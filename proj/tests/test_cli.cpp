#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pythlab/cli.hpp"
#include "pythlab/json_io.hpp"

using namespace pythlab;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::string temp_file(const std::string& name, const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST_CASE("examples") {
  auto a = call({"admissible", "x^3*y"});
  CHECK(a.code == 0);
  CHECK(a.out.rfind("StrictlyAdmissible", 0) == 0);

  auto b = call({"classify", "--f", "-(x^2+y^4)"});
  CHECK(b.code == 0);
  CHECK(has(b.out, "Finite (NegSos)"));

  auto c = call({"decompose", "x^2*y^4+x^4*y^2-3*x^2*y^2+1"});
  CHECK(c.code == 0);
  CHECK(c.out.rfind("NotSos", 0) == 0);
  CHECK(has(c.out, "dual witness"));

  auto d = call({"duval", "A", "3"});
  CHECK(d.code == 0);
  CHECK(has(d.out, "Finite (NegSos)"));

  auto e = call({"classify", "--surface", "z^2 - y"});
  CHECK(e.code == 0);
  CHECK(has(e.out, "Infinite (Main)"));

  auto f = call({"admissible", "-2*x^2-3*x^4*y^2"});
  CHECK(f.code == 0);
  CHECK(f.out.rfind("NotAdmissible", 0) == 0);
}

TEST_CASE("leading minus is an expression, not a flag") {
  auto r = call({"admissible", "-y^2-x^7"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("AdmissibleWith", 0) == 0);
}

TEST_CASE("exit codes") {
  CHECK(call({"classify", "--f", "x^2*y^4+x^4*y^2-3*x^2*y^2+1"}).code == 2);
  CHECK(call({"length", "(x^2+y^2+1)*((y-x^2)^2+1)*((y-x^3)^2+1)"}).code == 2);
  auto bad = call({"admissible", "x^2+"});
  CHECK(bad.code == 1);
  CHECK(has(bad.err, "position 4"));
  auto flag = call({"admissible", "y", "--bogus"});
  CHECK(flag.code == 1);
  CHECK(has(flag.err, "--bogus"));
  CHECK(call({"frobnicate"}).code == 1);
  CHECK(call({"duval", "F", "4"}).code == 1);
  CHECK(call({}).code == 1);
}

TEST_CASE("json output round-trips byte for byte") {
  std::vector<std::vector<std::string>> cmds = {
      {"admissible", "x^2-y^2", "--json"},
      {"admissible", "-2*x^2-3*x^4*y^2", "--json"},
      {"decompose", "x^2*y^4+x^4*y^2-3*x^2*y^2+1", "--json"},
      {"decompose", "(y-x^2)^2+1", "--json"},
      {"length", "(y-x^2)^2+1", "--json"},
      {"family", "y", "--n", "3", "--json"},
      {"classify", "--f", "-x^3-y^5", "--json"},
      {"duval", "--json"},
      {"reduce", "y", "--n", "3", "--json"},
  };
  for (const auto& cmd : cmds) {
    CAPTURE(cmd.front());
    auto r = call(cmd);
    CHECK(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j.dump(2) + "\n" == r.out);
  }
}

TEST_CASE("verify accepts emitted documents and rejects tampering") {
  for (std::vector<std::string> cmd : {std::vector<std::string>{"decompose", "x^2*y^4+x^4*y^2-3*x^2*y^2+1"},
                                       {"decompose", "(y-x^2)^2+1"},
                                       {"admissible", "x^2-y^2"},
                                       {"admissible", "-2*x^2-3*x^4*y^2"},
                                       {"family", "y", "--n", "3"},
                                       {"length", "(y-x^2)^2+1"}}) {
    CAPTURE(cmd.front());
    cmd.push_back("--json");
    auto r = call(cmd);
    REQUIRE(r.code == 0);
    auto ok = call({"verify", r.out});
    CHECK(ok.code == 0);
    CHECK(has(ok.out, ": valid"));
    auto path = temp_file("pythlab_verify.json", r.out);
    CHECK(call({"verify", "@" + path}).code == 0);
  }
  Json fam = Json::parse(call({"family", "y", "--n", "3", "--json"}).out);
  fam["r"][1] = 4;
  auto bad = call({"verify", fam.dump()});
  CHECK(bad.code == 1);
  CHECK(has(bad.out, "INVALID"));

  Json cert = Json::parse(call({"decompose", "(y-x^2)^2+1", "--json"}).out);
  cert["target"] = Json::parse(call({"decompose", "(y-x^2)^2+2", "--json"}).out)["target"];
  CHECK(call({"verify", cert.dump()}).code == 1);
  CHECK(call({"verify", "{\"x\": 1}"}).code == 1);
}

TEST_CASE("file input") {
  auto path = temp_file("pythlab_poly.json", R"([{"exps": [3, 1], "num": "1", "den": "1"}])");
  auto r = call({"admissible", "@" + path});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("StrictlyAdmissible", 0) == 0);
  CHECK(call({"admissible", "@/nonexistent/pythlab.json"}).code == 1);
}

TEST_CASE("reduce descends to the terminal search") {
  auto r = call({"reduce", "y", "--n", "3"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "F3"));
  CHECK(has(r.out, "F1"));
  CHECK(has(r.out, "no representation"));
}

TEST_CASE("budgets are flags") {
  auto r = call({"admissible", "x^2*(1-x^2)", "--budget-height", "2"});
  CHECK(r.code == 2);
  auto j = call({"admissible", "x^2*(1-x^2)", "--budget-height", "2", "--json"});
  CHECK(Json::parse(j.out)["budget"]["height"] == 2);
}

TEST_CASE("output is deterministic") {
  auto a = call({"corpus", "--seed", "3"});
  auto b = call({"corpus", "--seed", "3"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(has(a.out, "corpus passed"));
}
