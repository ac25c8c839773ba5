#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "process.hpp"
#include "typika/cli.hpp"

using namespace typika;
using namespace typika::testing;
using nlohmann::json;

namespace {

const std::string corpus = TYPIKA_CORPUS_DIR;
const std::string penguins = corpus + "/set3_penguins.kb";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("typika_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("check exit codes") {
  CHECK(run({"check", penguins}).code == 0);
  CHECK(run({"check", penguins}).out == "consistent\n");
  CHECK(run({"check", scratch("bad.kb", "A => bot\ntop => A\n")}).code == 1);
  const auto missing = run({"check", corpus + "/no_such_file.kb"});
  CHECK(missing.code == 2);
  CHECK(missing.err.rfind("error: ", 0) == 0);
  CHECK(run({"check", scratch("syntax.kb", "A => (B and\n")}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"check"}).code == 2);
}

TEST_CASE("check json") {
  const auto r = run({"check", "--json", penguins});
  const auto doc = json::parse(r.out);
  CHECK(doc["command"] == "check");
  CHECK(doc["consistent"] == true);
  CHECK_FALSE(doc.contains("timingMs"));
  CHECK(json::parse(run({"check", "--json", "--timing", penguins}).out).contains("timingMs"));
}

TEST_CASE("rank table") {
  const auto r = run({"rank", penguins});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "axiom                      E0  E1  E2\n"
        "Penguin => Bird            x   x   x\n"
        "T(Bird) => HasNiceFeather  x   -   -\n"
        "T(Bird) => Fly             x   -   -\n"
        "T(Penguin) => not Fly      x   x   -\n"
        "\n"
        "concept  rank\n"
        "Penguin  1\n"
        "Bird     0\n");
  const auto doc = json::parse(run({"rank", "--json", penguins}).out);
  CHECK(doc["levels"].size() == 3);
  CHECK(doc["levels"][2] == json::array({"Penguin => Bird"}));
  CHECK(doc["ranks"][0]["concept"] == "Penguin");
  CHECK(doc["ranks"][0]["rank"] == 1);
}

TEST_CASE("query exit codes per semantics") {
  for (const char* s : {"rc", "single-pref", "enriched"}) {
    CAPTURE(s);
    CHECK(run({"query", "--semantics", s, penguins, "T(Penguin) => not Fly"}).code == 0);
    CHECK(run({"query", "--semantics", s, penguins, "Penguin => Fly"}).code == 1);
    CHECK(run({"query", "--semantics", s, scratch("empty.kb", ""), "T(A) => A"}).code == 0);
  }
  CHECK(run({"query", "--semantics", "rc", penguins, "T(Penguin) => HasNiceFeather"}).code == 1);
  const auto e = run({"query", penguins, "T(Penguin) => HasNiceFeather"});
  CHECK(e.code == 0);
  CHECK(e.out.rfind("enriched: entailed", 0) == 0);
  CHECK(run({"query", "--semantics", "bogus", penguins, "A => A"}).code == 2);
  CHECK(run({"query", penguins, "T(T(A)) => B"}).code == 2);
}

TEST_CASE("rank bound overflow is an error") {
  const auto r = run({"query", "--rank-bound", "1", penguins, "T(Penguin) => Fly"});
  CHECK(r.code == 2);
  CHECK(r.err.find("rank bound 1") != std::string::npos);
}

TEST_CASE("rank bound from the environment") {
  ::setenv("TYPIKA_RANK_BOUND", "1", 1);
  CHECK(run({"query", penguins, "T(Penguin) => Fly"}).code == 2);
  CHECK(run({"query", "--rank-bound", "4", penguins, "T(Penguin) => Fly"}).code == 1);
  ::unsetenv("TYPIKA_RANK_BOUND");
  CHECK(run({"query", penguins, "T(Penguin) => Fly"}).code == 1);
}

TEST_CASE("query json with a witness") {
  const auto r = run({"query", "--json", "--emit-model", penguins, "T(Penguin) => HasNiceFeather"});
  REQUIRE(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["entailed"] == true);
  CHECK(doc["semantics"] == "enriched");
  const auto& w = doc["witness"];
  REQUIRE(w.is_object());
  CHECK(w["domain"].size() == 12);
  CHECK(w["domain"][0]["id"] == "t0");
  CHECK(w["globalRanks"].size() == 12);
  CHECK(w["aspectRanks"].size() == 5);
  CHECK(w["aspectRanks"].contains("HasNiceFeather"));
  CHECK(w.contains("roleEdges"));

  const auto cm = json::parse(run({"query", "--json", "--emit-model", penguins, "T(Penguin) => Fly"}).out);
  CHECK(cm["entailed"] == false);
  REQUIRE(cm["witness"].is_object());
  // Some lowest-ranked penguin of the countermodel does not fly.
  const auto& cw = cm["witness"];
  unsigned lowest = ~0U;
  for (const auto& e : cw["domain"]) {
    const auto& cs = e["concepts"];
    if (std::find(cs.begin(), cs.end(), "Penguin") != cs.end())
      lowest = std::min(lowest, cw["globalRanks"][e["id"].get<std::string>()].get<unsigned>());
  }
  bool grounded = false;
  for (const auto& e : cw["domain"]) {
    const auto& cs = e["concepts"];
    if (std::find(cs.begin(), cs.end(), "Penguin") != cs.end() &&
        cw["globalRanks"][e["id"].get<std::string>()] == lowest)
      grounded |= std::find(cs.begin(), cs.end(), "not Fly") != cs.end();
  }
  CHECK(grounded);

  const auto plain = json::parse(run({"query", "--json", penguins, "T(Penguin) => Fly"}).out);
  CHECK_FALSE(plain.contains("witness"));
}

TEST_CASE("compare") {
  const auto r = run({"compare", penguins, corpus + "/set3_penguins.queries"});
  CHECK(r.code == 0);
  CHECK(r.out.find("summary: 9 queries, rc 5, single-pref 5, enriched 7, strengthened 2, violations 0") !=
        std::string::npos);

  const auto doc = json::parse(run({"compare", "--json", penguins, corpus + "/set3_penguins.queries"}).out);
  CHECK(doc["rows"].size() == 9);
  CHECK(doc["summary"]["strengthened"] == 2);
  for (const auto& row : doc["rows"]) {
    CHECK(row["violation"] == false);
    CHECK(row["oracleMismatch"] == false);
  }
}

TEST_CASE("compare isolates bad rows and tolerates empty files") {
  const auto empty = run({"compare", penguins, scratch("empty.queries", "# nothing\n\n")});
  CHECK(empty.code == 0);
  CHECK(empty.out.find("summary: 0 queries") != std::string::npos);

  const auto mixed = scratch("mixed.queries", "T(A) => B\nnot valid ((\nT(Bird) => Fly\n");
  const auto doc = json::parse(run({"compare", "--json", penguins, mixed}).out);
  REQUIRE(doc["rows"].size() == 3);
  CHECK(doc["rows"][1].contains("error"));
  CHECK(doc["rows"][2]["rc"] == true);
  CHECK(doc["summary"]["errors"] == 1);
  CHECK(run({"compare", penguins, mixed}).code == 0);
}

TEST_CASE("output is deterministic") {
  const std::vector<std::string> args{"compare", "--json", penguins, corpus + "/set3_penguins.queries"};
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("binary end to end") {
  const std::string bin = TYPIKA_BINARY;
  const auto ok = run_process(bin, {"check", penguins});
  CHECK(ok.exit_code == 0);
  CHECK(ok.out == "consistent\n");
  const auto q = run_process(bin, {"query", "--json", penguins, "T(Penguin) => HasNiceFeather"});
  CHECK(q.exit_code == 0);
  CHECK(json::parse(q.out)["entailed"] == true);
  CHECK(run_process(bin, {"query", penguins, "T(Penguin) => Fly"}).exit_code == 1);
  CHECK(run_process(bin, {"--help"}).exit_code == 0);
}
