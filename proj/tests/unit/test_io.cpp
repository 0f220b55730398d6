#include <string>
#include <variant>

#include "catch_amalgamated.hpp"

#include "smallover/io.hpp"
#include "smallover/subsets.hpp"

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

using namespace smallover;
using namespace smallover::automata;
namespace oracle = smallover::test::oracle;

namespace {
  template <typename T>
  T reload(T const& x) {
    auto m = io::parse_machine(io::to_json(x).dump());
    REQUIRE(std::holds_alternative<T>(m));
    return std::get<T>(std::move(m));
  }
}  // namespace

TEST_CASE("nfa round trip", "[io]") {
  for (auto const& pat : test::p1_patterns()) {
    auto n = parse_pattern(pat, "abcd");
    auto r = reload(n);
    REQUIRE(r.number_of_states() == n.number_of_states());
    REQUIRE(r.number_of_transitions() == n.number_of_transitions());
    REQUIRE(nfa_equivalent(r, n));
  }
  auto dot = io::to_dot(parse_pattern("a*b", "ab"));
  REQUIRE(dot.rfind("digraph nfa {", 0) == 0);
  REQUIRE(dot.find("doublecircle") != std::string::npos);
}

TEST_CASE("pra round trip", "[io]") {
  auto m = build_wp_pra(test::p1())->materialize();
  auto r = reload(m);
  REQUIRE(r.edges() == m.edges());
  REQUIRE(r.window() == m.window());
  for (auto const& u : oracle::all_words("abcd", 3)) {
    for (auto const& v : oracle::all_words("abcd", 3)) {
      REQUIRE(pra_accepts(r, u, v) == pra_accepts(m, u, v));
    }
  }
  REQUIRE(io::to_dot(m).find("(ab$, $, cd$, $)") != std::string::npos);
}

TEST_CASE("transducer and two-tape round trip", "[io]") {
  Transducer t("ab$", "ab$");
  auto       s  = t.add_state("s");
  auto       m1 = t.add_state();
  auto       m2 = t.add_state();
  auto       g  = t.add_state();
  auto       f  = t.add_state("f");
  t.set_initial(s);
  t.set_terminal(f);
  t.add_edge(s, "a", "", m1);
  t.add_edge(m1, "", "b", m2);
  t.add_edge(m2, "", "b", s);
  t.add_edge(s, "$", "", g);
  t.add_edge(g, "", "$", f);
  auto rt = reload(t);
  REQUIRE(rt.number_of_edges() == 5);
  REQUIRE(rt.state_name(f) == "f");
  REQUIRE(transducer_accepts(rt, "aa$", "bbbb$"));
  REQUIRE_FALSE(transducer_accepts(rt, "a$", "b$"));

  auto d  = transducer_to_two_tape(t);
  auto rd = reload(d);
  REQUIRE(two_tape_accepts(rd, "aa", "bbbb"));
  REQUIRE_FALSE(two_tape_accepts(rd, "aa", "bbb"));
  REQUIRE(io::to_dot(rd).find("[1]") != std::string::npos);
}

TEST_CASE("compiled P1 two-tape machine round trip", "[io][property]") {
  auto b  = compile_word_problem(test::p1());
  auto d  = transducer_to_two_tape(b.transducer->materialize());
  auto rd = reload(d);
  REQUIRE(rd.number_of_states() == d.number_of_states());
  REQUIRE(two_tape_accepts(rd, "ab", "cd"));
  for (auto const& u : oracle::all_words("abcd", 3)) {
    for (auto const& v : oracle::all_words("abcd", 3)) {
      REQUIRE(two_tape_accepts(rd, u, v) == b.accepts(u, v));
    }
  }
}

TEST_CASE("manifest", "[io]") {
  auto j = io::manifest(compile_word_problem(test::p2()));
  REQUIRE(j["type"] == "wp-bundle");
  REQUIRE(j["k"] == 10);
  REQUIRE(j["b"] == 5);
  REQUIRE(j["pieces"].size() == 5);
  REQUIRE(j["factorizations"].size() == 2);
  REQUIRE(j["factorizations"][0]["X"] == "a");
  REQUIRE(parse_presentation(j["presentation"].dump()) == test::p2());
}

TEST_CASE("malformed machine files", "[io]") {
  REQUIRE_THROWS_AS(io::parse_machine("{"), ParseError);
  REQUIRE_THROWS_AS(io::parse_machine(R"({"type": "dfa"})"), ParseError);
  REQUIRE_THROWS_AS(io::parse_machine(R"({"type": "nfa"})"), ParseError);
  REQUIRE_THROWS_AS(
      io::parse_machine(
          R"({"type":"nfa","alphabet":"a","states":1,"initial":[0],)"
          R"("final":[],"transitions":[[0,"ab",0]]})"),
      ParseError);
  REQUIRE_THROWS_AS(
      io::parse_machine(
          R"({"type":"nfa","alphabet":"a","states":1,"initial":[0],)"
          R"("final":[],"transitions":[[0,"b",0]]})"),
      InvalidArgument);
  REQUIRE_THROWS_AS(io::load_machine("/nonexistent/machine.json"),
                    ParseError);
}
