#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"

#include "smallover/wp_compiler.hpp"

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

using namespace smallover;
using namespace smallover::automata;
namespace oracle = smallover::test::oracle;

namespace {
  std::set<std::string> state_names(WpAutomaton const& m) {
    std::set<std::string> out;
    for (std::size_t q = 0; q < m.number_of_states(); ++q) {
      out.insert(m.state_name(static_cast<pra_state>(q)));
    }
    return out;
  }
}  // namespace

TEST_CASE("window_set", "[wp_compiler]") {
  REQUIRE(window_set(test::p1(), 2).size() == 21);
  REQUIRE(window_set(test::p1(), 0) == std::vector<word_type>{"$"});
  Presentation one("a", {});
  REQUIRE(window_set(one, 1) == std::vector<word_type>{"$", "a"});
  // no window is a prefix of another
  Presentation three("abc", {});
  auto         w = window_set(three, 3);
  REQUIRE(w.size() == 27 + 9 + 3 + 1);
  for (auto const& x : w) {
    for (auto const& y : w) {
      if (x != y) {
        REQUIRE(y.compare(0, x.size(), x) != 0);
      }
    }
  }
  REQUIRE_THROWS_AS(window_set(test::p2(), 10, 1000), LimitExceeded);
}

TEST_CASE("build_wp_pra", "[wp_compiler]") {
  auto m1 = build_wp_pra(test::p1());
  REQUIRE(state_names(*m1) == std::set<std::string>{"ε", "+"});
  REQUIRE(m1->window() == 4);
  auto m2 = build_wp_pra(test::p2());
  REQUIRE(state_names(*m2)
          == std::set<std::string>{"ε", "a", "b", "c", "d", "+"});
  REQUIRE(m2->window() == 10);
  REQUIRE_THROWS_AS(build_wp_pra(test::p3()), PreconditionFailed);

  // (ab$, cd$, ε): the relation is applied across the two tapes
  auto edges = pra_applicable_edges(*m1, make_configuration("ab", "cd", 0));
  REQUIRE(edges.size() == 1);
  auto e = m1->edge(0, "ab$", "cd$");
  REQUIRE(e);
  REQUIRE(e->first == WpEdgeKind::C6);
  REQUIRE(e->second == PraEdge{0, "ab$", "$", "cd$", "$", 0});
  // A
  REQUIRE(m1->edge(0, "$", "$")->first == WpEdgeKind::A);
  REQUIRE_FALSE(m1->edge(m1->terminal_state(), "$", "$"));
  // B drops one letter from both tapes
  auto b = m2->edge(m2->state_of("a"), "a$", "a$");
  REQUIRE(b->first == WpEdgeKind::B);
  REQUIRE(b->second.target == m2->state_of(""));
  REQUIRE_FALSE(m2->edge(m2->state_of("b"), "a$", "a$"));
  REQUIRE_FALSE(m1->edge(0, "a$", "b$"));
  // C4: p = d is a prefix of neither X = a nor X̄ = a, so no edge; p = a
  // is a prefix of X and gives C3
  REQUIRE_FALSE(m2->edge(m2->state_of("d"), "abcd$", "abcd$"));
  REQUIRE(m2->edge(m2->state_of("a"), "abcd$", "abcd$")->first
          == WpEdgeKind::C3);
}

TEST_CASE("word-problem automaton accepts the word problem",
          "[wp_compiler][property]") {
  auto m1 = build_wp_pra(test::p1());
  REQUIRE(pra_accepts(*m1, "abab", "cdcd"));
  REQUIRE_FALSE(pra_accepts(*m1, "a", "b"));
  REQUIRE(pra_accepts(*m1, "", ""));
  auto m2 = build_wp_pra(test::p2());
  REQUIRE(pra_accepts(*m2, "abcda", "adcba"));

  // agreement with WP-Prefix on every pair of short words
  for (auto const& p :
       {test::p1(), test::p2(), test::p4(), test::p5(), test::p6()}) {
    auto       m = build_wp_pra(p);
    PieceTable t(p);
    auto       words = oracle::all_words(p.alphabet(), 3);
    for (auto const& u : words) {
      for (auto const& v : words) {
        REQUIRE(pra_accepts(*m, u, v)
                == (wp_prefix(t, u, v, "") == Verdict::yes));
      }
    }
  }
}

TEST_CASE("word-problem automaton on long words", "[wp_compiler][property]") {
  // Long inputs exercise the window: clean-prefix and activity tests see
  // only k letters.
  std::mt19937 rng(3);
  for (auto const& p : {test::p2(), test::p4(), test::p5(), test::p6()}) {
    auto        m  = build_wp_pra(p);
    auto const& rw = p.relation_words();
    for (int i = 0; i < 200; ++i) {
      std::string u;
      while (u.size() < 20) {
        if (rng() % 2) {
          u += rw[rng() % rw.size()];
        } else {
          u += p.alphabet()[rng() % p.alphabet().size()];
        }
      }
      auto cls = oracle::bfs_class(p, u);
      auto v   = *std::next(cls.begin(), rng() % cls.size());
      REQUIRE(pra_accepts(*m, u, v));
      REQUIRE(pra_accepts(*m, v, u));
      auto w = v;
      w[rng() % w.size()] = p.alphabet()[rng() % p.alphabet().size()];
      REQUIRE(pra_accepts(*m, u, w) == (cls.count(w) > 0));
      REQUIRE(pra_expansion_audit(*m, u, v).within(p.max_relation_length()));
    }
  }
}

TEST_CASE("edge guards are mutually exclusive", "[wp_compiler][property]") {
  // edge() throws if two C guards hold; sweep all windows for P1 and a
  // random sample for the others
  REQUIRE_NOTHROW(build_wp_pra(test::p1())->materialize());
  std::mt19937 rng(5);
  for (auto const& p : {test::p2(), test::p4(), test::p5(), test::p6()}) {
    auto        m  = build_wp_pra(p);
    auto const& rw = p.relation_words();
    auto        random_window = [&] {
      std::string w;
      while (w.size() < m->window()) {
        if (rng() % 3 == 0) {
          w += rw[rng() % rw.size()];
        } else {
          w += p.alphabet()[rng() % p.alphabet().size()];
        }
      }
      w.resize(rng() % 4 == 0 ? rng() % m->window() : m->window());
      if (w.size() < m->window()) {
        w += '$';
      }
      return w;
    };
    for (int i = 0; i < 20000; ++i) {
      auto u = random_window();
      auto v = rng() % 2 ? u : random_window();
      for (std::size_t q = 0; q + 1 < m->number_of_states(); ++q) {
        REQUIRE_NOTHROW(m->edge(static_cast<pra_state>(q), u, v));
      }
    }
  }
}

TEST_CASE("materialized automaton", "[wp_compiler]") {
  auto m = build_wp_pra(test::p1());
  auto x = m->materialize();
  REQUIRE(x.number_of_states() == 2);
  REQUIRE(x.window() == 4);
  REQUIRE(x.has_prefix_incomparable_guards());
  for (auto const& u : oracle::all_words("abcd", 3)) {
    for (auto const& v : oracle::all_words("abcd", 3)) {
      REQUIRE(pra_accepts(x, u, v) == pra_accepts(*m, u, v));
    }
  }
  REQUIRE_THROWS_AS(build_wp_pra(test::p2())->materialize(), LimitExceeded);
}

TEST_CASE("compile_word_problem", "[wp_compiler]") {
  auto b1 = compile_word_problem(test::p1());
  REQUIRE(b1.k == 4);
  REQUIRE(b1.b == 2);
  REQUIRE(b1.accepts("cdcd", "abab"));
  REQUIRE(b1.accepts("ab", "cd"));
  REQUIRE_FALSE(b1.accepts("ab", "dc"));
  REQUIRE(transducer_accepts(*b1.transducer, "ab$", "ab$"));
  REQUIRE(transducer_accepts(*b1.transducer, "abab$", "cdcd$"));
  auto b2 = compile_word_problem(test::p2());
  REQUIRE(b2.k == 10);
  REQUIRE(b2.b == 5);
  REQUIRE(transducer_accepts(*b2.transducer, "abcda$", "adcba$"));
  REQUIRE_FALSE(b2.accepts("abcda", "abcdb"));
  REQUIRE_THROWS_AS(compile_word_problem(test::p3()), PreconditionFailed);
  REQUIRE_THROWS_AS(b1.accepts("ax", "a"), InvalidArgument);
}

TEST_CASE("P1 transducer, explicit", "[wp_compiler]") {
  auto b  = compile_word_problem(test::p1());
  auto tx = b.transducer->materialize();
  // reachable part of C1 x C2 x Q
  REQUIRE(tx.number_of_states() == 152152);
  REQUIRE(tx.number_of_edges() == 206445);
  for (auto c : classify_transducer_states(tx)) {
    REQUIRE(c != StateClass::violation);
  }
  auto d = transducer_to_two_tape(tx);
  for (auto const& u : oracle::all_words("abcd", 3)) {
    for (auto const& v : oracle::all_words("abcd", 3)) {
      bool expect = b.accepts(u, v);
      REQUIRE(two_tape_accepts(d, u, v) == expect);
      REQUIRE(transducer_accepts(tx, u + "$", v + "$") == expect);
    }
  }
}

TEST_CASE("pipeline agreement on short words", "[wp_compiler][property]") {
  for (auto const& p : {test::p1(), test::p2(), test::p5()}) {
    auto       b = compile_word_problem(p);
    PieceTable t(p);
    auto       words = oracle::all_words(p.alphabet(), 3);
    for (auto const& u : words) {
      for (auto const& v : words) {
        bool expect = wp_prefix(t, u, v, "") == Verdict::yes;
        REQUIRE(pra_accepts(*b.pra, u, v) == expect);
        REQUIRE(transducer_accepts(*b.transducer, u + "$", v + "$") == expect);
        REQUIRE(b.accepts(u, v) == expect);
      }
    }
  }
}

TEST_CASE("reverse presentation and machines", "[wp_compiler]") {
  auto r2 = reverse_presentation(test::p2());
  REQUIRE(r2.relations().front().lhs == "adcba");
  REQUIRE(r2.relations().front().rhs == "abcda");
  auto r1 = reverse_presentation(test::p1());
  REQUIRE(r1.relations().front().lhs == "ba");
  REQUIRE(r1.relations().front().rhs == "dc");
  REQUIRE(reverse_presentation(r1) == test::p1());
  REQUIRE(reverse_presentation(test::p5()) == reverse_presentation(test::p5()));
  REQUIRE_FALSE(check_small_overlap(reverse_presentation(test::p3()), 3));

  auto rb = reverse_word_problem_machine(test::p1());
  REQUIRE(rb.accepts("baba", "dcdc"));
  REQUIRE(rb.accepts("", ""));
  REQUIRE_FALSE(rb.accepts("abab", "cdcd"));
  auto rb2 = reverse_word_problem_machine(test::p2());
  REQUIRE(rb2.accepts("adcba", "abcda"));

  WordProblemSolver s(test::p5());
  auto              rb5 = reverse_word_problem_machine(test::p5());
  for (auto const& u : oracle::all_words("abc", 3)) {
    for (auto const& v : oracle::all_words("abc", 3)) {
      REQUIRE(rb5.accepts(reversed(u), reversed(v)) == s.equiv(u, v));
    }
  }
}

TEST_CASE("semigroup view", "[wp_compiler]") {
  auto b = std::make_shared<WpMachineBundle const>(
      compile_word_problem(test::p1(Mode::semigroup)));
  SemigroupRelationView view(b);
  REQUIRE_FALSE(view.accepts("", ""));
  REQUIRE(b->accepts("", ""));
  REQUIRE(view.accepts("ab", "cd"));
  REQUIRE_FALSE(view.accepts("ab", "dc"));
  REQUIRE_THROWS_AS(view.accepts("a", ""), InvalidArgument);
  auto monoid = std::make_shared<WpMachineBundle const>(
      compile_word_problem(test::p1()));
  REQUIRE_THROWS_AS(SemigroupRelationView(monoid), InvalidArgument);
}
