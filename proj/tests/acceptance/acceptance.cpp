// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all
// pass.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "smallover/automata/pra.hpp"
#include "smallover/automata/transducer.hpp"
#include "smallover/automata/two_tape.hpp"
#include "smallover/presentation.hpp"
#include "smallover/subsets.hpp"
#include "smallover/wordproblem.hpp"
#include "smallover/wp_compiler.hpp"

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

using namespace smallover;
using namespace smallover::automata;
namespace oracle = smallover::test::oracle;

namespace {

  using clock_type = std::chrono::steady_clock;

  double seconds_since(clock_type::time_point t) {
    return std::chrono::duration<double>(clock_type::now() - t).count();
  }

  // Collects failure messages; a criterion passes iff none are recorded.
  class Check {
   public:
    void require(bool ok, std::string const& what) {
      if (!ok && _failures.size() < 5) {
        _failures.push_back(what);
      }
      _failed = _failed || !ok;
    }

    bool ok() const {
      return !_failed;
    }

    std::vector<std::string> const& failures() const {
      return _failures;
    }

    std::string note;

   private:
    bool                     _failed = false;
    std::vector<std::string> _failures;
  };

  std::string pair_str(std::string const& u, std::string const& v) {
    return "(" + show(u) + ", " + show(v) + ")";
  }

  // Classes of every word of length <= n, by the oracle.
  std::map<std::string, std::set<std::string>>
  oracle_classes(Presentation const& p, std::size_t n) {
    std::map<std::string, std::set<std::string>> out;
    for (auto const& w : oracle::all_words(p.alphabet(), n)) {
      out.emplace(w, oracle::bfs_class(p, w));
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////

  void criterion1(Check& c) {
    auto start = clock_type::now();
    struct Case {
      Presentation          p;
      std::size_t           m;
      bool                  holds;
      std::set<std::string> pieces;
    };
    std::vector<Case> cases{
        {test::p1(), 4, true, {""}},
        {test::p2(), 4, true, {"", "a", "b", "c", "d"}},
        {test::p3(), 3, false, {"", "a", "b", "ab", "ba"}},
    };
    for (auto const& k : cases) {
      PieceTable            t(k.p);
      std::set<std::string> lib(t.pieces().begin(), t.pieces().end());
      c.require(lib == k.pieces, "library piece set");
      c.require(oracle::pieces(k.p) == k.pieces, "oracle piece set");
      c.require(check_small_overlap(t, k.m) == k.holds, "C(m) verdict");
    }
    auto w = small_overlap_witness(PieceTable(test::p3()), 3);
    c.require(w && w->relation_word == "abba"
                  && w->pieces == std::vector<word_type>{"ab", "ba"},
              "P3 witness abba = ab . ba");
    double s = seconds_since(start);
    c.require(s < 1.0, "runtime " + std::to_string(s) + " s");
    c.note = std::to_string(s) + " s";
  }

  void criterion2(Check& c) {
    auto        start = clock_type::now();
    std::size_t pairs = 0;
    for (auto const& p : {test::p1(), test::p2()}) {
      PieceTable t(p);
      auto       classes = oracle_classes(p, 4);
      for (auto const& [u, cls] : classes) {
        for (auto const& [v, unused] : classes) {
          ++pairs;
          bool yes = wp_prefix(t, u, v, "") == Verdict::yes;
          c.require(yes == (cls.count(v) > 0), "wp_prefix " + pair_str(u, v));
        }
      }
    }
    double s = seconds_since(start);
    c.require(s < 120.0, "runtime " + std::to_string(s) + " s");
    c.note = std::to_string(pairs) + " pairs, " + std::to_string(s) + " s";
  }

  void criterion3(Check& c) {
    std::size_t pairs = 0;
    for (auto const& p : {test::p1(), test::p2()}) {
      auto b     = compile_word_problem(p);
      auto words = oracle::all_words(p.alphabet(), 4);
      for (auto const& u : words) {
        for (auto const& v : words) {
          ++pairs;
          bool pra = pra_accepts(*b.pra, u, v);
          bool tr  = transducer_accepts(*b.transducer, u + "$", v + "$");
          bool tt  = b.accepts(u, v);
          c.require(pra == tr && tr == tt, "pipeline " + pair_str(u, v));
        }
      }
    }
    // the materialized P1 machines agree with the lazy ones
    auto b1 = compile_word_problem(test::p1());
    auto tx = b1.transducer->materialize();
    auto d  = transducer_to_two_tape(tx);
    for (auto const& u : oracle::all_words("abcd", 4)) {
      for (auto const& v : oracle::all_words("abcd", 4)) {
        c.require(two_tape_accepts(d, u, v) == b1.accepts(u, v),
                  "explicit P1 two-tape " + pair_str(u, v));
      }
    }
    c.note = std::to_string(pairs) + " pairs, explicit P1 two-tape machine "
             + std::to_string(d.number_of_states()) + " states";
  }

  // Classifies every buffered-transducer state its searches touch.
  struct ClassifyingTransducer {
    using state_type = WpTransducer::state_type;
    using state_hash = WpTransducer::state_hash;
    using edge_type  = WpTransducer::edge_type;

    WpTransducer const&                                      t;
    mutable std::unordered_set<state_type, state_hash>       seen;
    mutable std::map<StateClass, std::size_t>                counts;

    state_type initial() const {
      return t.initial();
    }

    bool is_terminal(state_type const& s) const {
      return t.is_terminal(s);
    }

    std::string const& input_alphabet() const {
      return t.input_alphabet();
    }

    std::string const& output_alphabet() const {
      return t.output_alphabet();
    }

    std::vector<edge_type> out_edges(state_type const& s) const {
      auto edges = t.out_edges(s);
      if (seen.insert(s).second) {
        ++counts[classify_edges(edges)];
      }
      return edges;
    }
  };

  void criterion4(Check& c) {
    std::ostringstream note;
    for (auto const& p : {test::p1(), test::p2()}) {
      auto b     = compile_word_problem(p);
      auto words = oracle::all_words(p.alphabet(), 4);
      std::vector<Configuration> probes;
      std::size_t                audited = 0, worst = 0;
      for (auto const& u : words) {
        for (auto const& v : words) {
          probes.push_back(make_configuration(u, v, b.pra->initial()));
          auto a = pra_expansion_audit(*b.pra, u, v);
          ++audited;
          worst = std::max(worst, a.max_growth);
          c.require(a.within(b.b), "expansion " + pair_str(u, v));
        }
      }
      c.require(pra_is_deterministic(*b.pra, probes),
                "reachable configurations deterministic");

      ClassifyingTransducer ct{*b.transducer, {}, {}};
      for (auto const& u : words) {
        for (auto const& v : words) {
          transducer_accepts(ct, u + "$", v + "$");
        }
      }
      c.require(ct.counts[StateClass::violation] == 0,
                "transducer state classes");
      note << p.relations().front().lhs << "=" << p.relations().front().rhs
           << ": " << audited << " runs, max growth " << worst << " <= b "
           << b.b << ", " << ct.seen.size() << " states classified; ";
    }
    auto tx = compile_word_problem(test::p1()).transducer->materialize();
    for (auto k : classify_transducer_states(tx)) {
      c.require(k != StateClass::violation, "explicit P1 state classes");
    }
    note << "all " << tx.number_of_states() << " P1 states classified";
    c.note = note.str();
  }

  void criterion5(Check& c) {
    std::size_t pairs = 0;
    for (auto const& p : {test::p1(), test::p2()}) {
      auto rb      = reverse_word_problem_machine(p);
      auto classes = oracle_classes(p, 4);
      for (auto const& [u, cls] : classes) {
        for (auto const& [v, unused] : classes) {
          ++pairs;
          c.require(rb.accepts(reversed(u), reversed(v)) == (cls.count(v) > 0),
                    "reverse " + pair_str(u, v));
        }
      }
    }
    c.note = std::to_string(pairs) + " pairs";
  }

  void criterion6(Check& c) {
    auto const                   p = test::p1();
    std::map<std::string, std::string> nf;
    auto                         words = oracle::all_words("abcd", 5);
    for (auto const& w : words) {
      nf[w] = normal_form(p, w);
    }
    std::set<std::set<std::string>> classes;
    std::size_t                     fixed = 0;
    for (auto const& w : words) {
      auto cls = oracle::bfs_class(p, w);
      classes.insert(cls);
      c.require(normal_form(p, nf[w]) == nf[w], "idempotent at " + w);
      c.require(cls.count(nf[w]) > 0, "normal form equivalent at " + w);
      // ASCII order is the declaration order a < b < c < d
      c.require(nf[w] == *cls.begin(), "class-minimal at " + w);
      std::size_t forms = 0;
      for (auto const& x : cls) {
        c.require(nf.at(x) == nf[w], "class-constant at " + w);
        forms += nf.at(x) == x;
      }
      c.require(forms == 1, "one normal form in the class of " + w);
      fixed += nf[w] == w;
    }
    c.require(fixed == classes.size(), "cross-section size");
    c.note = std::to_string(words.size()) + " words, "
             + std::to_string(classes.size()) + " classes";
  }

  void criterion7(Check& c) {
    auto b = std::make_shared<WpMachineBundle const>(
        compile_word_problem(test::p1()));
    auto const& pats = test::p1_patterns();
    std::vector<Nfa>            ls;
    std::vector<ClosedLanguage> cs;
    for (auto const& pat : pats) {
      ls.push_back(parse_pattern(pat, "abcd"));
      cs.push_back(closure(b, ls.back()));
    }
    for (std::size_t i = 0; i < ls.size(); ++i) {
      c.require(nfa_subset(ls[i], cs[i].nfa()), "extensive " + pats[i]);
      c.require(subset_equal(closure(b, cs[i].nfa()), cs[i]),
                "idempotent " + pats[i]);
      for (std::size_t j = 0; j < ls.size(); ++j) {
        auto u = nfa_union(ls[i], ls[j]);
        c.require(nfa_subset(cs[i].nfa(), closure(b, u).nfa()),
                  "monotone " + pats[i] + " in union with " + pats[j]);
        if (nfa_subset(ls[i], ls[j])) {
          c.require(nfa_subset(cs[i].nfa(), cs[j].nfa()),
                    "monotone " + pats[i] + " in " + pats[j]);
        }
      }
    }
    auto ab = parse_pattern("(ab)*", "abcd");
    c.require(subset_member(b, "cdcd", ab), "cdcd in (ab)*");
    c.require(!subset_member(b, "a", ab), "a not in (ab)*");

    std::size_t checks = 0;
    for (auto const& w : oracle::all_words("abcd", 4)) {
      auto cls = oracle::bfs_class(test::p1(), w);
      for (std::size_t i = 0; i < pats.size(); ++i) {
        std::regex re(pats[i]);
        bool       meets = std::any_of(cls.begin(), cls.end(), [&](auto& x) {
          return std::regex_match(x, re);
        });
        ++checks;
        c.require(cs[i].contains(w) == meets, "member " + w + " " + pats[i]);
      }
    }
    c.note = std::to_string(pats.size()) + " languages, "
             + std::to_string(checks) + " membership checks";
  }

  // Median over several trials of the time per call, each trial repeating
  // the call until it has run for at least 20 ms.
  double time_per_call(std::function<void()> const& f) {
    std::vector<double> trials;
    for (int t = 0; t < 7; ++t) {
      std::size_t reps  = 0;
      auto        start = clock_type::now();
      do {
        f();
        ++reps;
      } while (seconds_since(start) < 0.02);
      trials.push_back(seconds_since(start) / static_cast<double>(reps));
    }
    std::sort(trials.begin(), trials.end());
    return trials[trials.size() / 2];
  }

  void criterion8(Check& c) {
    PieceTable          t(test::p1());
    std::vector<double> times;
    std::ostringstream  note;
    for (std::size_t n = 1 << 10; n <= (1 << 16); n *= 2) {
      std::string u, v;
      for (std::size_t i = 0; i < n; ++i) {
        u += "ab";
        v += "cd";
      }
      Verdict r = Verdict::no;
      times.push_back(time_per_call([&] { r = wp_prefix(t, u, v, ""); }));
      c.require(r == Verdict::yes, "verdict at n = " + std::to_string(n));
    }
    note << "ratios";
    for (std::size_t i = 1; i < times.size(); ++i) {
      double ratio = times[i] / times[i - 1];
      c.require(ratio <= 3.0, "ratio " + std::to_string(ratio));
      char buf[16];
      std::snprintf(buf, sizeof(buf), " %.2f", ratio);
      note << buf;
    }
    char buf[48];
    std::snprintf(buf, sizeof(buf), "; %.3f ms at n = 65536",
                  times.back() * 1e3);
    note << buf;

    auto sg = std::make_shared<WpMachineBundle const>(
        compile_word_problem(test::p1(Mode::semigroup)));
    SemigroupRelationView view(sg);
    c.require(!view.accepts("", ""), "semigroup view rejects the empty pair");
    c.require(view.accepts("ab", "cd"), "semigroup view accepts (ab, cd)");
    c.note = note.str();
  }

}  // namespace

int main() {
  std::vector<std::pair<char const*, void (*)(Check&)>> criteria{
      {"C(m) validation and pieces", criterion1},
      {"wp_prefix agrees with the class oracle", criterion2},
      {"PRA, transducer and two-tape machine agree", criterion3},
      {"determinism, expansion bound and state classes", criterion4},
      {"reverse relation", criterion5},
      {"normal forms form a cross-section", criterion6},
      {"closure operator and rational subset membership", criterion7},
      {"linear time scaling and semigroup view", criterion8},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    auto  start = clock_type::now();
    try {
      criteria[i].second(c);
    } catch (std::exception const& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    double s = seconds_since(start);
    std::printf("criterion %zu %s: %s [%s] (%.1f s)\n", i + 1,
                c.ok() ? "PASS" : "FAIL", criteria[i].first, c.note.c_str(),
                s);
    for (auto const& f : c.failures()) {
      std::printf("    failed: %s\n", f.c_str());
    }
    std::fflush(stdout);
    failed += !c.ok();
  }
  return failed == 0 ? 0 : 1;
}
