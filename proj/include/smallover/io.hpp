// Machine files: a JSON format for every automaton type (states are
// numbered from 0, the empty word is ""), a manifest for compiled
// word-problem machines, and Graphviz DOT export.

#ifndef SMALLOVER_IO_HPP_
#define SMALLOVER_IO_HPP_

#include <fstream>      // for ifstream
#include <sstream>      // for ostringstream
#include <string>       // for string
#include <string_view>  // for string_view
#include <variant>      // for variant
#include <vector>       // for vector

#include "json.hpp"

#include "smallover/automata/nfa.hpp"
#include "smallover/automata/pra.hpp"
#include "smallover/automata/transducer.hpp"
#include "smallover/automata/two_tape.hpp"
#include "smallover/errors.hpp"
#include "smallover/presentation.hpp"
#include "smallover/wp_compiler.hpp"

namespace smallover::io {

  using json = nlohmann::json;

  ////////////////////////////////////////////////////////////////////////
  // To JSON
  ////////////////////////////////////////////////////////////////////////

  inline json to_json(automata::Nfa const& n) {
    json trans = json::array();
    json fin   = json::array();
    for (std::size_t s = 0; s < n.number_of_states(); ++s) {
      auto q = static_cast<automata::state_type>(s);
      if (n.is_final(q)) {
        fin.push_back(s);
      }
      for (auto const& a : n.arcs(q)) {
        trans.push_back(
            {s,
             a.letter == automata::epsilon ? std::string() : std::string(1, a.letter),
             a.target});
      }
    }
    return {{"type", "nfa"},
            {"alphabet", n.alphabet()},
            {"states", n.number_of_states()},
            {"initial", n.initial_states()},
            {"final", fin},
            {"transitions", trans}};
  }

  inline json to_json(automata::Transducer const& t) {
    json edges = json::array(), term = json::array(), names = json::array();
    for (std::size_t s = 0; s < t.number_of_states(); ++s) {
      auto q = static_cast<automata::Transducer::state_type>(s);
      names.push_back(t.state_name(q));
      if (t.is_terminal(q)) {
        term.push_back(s);
      }
      for (auto const& e : t.out_edges(q)) {
        edges.push_back({s, e.in, e.out, e.target});
      }
    }
    return {{"type", "transducer"},
            {"input_alphabet", t.input_alphabet()},
            {"output_alphabet", t.output_alphabet()},
            {"states", t.number_of_states()},
            {"names", names},
            {"initial", t.initial()},
            {"terminal", term},
            {"edges", edges}};
  }

  inline json to_json(automata::TwoTapeDfa const& d) {
    json delta = json::array(), term = json::array(), tapes = json::array(),
         names = json::array();
    for (std::size_t s = 0; s < d.number_of_states(); ++s) {
      auto q = static_cast<automata::TwoTapeDfa::state_type>(s);
      tapes.push_back(d.tape(q) == automata::Tape::first ? 1 : 2);
      names.push_back(d.state_name(q));
      if (d.is_terminal(q)) {
        term.push_back(s);
      }
      for (auto const& [c, to] : d.transitions(q)) {
        delta.push_back({s, std::string(1, c), to});
      }
    }
    return {{"type", "two-tape"},
            {"alphabet1", d.alphabet1()},
            {"alphabet2", d.alphabet2()},
            {"states", d.number_of_states()},
            {"names", names},
            {"tape", tapes},
            {"initial", d.initial()},
            {"terminal", term},
            {"delta", delta}};
  }

  inline json to_json(automata::PrefixRewritingAutomaton const& m) {
    json names = json::array(), term = json::array(), edges = json::array();
    for (std::size_t q = 0; q < m.number_of_states(); ++q) {
      names.push_back(m.state_name(static_cast<automata::pra_state>(q)));
      if (m.is_terminal(static_cast<automata::pra_state>(q))) {
        term.push_back(q);
      }
    }
    for (auto const& e : m.edges()) {
      edges.push_back({e.source, e.x1, e.x2, e.y1, e.y2, e.target});
    }
    return {{"type", "pra"},
            {"k", m.window()},
            {"alphabet1", m.alphabet1()},
            {"alphabet2", m.alphabet2()},
            {"states", names},
            {"initial", m.initial()},
            {"terminal", term},
            {"edges", edges}};
  }

  //! Parameters of the compiled word-problem machines.
  inline json manifest(WpMachineBundle const& b) {
    auto const& t      = b.pra->piece_table();
    json        pieces = json::array(), facs = json::array();
    for (auto const& p : t.pieces()) {
      pieces.push_back(p);
    }
    for (auto const& f : t.factorizations()) {
      facs.push_back({{"relation_word", f.relation_word},
                      {"X", f.prefix},
                      {"Y", f.middle},
                      {"Z", f.suffix},
                      {"complement", f.complement}});
    }
    return {{"type", "wp-bundle"},
            {"presentation", smallover::to_json(b.presentation)},
            {"k", b.k},
            {"b", b.b},
            {"pieces", pieces},
            {"factorizations", facs}};
  }

  ////////////////////////////////////////////////////////////////////////
  // From JSON
  ////////////////////////////////////////////////////////////////////////

  using Machine = std::variant<automata::Nfa,
                               automata::Transducer,
                               automata::TwoTapeDfa,
                               automata::PrefixRewritingAutomaton>;

  namespace detail {
    inline char letter(json const& j) {
      auto s = j.get<std::string>();
      if (s.size() != 1) {
        throw ParseError("expected a single letter, got \"" + s + "\"");
      }
      return s[0];
    }

    inline automata::Nfa nfa_from(json const& j) {
      automata::Nfa n(j.at("alphabet").get<std::string>());
      for (std::size_t i = 0, k = j.at("states").get<std::size_t>(); i < k;
           ++i) {
        n.add_state();
      }
      for (auto const& s : j.at("initial")) {
        n.add_initial(s.get<automata::state_type>());
      }
      for (auto const& s : j.at("final")) {
        n.set_final(s.get<automata::state_type>());
      }
      for (auto const& t : j.at("transitions")) {
        auto l = t.at(1).get<std::string>();
        if (l.size() > 1) {
          throw ParseError("transition label \"" + l + "\" is not a letter");
        }
        n.add_transition(t.at(0).get<automata::state_type>(),
                         l.empty() ? automata::epsilon : l[0],
                         t.at(2).get<automata::state_type>());
      }
      return n;
    }

    inline automata::Transducer transducer_from(json const& j) {
      automata::Transducer t(j.at("input_alphabet").get<std::string>(),
                             j.at("output_alphabet").get<std::string>());
      auto n     = j.at("states").get<std::size_t>();
      auto names = j.value("names", json::array());
      for (std::size_t i = 0; i < n; ++i) {
        t.add_state(i < names.size() ? names[i].get<std::string>() : "");
      }
      t.set_initial(j.at("initial").get<automata::Transducer::state_type>());
      for (auto const& s : j.at("terminal")) {
        t.set_terminal(s.get<automata::Transducer::state_type>());
      }
      for (auto const& e : j.at("edges")) {
        t.add_edge(e.at(0).get<automata::Transducer::state_type>(),
                   e.at(1).get<std::string>(),
                   e.at(2).get<std::string>(),
                   e.at(3).get<automata::Transducer::state_type>());
      }
      return t;
    }

    inline automata::TwoTapeDfa two_tape_from(json const& j) {
      automata::TwoTapeDfa d(j.at("alphabet1").get<std::string>(),
                             j.at("alphabet2").get<std::string>());
      auto const& tapes = j.at("tape");
      auto        names = j.value("names", json::array());
      if (tapes.size() != j.at("states").get<std::size_t>()) {
        throw ParseError("two-tape machine: one tape entry per state");
      }
      for (std::size_t i = 0; i < tapes.size(); ++i) {
        int tape = tapes[i].get<int>();
        if (tape != 1 && tape != 2) {
          throw ParseError("two-tape machine: tape must be 1 or 2");
        }
        d.add_state(tape == 1 ? automata::Tape::first : automata::Tape::second,
                    i < names.size() ? names[i].get<std::string>() : "");
      }
      d.set_initial(j.at("initial").get<automata::TwoTapeDfa::state_type>());
      for (auto const& s : j.at("terminal")) {
        d.set_terminal(s.get<automata::TwoTapeDfa::state_type>());
      }
      for (auto const& t : j.at("delta")) {
        d.set_transition(t.at(0).get<automata::TwoTapeDfa::state_type>(),
                         letter(t.at(1)),
                         t.at(2).get<automata::TwoTapeDfa::state_type>());
      }
      return d;
    }

    inline automata::PrefixRewritingAutomaton pra_from(json const& j) {
      automata::PrefixRewritingAutomaton m(
          j.at("k").get<std::size_t>(),
          j.at("alphabet1").get<std::string>(),
          j.at("alphabet2").get<std::string>());
      for (auto const& s : j.at("states")) {
        m.add_state(s.get<std::string>());
      }
      m.set_initial(j.at("initial").get<automata::pra_state>());
      for (auto const& s : j.at("terminal")) {
        m.set_terminal(s.get<automata::pra_state>());
      }
      for (auto const& e : j.at("edges")) {
        m.add_edge({e.at(0).get<automata::pra_state>(),
                    e.at(1).get<std::string>(),
                    e.at(2).get<std::string>(),
                    e.at(3).get<std::string>(),
                    e.at(4).get<std::string>(),
                    e.at(5).get<automata::pra_state>()});
      }
      return m;
    }
  }  // namespace detail

  //! Reads any machine file. Throws ParseError on malformed input and
  //! InvalidArgument on inconsistent content.
  inline Machine machine_from_json(json const& j) {
    try {
      auto type = j.at("type").get<std::string>();
      if (type == "nfa") {
        return detail::nfa_from(j);
      }
      if (type == "transducer") {
        return detail::transducer_from(j);
      }
      if (type == "two-tape") {
        return detail::two_tape_from(j);
      }
      if (type == "pra") {
        return detail::pra_from(j);
      }
      throw ParseError("unknown machine type \"" + type + "\"");
    } catch (json::exception const& e) {
      throw ParseError(std::string("machine file: ") + e.what());
    }
  }

  inline Machine parse_machine(std::string_view text) {
    json j;
    try {
      j = json::parse(text);
    } catch (json::exception const& e) {
      throw ParseError(std::string("machine file: ") + e.what());
    }
    return machine_from_json(j);
  }

  inline Machine load_machine(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw ParseError("cannot read " + path);
    }
    std::ostringstream s;
    s << in.rdbuf();
    return parse_machine(s.str());
  }

  inline automata::Nfa load_nfa(std::string const& path) {
    auto m = load_machine(path);
    if (auto* n = std::get_if<automata::Nfa>(&m)) {
      return std::move(*n);
    }
    throw ParseError(path + " does not hold an nfa");
  }

  ////////////////////////////////////////////////////////////////////////
  // DOT
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline std::string quote(std::string_view s) {
      std::string out = "\"";
      for (char c : s) {
        if (c == '"' || c == '\\') {
          out += '\\';
        }
        out += c;
      }
      return out + "\"";
    }

    inline std::string label_of(std::string const& name, std::size_t s) {
      return name.empty() ? std::to_string(s) : name;
    }

    template <typename Final>
    void dot_states(std::ostringstream& o,
                    std::size_t         n,
                    std::vector<std::string> const& names,
                    Final&&             final) {
      o << "  node [shape=circle];\n";
      for (std::size_t s = 0; s < n; ++s) {
        o << "  " << s << " [label=" << quote(label_of(names[s], s))
          << (final(s) ? ", shape=doublecircle" : "") << "];\n";
      }
    }
  }  // namespace detail

  inline std::string to_dot(automata::Nfa const& n) {
    std::ostringstream o;
    o << "digraph nfa {\n  rankdir=LR;\n";
    detail::dot_states(
        o, n.number_of_states(),
        std::vector<std::string>(n.number_of_states()),
        [&](std::size_t s) {
          return n.is_final(static_cast<automata::state_type>(s));
        });
    for (auto s : n.initial_states()) {
      o << "  init" << s << " [shape=point];\n  init" << s << " -> " << s
        << ";\n";
    }
    for (std::size_t s = 0; s < n.number_of_states(); ++s) {
      for (auto const& a : n.arcs(static_cast<automata::state_type>(s))) {
        o << "  " << s << " -> " << a.target << " [label="
          << detail::quote(a.letter == automata::epsilon
                               ? std::string("ε")
                               : std::string(1, a.letter))
          << "];\n";
      }
    }
    o << "}\n";
    return o.str();
  }

  inline std::string to_dot(automata::Transducer const& t) {
    std::ostringstream       o;
    std::vector<std::string> names;
    for (std::size_t s = 0; s < t.number_of_states(); ++s) {
      names.push_back(
          t.state_name(static_cast<automata::Transducer::state_type>(s)));
    }
    o << "digraph transducer {\n  rankdir=LR;\n";
    detail::dot_states(o, names.size(), names, [&](std::size_t s) {
      return t.is_terminal(static_cast<automata::Transducer::state_type>(s));
    });
    o << "  init [shape=point];\n  init -> " << t.initial() << ";\n";
    for (std::size_t s = 0; s < names.size(); ++s) {
      for (auto const& e :
           t.out_edges(static_cast<automata::Transducer::state_type>(s))) {
        o << "  " << s << " -> " << e.target << " [label="
          << detail::quote("(" + show(e.in) + ", " + show(e.out) + ")")
          << "];\n";
      }
    }
    o << "}\n";
    return o.str();
  }

  inline std::string to_dot(automata::TwoTapeDfa const& d) {
    std::ostringstream       o;
    std::vector<std::string> names;
    for (std::size_t s = 0; s < d.number_of_states(); ++s) {
      auto q = static_cast<automata::TwoTapeDfa::state_type>(s);
      names.push_back(detail::label_of(d.state_name(q), s)
                      + (d.tape(q) == automata::Tape::first ? " [1]" : " [2]"));
    }
    o << "digraph two_tape {\n  rankdir=LR;\n";
    detail::dot_states(o, names.size(), names, [&](std::size_t s) {
      return d.is_terminal(static_cast<automata::TwoTapeDfa::state_type>(s));
    });
    o << "  init [shape=point];\n  init -> " << d.initial() << ";\n";
    for (std::size_t s = 0; s < names.size(); ++s) {
      for (auto const& [c, to] :
           d.transitions(static_cast<automata::TwoTapeDfa::state_type>(s))) {
        o << "  " << s << " -> " << to << " [label="
          << detail::quote(std::string(1, c)) << "];\n";
      }
    }
    o << "}\n";
    return o.str();
  }

  inline std::string to_dot(automata::PrefixRewritingAutomaton const& m) {
    std::ostringstream       o;
    std::vector<std::string> names;
    for (std::size_t q = 0; q < m.number_of_states(); ++q) {
      names.push_back(m.state_name(static_cast<automata::pra_state>(q)));
    }
    o << "digraph pra {\n  rankdir=LR;\n";
    detail::dot_states(o, names.size(), names, [&](std::size_t q) {
      return m.is_terminal(static_cast<automata::pra_state>(q));
    });
    o << "  init [shape=point];\n  init -> " << m.initial() << ";\n";
    for (auto const& e : m.edges()) {
      o << "  " << e.source << " -> " << e.target << " [label="
        << detail::quote("(" + show(e.x1) + ", " + show(e.x2) + ", "
                         + show(e.y1) + ", " + show(e.y2) + ")")
        << "];\n";
    }
    o << "}\n";
    return o.str();
  }

}  // namespace smallover::io

#endif  // SMALLOVER_IO_HPP_
