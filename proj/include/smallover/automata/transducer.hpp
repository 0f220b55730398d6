// Rational transducers: finite graphs whose edges carry pairs of words.
// Algorithms are written against the TransducerGraph concept so that they
// run equally on explicit machines and on machines whose states are
// generated on demand.

#ifndef SMALLOVER_AUTOMATA_TRANSDUCER_HPP_
#define SMALLOVER_AUTOMATA_TRANSDUCER_HPP_

#include <concepts>       // for convertible_to, equality_comparable
#include <cstddef>        // for size_t
#include <cstdint>        // for uint32_t
#include <deque>          // for deque
#include <functional>     // for hash
#include <string>         // for string
#include <string_view>    // for string_view
#include <tuple>          // for tuple
#include <unordered_map>  // for unordered_map
#include <unordered_set>  // for unordered_set
#include <utility>        // for move, pair
#include <vector>         // for vector

#include "smallover/automata/nfa.hpp"
#include "smallover/errors.hpp"
#include "smallover/word.hpp"

namespace smallover::automata {

  template <typename S>
  struct TransducerEdge {
    word_type in;
    word_type out;
    S         target;
  };

  //! A transducer graph: states are values of T::state_type (hashable with
  //! T::state_hash); out_edges returns a range of TransducerEdge.
  template <typename T>
  concept TransducerGraph
      = std::equality_comparable<typename T::state_type>
        && requires(T const& t, typename T::state_type const& s) {
             { t.initial() } -> std::convertible_to<typename T::state_type>;
             { t.is_terminal(s) } -> std::convertible_to<bool>;
             { t.out_edges(s).begin()->target }
                 -> std::convertible_to<typename T::state_type>;
             { t.input_alphabet() } -> std::convertible_to<std::string_view>;
             { t.output_alphabet() } -> std::convertible_to<std::string_view>;
             { typename T::state_hash{}(s) } -> std::convertible_to<std::size_t>;
           };

  class Transducer {
   public:
    using state_type = std::uint32_t;
    using state_hash = std::hash<state_type>;
    using edge_type  = TransducerEdge<state_type>;

    Transducer() = default;

    Transducer(std::string input_alphabet, std::string output_alphabet)
        : _in(std::move(input_alphabet)), _out(std::move(output_alphabet)) {}

    std::string const& input_alphabet() const noexcept {
      return _in;
    }

    std::string const& output_alphabet() const noexcept {
      return _out;
    }

    state_type add_state(std::string name = {}) {
      _edges.emplace_back();
      _terminal.push_back(false);
      _names.push_back(std::move(name));
      return static_cast<state_type>(_edges.size() - 1);
    }

    std::size_t number_of_states() const noexcept {
      return _edges.size();
    }

    std::size_t number_of_edges() const noexcept {
      std::size_t n = 0;
      for (auto const& e : _edges) {
        n += e.size();
      }
      return n;
    }

    void set_initial(state_type s) {
      check_state(s);
      _initial = s;
    }

    void set_terminal(state_type s, bool value = true) {
      check_state(s);
      _terminal[s] = value;
    }

    void add_edge(state_type         from,
                  std::string_view   in,
                  std::string_view   out,
                  state_type         to) {
      check_state(from);
      check_state(to);
      check_word(in, _in);
      check_word(out, _out);
      _edges[from].push_back({word_type(in), word_type(out), to});
    }

    state_type initial() const noexcept {
      return _initial;
    }

    bool is_terminal(state_type s) const {
      return _terminal[s];
    }

    std::vector<edge_type> const& out_edges(state_type s) const {
      return _edges[s];
    }

    std::string const& state_name(state_type s) const {
      return _names[s];
    }

   private:
    void check_state(state_type s) const {
      if (s >= _edges.size()) {
        throw InvalidArgument("state " + std::to_string(s) + " out of range");
      }
    }

    static void check_word(std::string_view w, std::string_view alphabet) {
      for (char c : w) {
        if (alphabet.find(c) == std::string_view::npos) {
          throw InvalidArgument(std::string("label letter '") + c
                                + "' not in the transducer alphabet");
        }
      }
    }

    std::string                         _in, _out;
    std::vector<std::vector<edge_type>> _edges;
    std::vector<bool>                   _terminal;
    std::vector<std::string>            _names;
    state_type                          _initial = 0;
  };

  ////////////////////////////////////////////////////////////////////////
  // Acceptance
  ////////////////////////////////////////////////////////////////////////

  //! Whether some path from the initial state to a terminal state is
  //! labelled (in, out). Breadth-first over (state, position, position);
  //! \p cap bounds the number of visited triples.
  template <TransducerGraph T>
  bool transducer_accepts(T const&         t,
                          std::string_view in,
                          std::string_view out,
                          std::size_t      cap = 10'000'000) {
    using S   = typename T::state_type;
    using Key = std::tuple<S, std::size_t, std::size_t>;
    struct KeyHash {
      std::size_t operator()(Key const& k) const {
        std::size_t h = typename T::state_hash{}(std::get<0>(k));
        h ^= std::get<1>(k) * 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= std::get<2>(k) * 0xc2b2ae3d27d4eb4fULL + (h << 6) + (h >> 2);
        return h;
      }
    };
    std::unordered_set<Key, KeyHash> seen;
    std::deque<Key>                  queue;
    Key                              start{t.initial(), 0, 0};
    seen.insert(start);
    queue.push_back(std::move(start));
    while (!queue.empty()) {
      auto [s, i, j] = std::move(queue.front());
      queue.pop_front();
      if (i == in.size() && j == out.size() && t.is_terminal(s)) {
        return true;
      }
      for (auto const& e : t.out_edges(s)) {
        if (in.substr(i, e.in.size()) != e.in
            || out.substr(j, e.out.size()) != e.out) {
          continue;
        }
        Key next{e.target, i + e.in.size(), j + e.out.size()};
        if (seen.insert(next).second) {
          if (seen.size() > cap) {
            throw LimitExceeded("transducer search exceeded "
                                + std::to_string(cap) + " configurations");
          }
          queue.push_back(std::move(next));
        }
      }
    }
    return false;
  }

  ////////////////////////////////////////////////////////////////////////
  // Determinism conditions
  ////////////////////////////////////////////////////////////////////////

  //! The four mutually exclusive shapes of a state's out-edges that make a
  //! transducer simulable by a deterministic 2-tape automaton.
  enum class StateClass {
    read_tape1,  // (i)   every edge is (a, ε), at most one per letter
    read_tape2,  // (ii)  every edge is (ε, a), at most one per letter
    halting,     // (iii) no edges
    silent,      // (iv)  exactly one edge, labelled (ε, ε)
    violation
  };

  inline std::string_view to_string(StateClass c) noexcept {
    switch (c) {
      case StateClass::read_tape1:
        return "(i)";
      case StateClass::read_tape2:
        return "(ii)";
      case StateClass::halting:
        return "(iii)";
      case StateClass::silent:
        return "(iv)";
      case StateClass::violation:
        break;
    }
    return "violation";
  }

  template <typename Edges>
  StateClass classify_edges(Edges const& edges) {
    std::size_t n = 0, tape1 = 0, tape2 = 0, silent = 0;
    std::string seen1, seen2;
    for (auto const& e : edges) {
      ++n;
      if (e.in.size() == 1 && e.out.empty()) {
        if (seen1.find(e.in[0]) != std::string::npos) {
          return StateClass::violation;
        }
        seen1 += e.in[0];
        ++tape1;
      } else if (e.in.empty() && e.out.size() == 1) {
        if (seen2.find(e.out[0]) != std::string::npos) {
          return StateClass::violation;
        }
        seen2 += e.out[0];
        ++tape2;
      } else if (e.in.empty() && e.out.empty()) {
        ++silent;
      }
    }
    if (n == 0) {
      return StateClass::halting;
    }
    if (tape1 == n) {
      return StateClass::read_tape1;
    }
    if (tape2 == n) {
      return StateClass::read_tape2;
    }
    if (silent == 1 && n == 1) {
      return StateClass::silent;
    }
    return StateClass::violation;
  }

  inline std::vector<StateClass>
  classify_transducer_states(Transducer const& t) {
    std::vector<StateClass> out;
    out.reserve(t.number_of_states());
    for (std::size_t s = 0; s < t.number_of_states(); ++s) {
      out.push_back(
          classify_edges(t.out_edges(static_cast<Transducer::state_type>(s))));
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Reachable part of a transducer graph
  ////////////////////////////////////////////////////////////////////////

  //! Explicit copy of the states reachable from the initial state. Names
  //! come from \p name(state) when provided.
  template <TransducerGraph T, typename Namer>
  Transducer materialize(T const& t, std::size_t cap, Namer&& name) {
    using S = typename T::state_type;
    Transducer out{std::string(t.input_alphabet()),
                   std::string(t.output_alphabet())};
    std::unordered_map<S, Transducer::state_type, typename T::state_hash>
                  index;
    std::deque<S> queue;
    auto          intern = [&](S const& s) {
      auto it = index.find(s);
      if (it != index.end()) {
        return it->second;
      }
      if (index.size() >= cap) {
        throw LimitExceeded("transducer has more than " + std::to_string(cap)
                            + " reachable states");
      }
      auto id = out.add_state(name(s));
      out.set_terminal(id, t.is_terminal(s));
      index.emplace(s, id);
      queue.push_back(s);
      return id;
    };
    out.set_initial(intern(t.initial()));
    while (!queue.empty()) {
      S s = std::move(queue.front());
      queue.pop_front();
      auto from = index.at(s);
      for (auto const& e : t.out_edges(s)) {
        auto to = intern(e.target);
        out.add_edge(from, e.in, e.out, to);
      }
    }
    return out;
  }

  template <TransducerGraph T>
  Transducer materialize(T const& t, std::size_t cap) {
    return materialize(t, cap, [](auto const&) { return std::string(); });
  }

  ////////////////////////////////////////////////////////////////////////
  // Image of a regular language
  ////////////////////////////////////////////////////////////////////////

  //! Trim Nfa over the output alphabet accepting { v : (u, v) accepted by
  //! t for some u ∈ L(l) }. Product of t with a DFA for L(l); \p cap
  //! bounds the number of product states.
  template <TransducerGraph T>
  Nfa transducer_image(T const& t, Nfa const& l, std::size_t cap = 5'000'000) {
    using S = typename T::state_type;
    Nfa out{std::string(t.output_alphabet())};
    if (nfa_is_empty(l)) {
      out.add_initial(out.add_state());
      return out;
    }
    Dfa const   d = minimize(determinize(l));
    std::size_t k = d.alphabet.size();
    // States of d from which no final state is reachable.
    std::vector<bool> live(d.number_of_states(), false);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t s = 0; s < d.number_of_states(); ++s) {
        if (live[s]) {
          continue;
        }
        bool ok = d.final[s];
        for (std::size_t i = 0; i < k && !ok; ++i) {
          ok = live[d.next(static_cast<state_type>(s), i)];
        }
        if (ok) {
          live[s] = changed = true;
        }
      }
    }
    struct Key {
      S          t;
      state_type d;
      bool       operator==(Key const&) const = default;
    };
    struct KeyHash {
      std::size_t operator()(Key const& key) const {
        return typename T::state_hash{}(key.t) * 31 + key.d;
      }
    };
    std::unordered_map<Key, state_type, KeyHash> index;
    std::deque<Key>                              queue;
    auto intern = [&](Key const& key) {
      auto it = index.find(key);
      if (it != index.end()) {
        return it->second;
      }
      if (index.size() >= cap) {
        throw LimitExceeded("transducer image exceeded "
                            + std::to_string(cap) + " product states");
      }
      auto id = out.add_state();
      out.set_final(id, t.is_terminal(key.t) && d.final[key.d]);
      index.emplace(key, id);
      queue.push_back(key);
      return id;
    };
    out.add_initial(intern({t.initial(), d.initial}));
    while (!queue.empty()) {
      Key key = std::move(queue.front());
      queue.pop_front();
      state_type from = index.at(key);
      for (auto const& e : t.out_edges(key.t)) {
        state_type q  = key.d;
        bool       ok = true;
        for (char c : e.in) {
          auto i = d.alphabet.find(c);
          if (i == std::string::npos) {
            ok = false;
            break;
          }
          q = d.next(q, i);
        }
        if (!ok || !live[q]) {
          continue;
        }
        state_type to = intern({e.target, q});
        if (e.out.empty()) {
          out.add_transition(from, epsilon, to);
          continue;
        }
        state_type s = from;
        for (std::size_t i = 0; i + 1 < e.out.size(); ++i) {
          state_type mid = out.add_state();
          out.add_transition(s, e.out[i], mid);
          s = mid;
        }
        out.add_transition(s, e.out.back(), to);
      }
    }
    return trim(out);
  }

}  // namespace smallover::automata

#endif  // SMALLOVER_AUTOMATA_TRANSDUCER_HPP_
