// Deterministic 2-tape automata and their construction from transducers
// whose states all have one of the four determinism shapes.

#ifndef SMALLOVER_AUTOMATA_TWO_TAPE_HPP_
#define SMALLOVER_AUTOMATA_TWO_TAPE_HPP_

#include <concepts>       // for convertible_to
#include <cstddef>        // for size_t
#include <cstdint>        // for uint8_t, uint32_t
#include <map>            // for map
#include <optional>       // for optional
#include <string>         // for string
#include <string_view>    // for string_view
#include <unordered_set>  // for unordered_set
#include <utility>        // for move
#include <vector>         // for vector

#include "smallover/automata/transducer.hpp"
#include "smallover/errors.hpp"
#include "smallover/word.hpp"

namespace smallover::automata {

  //! Which head a state reads with. States that can never read are placed
  //! with tape 1 and have no transitions.
  enum class Tape : std::uint8_t { first = 1, second = 2 };

  template <typename M>
  concept TwoTapeMachine
      = requires(M const& m, typename M::state_type const& s, char c) {
          { m.initial() } -> std::convertible_to<typename M::state_type>;
          { m.is_terminal(s) } -> std::convertible_to<bool>;
          { m.tape(s) } -> std::convertible_to<Tape>;
          { m.next(s, c) }
              -> std::convertible_to<std::optional<typename M::state_type>>;
        };

  //! Runs \p m on u$ and v$; accepts iff both tapes are consumed and the
  //! final state is terminal.
  template <TwoTapeMachine M>
  bool two_tape_accepts(M const& m, std::string_view u, std::string_view v) {
    auto        s = m.initial();
    std::size_t i = 0, j = 0;
    // Positions u.size() and v.size() hold the end-markers.
    while (true) {
      std::optional<typename M::state_type> n;
      if (m.tape(s) == Tape::first) {
        if (i > u.size()) {
          break;
        }
        n = m.next(s, i < u.size() ? u[i] : end_marker);
        if (!n) {
          break;
        }
        ++i;
      } else {
        if (j > v.size()) {
          break;
        }
        n = m.next(s, j < v.size() ? v[j] : end_marker);
        if (!n) {
          break;
        }
        ++j;
      }
      s = std::move(*n);
    }
    return i == u.size() + 1 && j == v.size() + 1 && m.is_terminal(s);
  }

  class TwoTapeDfa {
   public:
    using state_type = std::uint32_t;

    TwoTapeDfa() = default;

    TwoTapeDfa(std::string alphabet1, std::string alphabet2)
        : _alphabet1(std::move(alphabet1)), _alphabet2(std::move(alphabet2)) {}

    std::string const& alphabet1() const noexcept {
      return _alphabet1;
    }

    std::string const& alphabet2() const noexcept {
      return _alphabet2;
    }

    state_type add_state(Tape tape, std::string name = {}) {
      _tape.push_back(tape);
      _delta.emplace_back();
      _terminal.push_back(false);
      _names.push_back(std::move(name));
      return static_cast<state_type>(_tape.size() - 1);
    }

    std::size_t number_of_states() const noexcept {
      return _tape.size();
    }

    void set_initial(state_type s) {
      check_state(s);
      _initial = s;
    }

    void set_terminal(state_type s, bool value = true) {
      check_state(s);
      _terminal[s] = value;
    }

    //! δ_i(from, letter) = to where i is the tape of \p from.
    void set_transition(state_type from, char letter, state_type to) {
      check_state(from);
      check_state(to);
      auto const& alpha = _tape[from] == Tape::first ? _alphabet1 : _alphabet2;
      if (letter != end_marker && alpha.find(letter) == std::string::npos) {
        throw InvalidArgument(std::string("letter '") + letter
                              + "' not in the alphabet of the tape");
      }
      auto [it, fresh] = _delta[from].emplace(letter, to);
      if (!fresh && it->second != to) {
        throw NondeterminismError("two transitions from state "
                                  + std::to_string(from) + " on '" + letter
                                  + "'");
      }
    }

    state_type initial() const noexcept {
      return _initial;
    }

    bool is_terminal(state_type s) const {
      return _terminal[s];
    }

    Tape tape(state_type s) const {
      return _tape[s];
    }

    std::optional<state_type> next(state_type s, char c) const {
      auto it = _delta[s].find(c);
      if (it == _delta[s].end()) {
        return std::nullopt;
      }
      return it->second;
    }

    std::map<char, state_type> const& transitions(state_type s) const {
      return _delta[s];
    }

    std::string const& state_name(state_type s) const {
      return _names[s];
    }

   private:
    void check_state(state_type s) const {
      if (s >= _tape.size()) {
        throw InvalidArgument("state " + std::to_string(s) + " out of range");
      }
    }

    std::string                             _alphabet1, _alphabet2;
    std::vector<Tape>                       _tape;
    std::vector<std::map<char, state_type>> _delta;
    std::vector<bool>                       _terminal;
    std::vector<std::string>                _names;
    state_type                              _initial = 0;
  };

  //! The deterministic 2-tape automaton of a transducer graph, computed on
  //! demand: a state reads with the tape of q̄, the unique state of shape
  //! (i) or (ii) at the end of its chain of (ε, ε)-edges. Throws
  //! NondeterminismError on reaching a state of no admissible shape.
  template <TransducerGraph T>
  class TwoTapeView {
   public:
    using state_type = typename T::state_type;

    explicit TwoTapeView(T const& t) : _t(&t) {}

    state_type initial() const {
      return _t->initial();
    }

    //! Terminal iff the (ε, ε)-chain from s meets a terminal state.
    bool is_terminal(state_type const& s) const {
      bool hit = false;
      walk(s, [&](state_type const& q) {
        hit = hit || _t->is_terminal(q);
      });
      return hit;
    }

    Tape tape(state_type const& s) const {
      auto bar = q_bar(s);
      return bar && bar->second == StateClass::read_tape2 ? Tape::second
                                                          : Tape::first;
    }

    std::optional<state_type> next(state_type const& s, char c) const {
      auto bar = q_bar(s);
      if (!bar) {
        return std::nullopt;
      }
      for (auto const& e : _t->out_edges(bar->first)) {
        std::string_view label
            = bar->second == StateClass::read_tape1 ? e.in : e.out;
        if (label.size() == 1 && label[0] == c) {
          return e.target;
        }
      }
      return std::nullopt;
    }

    //! q̄ with its shape, or nothing if the chain halts or cycles.
    std::optional<std::pair<state_type, StateClass>>
    q_bar(state_type const& s) const {
      std::optional<std::pair<state_type, StateClass>> out;
      walk(s, [&](state_type const& q) {
        auto c = classify_edges(_t->out_edges(q));
        if (c == StateClass::read_tape1 || c == StateClass::read_tape2) {
          out.emplace(q, c);
        }
      });
      return out;
    }

   private:
    // Visit s and its successors along (ε, ε)-edges of silent states.
    template <typename F>
    void walk(state_type const& s, F&& f) const {
      std::unordered_set<state_type, typename T::state_hash> seen;
      state_type                                             q = s;
      while (seen.insert(q).second) {
        f(q);
        auto const& edges = _t->out_edges(q);
        auto        c     = classify_edges(edges);
        if (c == StateClass::violation) {
          throw NondeterminismError(
              "transducer state violates the determinism conditions");
        }
        if (c != StateClass::silent) {
          return;
        }
        q = edges.begin()->target;
      }
    }

    T const* _t;
  };

  //! Explicit 2-tape automaton from an explicit transducer accepting a
  //! relation of the form R^$. Throws NondeterminismError if some state
  //! has no admissible shape.
  inline TwoTapeDfa transducer_to_two_tape(Transducer const& t) {
    auto classes = classify_transducer_states(t);
    for (std::size_t s = 0; s < classes.size(); ++s) {
      if (classes[s] == StateClass::violation) {
        throw NondeterminismError("transducer state " + std::to_string(s)
                                  + " violates the determinism conditions");
      }
    }
    auto strip = [](std::string const& a) {
      std::string out;
      for (char c : a) {
        if (c != end_marker) {
          out += c;
        }
      }
      return out;
    };
    TwoTapeDfa        d(strip(t.input_alphabet()), strip(t.output_alphabet()));
    TwoTapeView<Transducer> view(t);
    for (std::size_t s = 0; s < t.number_of_states(); ++s) {
      auto q = static_cast<Transducer::state_type>(s);
      d.add_state(view.tape(q), t.state_name(q));
    }
    for (std::size_t s = 0; s < t.number_of_states(); ++s) {
      auto q = static_cast<Transducer::state_type>(s);
      d.set_terminal(q, view.is_terminal(q));
      auto bar = view.q_bar(q);
      if (!bar) {
        continue;
      }
      for (auto const& e : t.out_edges(bar->first)) {
        char c = bar->second == StateClass::read_tape1 ? e.in[0] : e.out[0];
        d.set_transition(q, c, e.target);
      }
    }
    d.set_initial(t.initial());
    return d;
  }

}  // namespace smallover::automata

#endif  // SMALLOVER_AUTOMATA_TWO_TAPE_HPP_
