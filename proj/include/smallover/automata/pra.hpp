// 2-tape k-prefix-rewriting automata: each edge reads a bounded prefix of
// both tapes and rewrites it. Includes step semantics, acceptance,
// determinism and expansion audits, and compilation of a machine with an
// expansion bound into a transducer that buffers the tape prefixes in its
// finite control.

#ifndef SMALLOVER_AUTOMATA_PRA_HPP_
#define SMALLOVER_AUTOMATA_PRA_HPP_

#include <algorithm>      // for min, max, reverse
#include <concepts>       // for convertible_to
#include <cstddef>        // for size_t
#include <cstdint>        // for uint32_t
#include <deque>          // for deque
#include <functional>     // for hash
#include <map>            // for map
#include <memory>         // for shared_ptr
#include <optional>       // for optional
#include <set>            // for multiset
#include <string>         // for string
#include <string_view>    // for string_view
#include <unordered_map>  // for unordered_map
#include <unordered_set>  // for unordered_set
#include <utility>        // for move
#include <vector>         // for vector

#include "smallover/automata/transducer.hpp"
#include "smallover/errors.hpp"
#include "smallover/word.hpp"

namespace smallover::automata {

  using pra_state = std::uint32_t;

  //! An edge from source to target labelled (x1, x2, y1, y2): replace the
  //! prefix x1 of tape 1 by x2 and the prefix y1 of tape 2 by y2.
  struct PraEdge {
    pra_state source;
    word_type x1, x2, y1, y2;
    pra_state target;

    bool operator==(PraEdge const&) const = default;
  };

  //! Both tapes end in exactly one '$'.
  struct Configuration {
    word_type tape1;
    word_type tape2;
    pra_state state = 0;

    bool operator==(Configuration const&) const = default;
  };

  struct ConfigurationHash {
    std::size_t operator()(Configuration const& c) const {
      std::hash<std::string_view> h;
      return h(c.tape1) * 1'000'003 ^ h(c.tape2) * 31 ^ c.state;
    }
  };

  inline Configuration make_configuration(std::string_view u,
                                          std::string_view v,
                                          pra_state        q) {
    if (u.find(end_marker) != std::string_view::npos
        || v.find(end_marker) != std::string_view::npos) {
      throw InvalidArgument("input words must not contain the end-marker");
    }
    return {word_type(u) + end_marker, word_type(v) + end_marker, q};
  }

  //! A prefix-rewriting automaton. applicable(q, t1, t2) lists the edges
  //! from q whose read components match; each ti is either a complete tape
  //! (ending in '$') or a prefix of one holding at least window() letters.
  template <typename M>
  concept PraMachine
      = requires(M const& m, pra_state q, std::string_view t) {
          { m.window() } -> std::convertible_to<std::size_t>;
          { m.initial() } -> std::convertible_to<pra_state>;
          { m.is_terminal(q) } -> std::convertible_to<bool>;
          { m.applicable(q, t, t) }
              -> std::convertible_to<std::vector<PraEdge>>;
          { m.alphabet1() } -> std::convertible_to<std::string_view>;
          { m.alphabet2() } -> std::convertible_to<std::string_view>;
          { m.state_name(q) } -> std::convertible_to<std::string>;
        };

  namespace detail {
    // The part of a tape an edge of a k-machine can inspect.
    inline std::string_view tape_view(std::string_view tape, std::size_t k) {
      return tape.size() <= k + 1 ? tape : tape.substr(0, k);
    }

    // Does read component x match the (possibly partial) tape view t?
    inline bool reads(std::string_view x, std::string_view t) {
      if (ends_with_marker(x)) {
        return x == t;
      }
      return t.substr(0, x.size()) == x;
    }

    // Label component checks: '$' only as the last symbol, letters from
    // the alphabet.
    inline void check_component(std::string_view w,
                                std::string_view alphabet,
                                char const*      what) {
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == end_marker) {
          if (i + 1 != w.size()) {
            throw InvalidArgument(std::string(what)
                                  + ": '$' must be the last symbol");
          }
        } else if (alphabet.find(w[i]) == std::string_view::npos) {
          throw InvalidArgument(std::string(what) + ": letter '" + w[i]
                                + "' not in the tape alphabet");
        }
      }
    }
  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // Explicit machines
  ////////////////////////////////////////////////////////////////////////

  class PrefixRewritingAutomaton {
   public:
    PrefixRewritingAutomaton() = default;

    PrefixRewritingAutomaton(std::size_t k,
                             std::string alphabet1,
                             std::string alphabet2)
        : _k(k),
          _alphabet1(std::move(alphabet1)),
          _alphabet2(std::move(alphabet2)) {}

    std::size_t window() const noexcept {
      return _k;
    }

    std::string const& alphabet1() const noexcept {
      return _alphabet1;
    }

    std::string const& alphabet2() const noexcept {
      return _alphabet2;
    }

    pra_state add_state(std::string name = {}) {
      _names.push_back(name.empty() ? std::to_string(_names.size())
                                    : std::move(name));
      _terminal.push_back(false);
      _index.emplace_back();
      return static_cast<pra_state>(_names.size() - 1);
    }

    std::size_t number_of_states() const noexcept {
      return _names.size();
    }

    std::string state_name(pra_state q) const {
      return _names.at(q);
    }

    void set_initial(pra_state q) {
      check_state(q);
      _initial = q;
    }

    void set_terminal(pra_state q, bool value = true) {
      check_state(q);
      _terminal[q] = value;
    }

    pra_state initial() const noexcept {
      return _initial;
    }

    bool is_terminal(pra_state q) const {
      return _terminal.at(q);
    }

    //! Read components must lie in A^{≤k} ∪ A^{<k}$, and each read
    //! component carries '$' exactly when its written partner does.
    //! Written components are not length-bounded.
    void add_edge(PraEdge e) {
      check_state(e.source);
      check_state(e.target);
      check_read(e.x1, _alphabet1, "x1");
      check_read(e.y1, _alphabet2, "y1");
      detail::check_component(e.x2, _alphabet1, "x2");
      detail::check_component(e.y2, _alphabet2, "y2");
      if (ends_with_marker(e.x1) != ends_with_marker(e.x2)
          || ends_with_marker(e.y1) != ends_with_marker(e.y2)) {
        throw InvalidArgument("edge label: a read component ends in '$' "
                              "iff its written component does");
      }
      _index[e.source][e.x1].push_back(_edges.size());
      _edges.push_back(std::move(e));
    }

    std::vector<PraEdge> const& edges() const noexcept {
      return _edges;
    }

    std::vector<PraEdge> applicable(pra_state        q,
                                    std::string_view t1,
                                    std::string_view t2) const {
      std::vector<PraEdge> out;
      auto const&          by_x1 = _index.at(q);
      if (by_x1.empty()) {
        return out;
      }
      for (std::size_t n = 0; n <= std::min(t1.size(), _k + 1); ++n) {
        auto it = by_x1.find(word_type(t1.substr(0, n)));
        if (it == by_x1.end()) {
          continue;
        }
        for (auto i : it->second) {
          auto const& e = _edges[i];
          if (detail::reads(e.x1, t1) && detail::reads(e.y1, t2)) {
            out.push_back(e);
          }
        }
      }
      return out;
    }

    //! Sufficient condition for determinism: no two edges from one state
    //! have read components that are both prefix-comparable ('$' counting
    //! as a letter).
    bool has_prefix_incomparable_guards() const {
      for (std::size_t q = 0; q < _index.size(); ++q) {
        auto const& by_x1 = _index[q];
        // y1 components of the edges grouped by x1.
        std::map<word_type, std::multiset<word_type>> ys;
        for (auto const& [x1, ids] : by_x1) {
          for (auto i : ids) {
            ys[x1].insert(_edges[i].y1);
          }
        }
        for (auto const& [x1, ids] : by_x1) {
          for (auto i : ids) {
            word_type const& y1 = _edges[i].y1;
            // Every edge f whose x1 is a prefix of this x1.
            for (std::size_t n = 0; n <= x1.size(); ++n) {
              auto g = ys.find(x1.substr(0, n));
              if (g == ys.end()) {
                continue;
              }
              bool same_x = n == x1.size();
              for (std::size_t m = 0; m <= y1.size(); ++m) {
                auto c = g->second.count(y1.substr(0, m));
                // Exclude the edge itself.
                if (same_x && m == y1.size()) {
                  c -= 1;
                }
                if (c > 0) {
                  return false;
                }
              }
              // Some y1 of f that extends this y1.
              for (auto it = g->second.upper_bound(y1);
                   it != g->second.end()
                   && it->compare(0, y1.size(), y1) == 0;
                   ++it) {
                if (*it != y1) {
                  return false;
                }
              }
            }
          }
        }
      }
      return true;
    }

   private:
    void check_state(pra_state q) const {
      if (q >= _names.size()) {
        throw InvalidArgument("state " + std::to_string(q) + " out of range");
      }
    }

    void check_read(std::string_view x,
                    std::string_view alphabet,
                    char const*      what) const {
      detail::check_component(x, alphabet, what);
      std::size_t letters = x.size() - (ends_with_marker(x) ? 1 : 0);
      bool fits = ends_with_marker(x) ? letters < _k || letters == 0
                                      : letters <= _k;
      if (!fits) {
        throw InvalidArgument(std::string(what)
                              + ": read component longer than the window");
      }
    }

    std::size_t                                                   _k = 0;
    std::string                                                   _alphabet1;
    std::string                                                   _alphabet2;
    std::vector<std::string>                                      _names;
    std::vector<bool>                                             _terminal;
    std::vector<PraEdge>                                          _edges;
    std::vector<std::map<word_type, std::vector<std::size_t>>>   _index;
    pra_state                                                     _initial = 0;
  };

  ////////////////////////////////////////////////////////////////////////
  // Step semantics
  ////////////////////////////////////////////////////////////////////////

  template <PraMachine M>
  std::vector<PraEdge> pra_applicable_edges(M const& m, Configuration const& c) {
    return m.applicable(c.state,
                        detail::tape_view(c.tape1, m.window()),
                        detail::tape_view(c.tape2, m.window()));
  }

  inline Configuration apply_edge(Configuration const& c, PraEdge const& e) {
    return {e.x2 + c.tape1.substr(e.x1.size()),
            e.y2 + c.tape2.substr(e.y1.size()),
            e.target};
  }

  //! The successor of c, if any edge applies. Throws NondeterminismError if
  //! more than one does.
  template <PraMachine M>
  std::optional<Configuration> pra_step(M const& m, Configuration const& c) {
    auto edges = pra_applicable_edges(m, c);
    if (edges.empty()) {
      return std::nullopt;
    }
    if (edges.size() > 1) {
      throw NondeterminismError(std::to_string(edges.size())
                                + " edges applicable in state "
                                + m.state_name(c.state));
    }
    return apply_edge(c, edges.front());
  }

  enum class PraMode { deterministic, nondeterministic };

  struct PraRunOptions {
    PraMode     mode = PraMode::deterministic;
    //! Steps of a deterministic run, or configurations of a search.
    std::size_t cap  = 100'000'000;
  };

  namespace detail {
    // A tape stored back to front so that rewriting a prefix costs time
    // proportional to the rewritten part only.
    class ReversedTape {
     public:
      explicit ReversedTape(std::string_view w) : _rev(w.rbegin(), w.rend()) {}

      std::size_t size() const noexcept {
        return _rev.size();
      }

      // First min(size, n) symbols in reading order.
      word_type prefix(std::size_t n) const {
        n = std::min(n, _rev.size());
        return word_type(_rev.rbegin(), _rev.rbegin() + n);
      }

      void rewrite(std::size_t drop, std::string_view with) {
        _rev.resize(_rev.size() - drop);
        _rev.append(with.rbegin(), with.rend());
      }

     private:
      std::string _rev;
    };

    // Deterministic run from (u$, v$, initial); calls visit(|t1|, |t2|, q)
    // on every configuration.
    template <PraMachine M, typename Visit>
    bool pra_run(M const&         m,
                 std::string_view u,
                 std::string_view v,
                 std::size_t      cap,
                 Visit&&          visit) {
      auto        start = make_configuration(u, v, m.initial());
      ReversedTape t1(start.tape1), t2(start.tape2);
      pra_state   q = m.initial();
      std::size_t k = m.window();
      for (std::size_t steps = 0;; ++steps) {
        visit(t1.size(), t2.size(), q);
        if (t1.size() == 1 && t2.size() == 1 && m.is_terminal(q)) {
          return true;
        }
        if (steps == cap) {
          throw LimitExceeded("run exceeded " + std::to_string(cap)
                              + " steps");
        }
        auto w1    = t1.prefix(t1.size() <= k + 1 ? k + 1 : k);
        auto w2    = t2.prefix(t2.size() <= k + 1 ? k + 1 : k);
        auto edges = m.applicable(q, w1, w2);
        if (edges.empty()) {
          return false;
        }
        if (edges.size() > 1) {
          throw NondeterminismError(std::to_string(edges.size())
                                    + " edges applicable in state "
                                    + m.state_name(q));
        }
        auto const& e = edges.front();
        t1.rewrite(e.x1.size(), e.x2);
        t2.rewrite(e.y1.size(), e.y2);
        q = e.target;
      }
    }
  }  // namespace detail

  //! (u$, v$, initial) →* ($, $, terminal). Deterministic mode runs the
  //! unique computation and throws NondeterminismError if it branches;
  //! nondeterministic mode searches breadth-first. Both throw
  //! LimitExceeded past options.cap.
  template <PraMachine M>
  bool pra_accepts(M const&         m,
                   std::string_view u,
                   std::string_view v,
                   PraRunOptions    options = {}) {
    if (options.mode == PraMode::deterministic) {
      return detail::pra_run(
          m, u, v, options.cap, [](std::size_t, std::size_t, pra_state) {});
    }
    std::unordered_set<Configuration, ConfigurationHash> seen;
    std::deque<Configuration>                            queue;
    auto start = make_configuration(u, v, m.initial());
    seen.insert(start);
    queue.push_back(std::move(start));
    while (!queue.empty()) {
      auto c = std::move(queue.front());
      queue.pop_front();
      if (c.tape1.size() == 1 && c.tape2.size() == 1
          && m.is_terminal(c.state)) {
        return true;
      }
      for (auto const& e : pra_applicable_edges(m, c)) {
        auto n = apply_edge(c, e);
        if (seen.insert(n).second) {
          if (seen.size() > options.cap) {
            throw LimitExceeded("search exceeded "
                                + std::to_string(options.cap)
                                + " configurations");
          }
          queue.push_back(std::move(n));
        }
      }
    }
    return false;
  }

  //! False iff some configuration reachable from a probe has two or more
  //! applicable edges.
  template <PraMachine M>
  bool pra_is_deterministic(M const&                          m,
                            std::vector<Configuration> const& probes,
                            std::size_t                       cap = 10'000'000) {
    std::unordered_set<Configuration, ConfigurationHash> seen;
    std::deque<Configuration>                            queue;
    for (auto const& c : probes) {
      if (seen.insert(c).second) {
        queue.push_back(c);
      }
    }
    while (!queue.empty()) {
      auto c = std::move(queue.front());
      queue.pop_front();
      auto edges = pra_applicable_edges(m, c);
      if (edges.size() > 1) {
        return false;
      }
      for (auto const& e : edges) {
        auto n = apply_edge(c, e);
        if (seen.insert(n).second) {
          if (seen.size() > cap) {
            throw LimitExceeded("probe exceeded " + std::to_string(cap)
                                + " configurations");
          }
          queue.push_back(std::move(n));
        }
      }
    }
    return true;
  }

  //! Probing plus the static guard check.
  inline bool pra_is_deterministic(PrefixRewritingAutomaton const&   m,
                                   std::vector<Configuration> const& probes,
                                   std::size_t cap = 10'000'000) {
    return m.has_prefix_incomparable_guards()
           && pra_is_deterministic<PrefixRewritingAutomaton>(m, probes, cap);
  }

  struct ExpansionAudit {
    bool        accepted   = false;
    std::size_t steps      = 0;
    std::size_t max_growth = 0;  // max over the run of |tape_i| - |input_i$|

    bool within(std::size_t b) const noexcept {
      return max_growth <= b;
    }
  };

  //! Runs a deterministic machine on (u, v) recording how far either tape
  //! grows beyond its initial length.
  template <PraMachine M>
  ExpansionAudit pra_expansion_audit(M const&         m,
                                     std::string_view u,
                                     std::string_view v,
                                     std::size_t      cap = 100'000'000) {
    ExpansionAudit a;
    a.accepted = detail::pra_run(
        m, u, v, cap, [&](std::size_t l1, std::size_t l2, pra_state) {
          ++a.steps;
          if (l1 > u.size() + 1) {
            a.max_growth = std::max(a.max_growth, l1 - u.size() - 1);
          }
          if (l2 > v.size() + 1) {
            a.max_growth = std::max(a.max_growth, l2 - v.size() - 1);
          }
        });
    return a;
  }

  ////////////////////////////////////////////////////////////////////////
  // Compilation to a transducer
  ////////////////////////////////////////////////////////////////////////

  //! State of the buffering transducer: the first letters of each tape
  //! not yet consumed by the simulated machine, and its state.
  struct BufferState {
    word_type x;
    word_type y;
    pra_state q = 0;

    bool operator==(BufferState const&) const = default;
  };

  struct BufferStateHash {
    std::size_t operator()(BufferState const& s) const {
      std::hash<std::string_view> h;
      return h(s.x) * 1'000'003 ^ h(s.y) * 31 ^ s.q;
    }
  };

  //! Transducer accepting { (u$, v$) : m accepts (u, v) } for a machine
  //! with expansion bound b. Buffers hold at most k + b symbols ('$'
  //! included); a buffer is ready once it holds k letters or ends in '$'.
  //! Edges: fill buffer 1 while it is not ready, with label (a, ε); then
  //! fill buffer 2 with (ε, a); then simulate one edge of m with (ε, ε),
  //! provided both rewritten buffers still fit. States are generated on
  //! demand.
  template <PraMachine M>
  class BufferedTransducer {
   public:
    using state_type = BufferState;
    using state_hash = BufferStateHash;
    using edge_type  = TransducerEdge<BufferState>;

    BufferedTransducer(std::shared_ptr<M const> m, std::size_t b)
        : _m(std::move(m)),
          _b(b),
          _in(std::string(_m->alphabet1()) + end_marker),
          _out(std::string(_m->alphabet2()) + end_marker) {}

    M const& machine() const noexcept {
      return *_m;
    }

    std::size_t expansion_bound() const noexcept {
      return _b;
    }

    std::size_t buffer_capacity() const noexcept {
      return _m->window() + _b;
    }

    std::string const& input_alphabet() const noexcept {
      return _in;
    }

    std::string const& output_alphabet() const noexcept {
      return _out;
    }

    BufferState initial() const {
      return {{}, {}, _m->initial()};
    }

    bool is_terminal(BufferState const& s) const {
      return s.x.size() == 1 && s.x[0] == end_marker && s.y.size() == 1
             && s.y[0] == end_marker && _m->is_terminal(s.q);
    }

    bool ready(std::string_view buffer) const noexcept {
      return buffer.size() >= _m->window() || ends_with_marker(buffer);
    }

    std::vector<edge_type> out_edges(BufferState const& s) const {
      std::vector<edge_type> out;
      if (!ready(s.x)) {
        for (char a : _in) {
          out.push_back({std::string(1, a), {}, {s.x + a, s.y, s.q}});
        }
      } else if (!ready(s.y)) {
        for (char a : _out) {
          out.push_back({{}, std::string(1, a), {s.x, s.y + a, s.q}});
        }
      } else {
        std::size_t const k = _m->window();
        for (auto const& e : _m->applicable(
                 s.q, detail::tape_view(s.x, k), detail::tape_view(s.y, k))) {
          BufferState n{e.x2 + s.x.substr(e.x1.size()),
                        e.y2 + s.y.substr(e.y1.size()),
                        e.target};
          if (n.x.size() <= buffer_capacity()
              && n.y.size() <= buffer_capacity()) {
            out.push_back({{}, {}, std::move(n)});
          }
        }
      }
      return out;
    }

    std::string state_name(BufferState const& s) const {
      return "(" + show(s.x) + ", " + show(s.y) + ", " + _m->state_name(s.q)
             + ")";
    }

    //! Explicit copy of the reachable part; throws LimitExceeded past cap
    //! states.
    Transducer materialize(std::size_t cap = 5'000'000) const {
      return automata::materialize(
          *this, cap, [this](BufferState const& s) { return state_name(s); });
    }

   private:
    std::shared_ptr<M const> _m;
    std::size_t              _b;
    std::string              _in;
    std::string              _out;
  };

  template <PraMachine M>
  BufferedTransducer<M> compile_pra_to_transducer(std::shared_ptr<M const> m,
                                                  std::size_t              b) {
    return BufferedTransducer<M>(std::move(m), b);
  }

}  // namespace smallover::automata

#endif  // SMALLOVER_AUTOMATA_PRA_HPP_
