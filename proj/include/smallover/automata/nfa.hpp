// Finite automata over single-character alphabets: an NFA with ε-moves, a
// complete DFA, and the boolean algebra of regular languages built on them.

#ifndef SMALLOVER_AUTOMATA_NFA_HPP_
#define SMALLOVER_AUTOMATA_NFA_HPP_

#include <algorithm>  // for sort, unique, set_union
#include <cstddef>    // for size_t
#include <cstdint>    // for uint32_t
#include <deque>      // for deque
#include <map>        // for map
#include <string>     // for string
#include <string_view>
#include <utility>  // for pair
#include <vector>   // for vector

#include "smallover/errors.hpp"
#include "smallover/word.hpp"

namespace smallover::automata {

  using state_type = std::uint32_t;

  //! Label of an ε-move in an Nfa.
  inline constexpr char epsilon = '\0';

  struct NfaArc {
    char       letter;  // epsilon for an ε-move
    state_type target;
  };

  class Nfa {
   public:
    Nfa() = default;

    explicit Nfa(std::string alphabet) : _alphabet(std::move(alphabet)) {
      std::sort(_alphabet.begin(), _alphabet.end());
      _alphabet.erase(std::unique(_alphabet.begin(), _alphabet.end()),
                      _alphabet.end());
    }

    std::string const& alphabet() const noexcept {
      return _alphabet;
    }

    std::size_t number_of_states() const noexcept {
      return _arcs.size();
    }

    state_type add_state() {
      _arcs.emplace_back();
      _final.push_back(false);
      return static_cast<state_type>(_arcs.size() - 1);
    }

    void add_transition(state_type from, char letter, state_type to) {
      check_state(from);
      check_state(to);
      if (letter != epsilon
          && _alphabet.find(letter) == std::string::npos) {
        throw InvalidArgument(std::string("letter '") + letter
                              + "' is not in the alphabet of the automaton");
      }
      _arcs[from].push_back({letter, to});
    }

    void add_initial(state_type s) {
      check_state(s);
      _initial.push_back(s);
    }

    void set_final(state_type s, bool value = true) {
      check_state(s);
      _final[s] = value;
    }

    std::vector<state_type> const& initial_states() const noexcept {
      return _initial;
    }

    bool is_final(state_type s) const {
      return _final[s];
    }

    std::vector<NfaArc> const& arcs(state_type s) const {
      return _arcs[s];
    }

    std::size_t number_of_transitions() const {
      std::size_t n = 0;
      for (auto const& a : _arcs) {
        n += a.size();
      }
      return n;
    }

   private:
    void check_state(state_type s) const {
      if (s >= _arcs.size()) {
        throw InvalidArgument("state " + std::to_string(s)
                              + " out of range");
      }
    }

    std::string                      _alphabet;
    std::vector<std::vector<NfaArc>> _arcs;
    std::vector<bool>                _final;
    std::vector<state_type>          _initial;
  };

  ////////////////////////////////////////////////////////////////////////
  // Constructors for simple languages
  ////////////////////////////////////////////////////////////////////////

  inline Nfa empty_language(std::string alphabet) {
    Nfa n(std::move(alphabet));
    n.add_initial(n.add_state());
    return n;
  }

  inline Nfa single_word(std::string alphabet, std::string_view w) {
    Nfa        n(std::move(alphabet));
    state_type s = n.add_state();
    n.add_initial(s);
    for (char c : w) {
      state_type t = n.add_state();
      n.add_transition(s, c, t);
      s = t;
    }
    n.set_final(s);
    return n;
  }

  inline Nfa finite_language(std::string                   alphabet,
                             std::vector<word_type> const& words) {
    Nfa        n(std::move(alphabet));
    state_type root = n.add_state();
    n.add_initial(root);
    for (auto const& w : words) {
      state_type s = n.add_state();
      n.add_transition(root, epsilon, s);
      for (char c : w) {
        state_type t = n.add_state();
        n.add_transition(s, c, t);
        s = t;
      }
      n.set_final(s);
    }
    return n;
  }

  //! All words over the alphabet.
  inline Nfa universal_language(std::string alphabet) {
    Nfa        n(std::move(alphabet));
    state_type s = n.add_state();
    n.add_initial(s);
    n.set_final(s);
    for (char c : n.alphabet()) {
      n.add_transition(s, c, s);
    }
    return n;
  }

  ////////////////////////////////////////////////////////////////////////
  // Simulation
  ////////////////////////////////////////////////////////////////////////

  inline std::vector<state_type>
  epsilon_closure(Nfa const& n, std::vector<state_type> states) {
    std::vector<bool>       seen(n.number_of_states(), false);
    std::vector<state_type> stack;
    for (auto s : states) {
      if (!seen[s]) {
        seen[s] = true;
        stack.push_back(s);
      }
    }
    std::vector<state_type> out;
    while (!stack.empty()) {
      auto s = stack.back();
      stack.pop_back();
      out.push_back(s);
      for (auto const& a : n.arcs(s)) {
        if (a.letter == epsilon && !seen[a.target]) {
          seen[a.target] = true;
          stack.push_back(a.target);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  inline std::vector<state_type> step(Nfa const&                     n,
                                      std::vector<state_type> const& from,
                                      char                           letter) {
    std::vector<state_type> next;
    for (auto s : from) {
      for (auto const& a : n.arcs(s)) {
        if (a.letter == letter) {
          next.push_back(a.target);
        }
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    return epsilon_closure(n, std::move(next));
  }

  inline bool nfa_membership(Nfa const& n, std::string_view w) {
    auto cur = epsilon_closure(n, n.initial_states());
    for (char c : w) {
      cur = step(n, cur, c);
      if (cur.empty()) {
        return false;
      }
    }
    return std::any_of(
        cur.begin(), cur.end(), [&](state_type s) { return n.is_final(s); });
  }

  //! Accepted words of length at most \p max_length, in length-then-byte
  //! order. Intended for display and tests.
  inline std::vector<word_type> accepted_words(Nfa const&  n,
                                               std::size_t max_length) {
    std::vector<word_type> out;
    for (auto const& w : words_up_to(n.alphabet(), max_length)) {
      if (nfa_membership(n, w)) {
        out.push_back(w);
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Deterministic automata
  ////////////////////////////////////////////////////////////////////////

  //! Complete DFA: every state has a successor for every letter.
  struct Dfa {
    std::string             alphabet;
    std::vector<state_type> table;  // table[s * |alphabet| + i]
    std::vector<bool>       final;
    state_type              initial = 0;

    std::size_t number_of_states() const noexcept {
      return final.size();
    }

    state_type next(state_type s, std::size_t letter_index) const {
      return table[s * alphabet.size() + letter_index];
    }
  };

  namespace detail {
    inline std::string merge_alphabets(std::string_view a, std::string_view b) {
      std::string out(a);
      out += b;
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }
  }  // namespace detail

  //! Subset construction. \p alphabet defaults to the automaton's own and
  //! may be a superset of it.
  inline Dfa determinize(Nfa const& n, std::string alphabet = {}) {
    Dfa d;
    d.alphabet = alphabet.empty() ? n.alphabet()
                                  : detail::merge_alphabets(alphabet,
                                                            n.alphabet());
    std::map<std::vector<state_type>, state_type> index;
    std::vector<std::vector<state_type>>          subsets;
    auto intern = [&](std::vector<state_type> set) {
      auto [it, fresh] = index.emplace(set, subsets.size());
      if (fresh) {
        bool fin = std::any_of(set.begin(), set.end(), [&](state_type s) {
          return n.is_final(s);
        });
        d.final.push_back(fin);
        subsets.push_back(std::move(set));
      }
      return it->second;
    };
    d.initial = intern(epsilon_closure(n, n.initial_states()));
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      for (char c : d.alphabet) {
        auto next = step(n, subsets[i], c);
        d.table.push_back(intern(std::move(next)));
      }
    }
    return d;
  }

  //! Moore partition refinement; \p d must have only reachable states
  //! (determinize guarantees this).
  inline Dfa minimize(Dfa const& d) {
    std::size_t const        n = d.number_of_states();
    std::size_t const        k = d.alphabet.size();
    std::vector<state_type>  cls(n);
    for (std::size_t s = 0; s < n; ++s) {
      cls[s] = d.final[s] ? 1 : 0;
    }
    std::size_t count = 0;
    while (true) {
      std::map<std::vector<state_type>, state_type> sig;
      std::vector<state_type>                       next(n);
      for (std::size_t s = 0; s < n; ++s) {
        std::vector<state_type> key{cls[s]};
        for (std::size_t i = 0; i < k; ++i) {
          key.push_back(cls[d.table[s * k + i]]);
        }
        auto it = sig.emplace(std::move(key), sig.size()).first;
        next[s] = it->second;
      }
      std::size_t new_count = sig.size();
      cls                   = std::move(next);
      if (new_count == count) {
        break;
      }
      count = new_count;
    }
    // Renumber so that the initial state's class is 0 and the rest follow
    // in breadth-first order; this makes minimal DFAs canonical.
    Dfa                     m;
    m.alphabet = d.alphabet;
    std::vector<state_type> renum(count, static_cast<state_type>(-1));
    std::vector<state_type> rep(count);
    for (std::size_t s = 0; s < n; ++s) {
      rep[cls[s]] = static_cast<state_type>(s);
    }
    std::deque<state_type> queue{cls[d.initial]};
    renum[cls[d.initial]] = 0;
    std::vector<state_type> order{cls[d.initial]};
    while (!queue.empty()) {
      auto c = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < k; ++i) {
        auto t = cls[d.table[rep[c] * k + i]];
        if (renum[t] == static_cast<state_type>(-1)) {
          renum[t] = static_cast<state_type>(order.size());
          order.push_back(t);
          queue.push_back(t);
        }
      }
    }
    m.initial = 0;
    for (auto c : order) {
      m.final.push_back(d.final[rep[c]]);
      for (std::size_t i = 0; i < k; ++i) {
        m.table.push_back(renum[cls[d.table[rep[c] * k + i]]]);
      }
    }
    return m;
  }

  inline Nfa to_nfa(Dfa const& d) {
    Nfa n(d.alphabet);
    for (std::size_t s = 0; s < d.number_of_states(); ++s) {
      n.add_state();
      n.set_final(static_cast<state_type>(s), d.final[s]);
    }
    n.add_initial(d.initial);
    std::size_t k = d.alphabet.size();
    for (std::size_t s = 0; s < d.number_of_states(); ++s) {
      for (std::size_t i = 0; i < k; ++i) {
        n.add_transition(static_cast<state_type>(s), d.alphabet[i],
                         d.table[s * k + i]);
      }
    }
    return n;
  }

  ////////////////////////////////////////////////////////////////////////
  // Boolean operations and decision procedures
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    // Copy the states of src into dst, returning the offset.
    inline state_type embed(Nfa& dst, Nfa const& src) {
      auto offset = static_cast<state_type>(dst.number_of_states());
      for (std::size_t s = 0; s < src.number_of_states(); ++s) {
        dst.add_state();
        dst.set_final(offset + s, src.is_final(static_cast<state_type>(s)));
      }
      for (std::size_t s = 0; s < src.number_of_states(); ++s) {
        for (auto const& a : src.arcs(static_cast<state_type>(s))) {
          dst.add_transition(offset + s, a.letter, offset + a.target);
        }
      }
      return offset;
    }
  }  // namespace detail

  inline Nfa nfa_union(Nfa const& a, Nfa const& b) {
    Nfa  out(detail::merge_alphabets(a.alphabet(), b.alphabet()));
    auto oa = detail::embed(out, a);
    auto ob = detail::embed(out, b);
    for (auto s : a.initial_states()) {
      out.add_initial(oa + s);
    }
    for (auto s : b.initial_states()) {
      out.add_initial(ob + s);
    }
    return out;
  }

  inline Nfa nfa_concat(Nfa const& a, Nfa const& b) {
    Nfa  out(detail::merge_alphabets(a.alphabet(), b.alphabet()));
    auto oa = detail::embed(out, a);
    auto ob = detail::embed(out, b);
    for (auto s : a.initial_states()) {
      out.add_initial(oa + s);
    }
    for (std::size_t s = 0; s < a.number_of_states(); ++s) {
      if (a.is_final(static_cast<state_type>(s))) {
        out.set_final(oa + s, false);
        for (auto t : b.initial_states()) {
          out.add_transition(oa + s, epsilon, ob + t);
        }
      }
    }
    return out;
  }

  inline Nfa nfa_star(Nfa const& a) {
    Nfa        out(a.alphabet());
    state_type hub = out.add_state();
    out.add_initial(hub);
    out.set_final(hub);
    auto oa = detail::embed(out, a);
    for (auto s : a.initial_states()) {
      out.add_transition(hub, epsilon, oa + s);
    }
    for (std::size_t s = 0; s < a.number_of_states(); ++s) {
      if (a.is_final(static_cast<state_type>(s))) {
        out.add_transition(oa + s, epsilon, hub);
      }
    }
    return out;
  }

  //! Product construction on ε-free views of the operands.
  inline Nfa nfa_intersection(Nfa const& a, Nfa const& b) {
    Nfa out(detail::merge_alphabets(a.alphabet(), b.alphabet()));
    std::map<std::pair<state_type, state_type>, state_type> index;
    std::deque<std::pair<state_type, state_type>>           queue;
    auto intern = [&](state_type x, state_type y) {
      auto [it, fresh] = index.emplace(std::pair{x, y}, 0);
      if (fresh) {
        it->second = out.add_state();
        out.set_final(it->second, a.is_final(x) && b.is_final(y));
        queue.emplace_back(x, y);
      }
      return it->second;
    };
    for (auto x : epsilon_closure(a, a.initial_states())) {
      for (auto y : epsilon_closure(b, b.initial_states())) {
        out.add_initial(intern(x, y));
      }
    }
    while (!queue.empty()) {
      auto [x, y] = queue.front();
      queue.pop_front();
      state_type from = index[{x, y}];
      for (auto const& ax : a.arcs(x)) {
        if (ax.letter == epsilon) {
          out.add_transition(from, epsilon, intern(ax.target, y));
        }
      }
      for (auto const& by : b.arcs(y)) {
        if (by.letter == epsilon) {
          out.add_transition(from, epsilon, intern(x, by.target));
        }
      }
      for (auto const& ax : a.arcs(x)) {
        if (ax.letter == epsilon) {
          continue;
        }
        for (auto const& by : b.arcs(y)) {
          if (by.letter == ax.letter) {
            out.add_transition(from, ax.letter, intern(ax.target, by.target));
          }
        }
      }
    }
    if (out.number_of_states() == 0) {
      out.add_initial(out.add_state());
    }
    return out;
  }

  //! Complement relative to (alphabet)*, where alphabet defaults to the
  //! automaton's own.
  inline Nfa nfa_complement(Nfa const& a, std::string alphabet = {}) {
    Dfa d = determinize(a, std::move(alphabet));
    for (std::size_t s = 0; s < d.number_of_states(); ++s) {
      d.final[s] = !d.final[s];
    }
    return to_nfa(d);
  }

  inline bool nfa_is_empty(Nfa const& a) {
    std::vector<bool>       seen(a.number_of_states(), false);
    std::vector<state_type> stack;
    for (auto s : a.initial_states()) {
      if (!seen[s]) {
        seen[s] = true;
        stack.push_back(s);
      }
    }
    while (!stack.empty()) {
      auto s = stack.back();
      stack.pop_back();
      if (a.is_final(s)) {
        return false;
      }
      for (auto const& arc : a.arcs(s)) {
        if (!seen[arc.target]) {
          seen[arc.target] = true;
          stack.push_back(arc.target);
        }
      }
    }
    return true;
  }

  namespace detail {
    // Explore the product of two complete DFAs over the same alphabet and
    // report whether pred(final_a, final_b) holds in some reachable pair.
    template <typename Pred>
    bool product_reaches(Dfa const& x, Dfa const& y, Pred pred) {
      std::size_t const                                  k = x.alphabet.size();
      std::map<std::pair<state_type, state_type>, bool> seen;
      std::deque<std::pair<state_type, state_type>>      queue{
          {x.initial, y.initial}};
      seen[{x.initial, y.initial}] = true;
      while (!queue.empty()) {
        auto [s, t] = queue.front();
        queue.pop_front();
        if (pred(x.final[s], y.final[t])) {
          return true;
        }
        for (std::size_t i = 0; i < k; ++i) {
          std::pair<state_type, state_type> n{x.next(s, i), y.next(t, i)};
          if (seen.emplace(n, true).second) {
            queue.push_back(n);
          }
        }
      }
      return false;
    }
  }  // namespace detail

  //! L(a) ⊆ L(b).
  inline bool nfa_subset(Nfa const& a, Nfa const& b) {
    auto sigma = detail::merge_alphabets(a.alphabet(), b.alphabet());
    return !detail::product_reaches(determinize(a, sigma),
                                    determinize(b, sigma),
                                    [](bool fa, bool fb) { return fa && !fb; });
  }

  inline bool nfa_equivalent(Nfa const& a, Nfa const& b) {
    auto sigma = detail::merge_alphabets(a.alphabet(), b.alphabet());
    return !detail::product_reaches(determinize(a, sigma),
                                    determinize(b, sigma),
                                    [](bool fa, bool fb) { return fa != fb; });
  }

  //! Remove states that are unreachable or cannot reach a final state.
  inline Nfa trim(Nfa const& a) {
    std::size_t const              n = a.number_of_states();
    std::vector<bool>              fwd(n, false), bwd(n, false);
    std::vector<std::vector<state_type>> rev(n);
    std::vector<state_type>        stack;
    for (std::size_t s = 0; s < n; ++s) {
      for (auto const& arc : a.arcs(static_cast<state_type>(s))) {
        rev[arc.target].push_back(static_cast<state_type>(s));
      }
    }
    for (auto s : a.initial_states()) {
      if (!fwd[s]) {
        fwd[s] = true;
        stack.push_back(s);
      }
    }
    while (!stack.empty()) {
      auto s = stack.back();
      stack.pop_back();
      for (auto const& arc : a.arcs(s)) {
        if (!fwd[arc.target]) {
          fwd[arc.target] = true;
          stack.push_back(arc.target);
        }
      }
    }
    for (std::size_t s = 0; s < n; ++s) {
      if (a.is_final(static_cast<state_type>(s))) {
        bwd[s] = true;
        stack.push_back(static_cast<state_type>(s));
      }
    }
    while (!stack.empty()) {
      auto s = stack.back();
      stack.pop_back();
      for (auto p : rev[s]) {
        if (!bwd[p]) {
          bwd[p] = true;
          stack.push_back(p);
        }
      }
    }
    Nfa                     out(a.alphabet());
    std::vector<state_type> map(n, static_cast<state_type>(-1));
    for (std::size_t s = 0; s < n; ++s) {
      if (fwd[s] && bwd[s]) {
        map[s] = out.add_state();
        out.set_final(map[s], a.is_final(static_cast<state_type>(s)));
      }
    }
    for (std::size_t s = 0; s < n; ++s) {
      if (map[s] == static_cast<state_type>(-1)) {
        continue;
      }
      for (auto const& arc : a.arcs(static_cast<state_type>(s))) {
        if (map[arc.target] != static_cast<state_type>(-1)) {
          out.add_transition(map[s], arc.letter, map[arc.target]);
        }
      }
    }
    for (auto s : a.initial_states()) {
      if (map[s] != static_cast<state_type>(-1)) {
        out.add_initial(map[s]);
      }
    }
    if (out.number_of_states() == 0) {
      out.add_initial(out.add_state());
    }
    return out;
  }

  //! Minimal complete DFA of L(a), returned as an Nfa.
  inline Nfa canonical(Nfa const& a, std::string alphabet = {}) {
    return to_nfa(minimize(determinize(a, std::move(alphabet))));
  }

  ////////////////////////////////////////////////////////////////////////
  // End-markers
  ////////////////////////////////////////////////////////////////////////

  //! { w$ : w ∈ L(a) }
  inline Nfa append_end_marker(Nfa const& a) {
    Nfa  out(a.alphabet() + end_marker);
    auto off = detail::embed(out, a);
    for (auto s : a.initial_states()) {
      out.add_initial(off + s);
    }
    state_type done = out.add_state();
    for (std::size_t s = 0; s < a.number_of_states(); ++s) {
      if (a.is_final(static_cast<state_type>(s))) {
        out.set_final(off + s, false);
        out.add_transition(off + s, end_marker, done);
      }
    }
    out.set_final(done);
    return out;
  }

  //! { w : w$ ∈ L(a) }, for a language of end-marked words; '$'-moves
  //! become ε-moves.
  inline Nfa strip_end_marker(Nfa const& a) {
    std::string sigma;
    for (char c : a.alphabet()) {
      if (c != end_marker) {
        sigma += c;
      }
    }
    Nfa out(sigma);
    for (std::size_t s = 0; s < a.number_of_states(); ++s) {
      out.add_state();
      out.set_final(static_cast<state_type>(s),
                    a.is_final(static_cast<state_type>(s)));
    }
    for (std::size_t s = 0; s < a.number_of_states(); ++s) {
      for (auto const& arc : a.arcs(static_cast<state_type>(s))) {
        out.add_transition(static_cast<state_type>(s),
                           arc.letter == end_marker ? epsilon : arc.letter,
                           arc.target);
      }
    }
    for (auto s : a.initial_states()) {
      out.add_initial(s);
    }
    return out;
  }

}  // namespace smallover::automata

#endif  // SMALLOVER_AUTOMATA_NFA_HPP_
