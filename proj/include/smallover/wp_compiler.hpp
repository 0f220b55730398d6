// Compiles the word problem of a C(4) presentation into machines: a
// deterministic prefix-rewriting automaton whose edges mirror the
// recursive calls of WP-Prefix, the buffering transducer obtained from it,
// and the deterministic 2-tape automaton obtained from that.

#ifndef SMALLOVER_WP_COMPILER_HPP_
#define SMALLOVER_WP_COMPILER_HPP_

#include <array>        // for array
#include <cstddef>      // for size_t
#include <memory>       // for shared_ptr, make_shared
#include <optional>     // for optional
#include <string>       // for string
#include <string_view>  // for string_view
#include <utility>      // for move, pair
#include <vector>       // for vector

#include "smallover/automata/pra.hpp"
#include "smallover/automata/transducer.hpp"
#include "smallover/automata/two_tape.hpp"
#include "smallover/errors.hpp"
#include "smallover/presentation.hpp"
#include "smallover/word.hpp"
#include "smallover/wordproblem.hpp"

namespace smallover {

  //! A^k ∪ A^{<k}$, in length-then-byte order of the underlying words.
  //! Throws LimitExceeded if the set would exceed \p cap words.
  inline std::vector<word_type> window_set(Presentation const& p,
                                           std::size_t         k,
                                           std::size_t cap = 5'000'000) {
    std::size_t total = 0, layer = 1;
    for (std::size_t n = 0; n <= k; ++n) {
      total += layer;
      if (total > cap) {
        throw LimitExceeded("window set exceeds " + std::to_string(cap)
                            + " words");
      }
      layer *= p.alphabet().size();
    }
    std::vector<word_type> out;
    for (auto& w : words_up_to(p.alphabet(), k)) {
      if (w.size() < k) {
        out.push_back(w + end_marker);
      } else {
        out.push_back(std::move(w));
      }
    }
    if (k == 0) {
      // With no lookahead the only window is the bare end-marker.
      out = {word_type(1, end_marker)};
    }
    return out;
  }

  enum class WpEdgeKind { A, B, C1, C2, C3, C4, C5, C6, C7, C8, C9 };

  inline std::string_view to_string(WpEdgeKind k) noexcept {
    constexpr std::array<std::string_view, 11> names{
        "A", "B", "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9"};
    return names[static_cast<std::size_t>(k)];
  }

  //! The prefix-rewriting automaton solving the word problem: states are
  //! the pieces plus a terminal state '+', the window is twice the longest
  //! relation word, and edges are computed from (state, window, window) by
  //! rule rather than stored.
  class WpAutomaton {
   public:
    explicit WpAutomaton(Presentation p) : _t(std::move(p)) {
      if (auto w = small_overlap_witness(_t, 4)) {
        throw PreconditionFailed(
            "presentation is not C(4): relation word "
            + show(w->relation_word) + " is a product of "
            + std::to_string(w->pieces.size()) + " piece(s)");
      }
      _k = 2 * _t.presentation().max_relation_length();
      _pieces.assign(_t.pieces().begin(), _t.pieces().end());
      _plus = static_cast<automata::pra_state>(_pieces.size());
    }

    Presentation const& presentation() const noexcept {
      return _t.presentation();
    }

    PieceTable const& piece_table() const noexcept {
      return _t;
    }

    std::size_t window() const noexcept {
      return _k;
    }

    std::string const& alphabet1() const noexcept {
      return presentation().alphabet();
    }

    std::string const& alphabet2() const noexcept {
      return presentation().alphabet();
    }

    std::size_t number_of_states() const noexcept {
      return _pieces.size() + 1;
    }

    //! The piece a state stands for; the terminal state has none.
    std::optional<word_type> piece(automata::pra_state q) const {
      if (q >= _plus) {
        return std::nullopt;
      }
      return _pieces[q];
    }

    automata::pra_state state_of(std::string_view piece) const {
      auto it = std::lower_bound(_pieces.begin(), _pieces.end(), piece);
      if (it == _pieces.end() || *it != piece) {
        throw InvalidArgument(show(piece) + " is not a piece");
      }
      return static_cast<automata::pra_state>(it - _pieces.begin());
    }

    std::string state_name(automata::pra_state q) const {
      return q == _plus ? std::string("+") : show(_pieces.at(q));
    }

    automata::pra_state initial() const noexcept {
      return 0;  // ε sorts first
    }

    automata::pra_state terminal_state() const noexcept {
      return _plus;
    }

    bool is_terminal(automata::pra_state q) const noexcept {
      return q == _plus;
    }

    //! The window of W that a tape view begins with.
    std::string_view window_of(std::string_view view) const {
      bool        marked  = ends_with_marker(view);
      std::size_t letters = view.size() - (marked ? 1 : 0);
      return marked && letters < _k ? view : view.substr(0, _k);
    }

    //! The unique edge from q with read components (uw, vw), for windows
    //! uw, vw ∈ W, together with its type.
    std::optional<std::pair<WpEdgeKind, automata::PraEdge>>
    edge(automata::pra_state q, std::string_view uw, std::string_view vw) const {
      using automata::PraEdge;
      if (q == _plus) {
        return std::nullopt;
      }
      word_type const& p      = _pieces.at(q);
      bool const       u_end  = ends_with_marker(uw);
      bool const       v_end  = ends_with_marker(vw);
      std::string_view u      = strip_marker(uw);
      std::string_view v      = strip_marker(vw);
      auto             result = [&](WpEdgeKind        kind,
                        word_type         x2,
                        word_type         y2,
                        std::string_view  target) {
        if (u_end) {
          x2 += end_marker;
        }
        if (v_end) {
          y2 += end_marker;
        }
        return std::pair{kind,
                         PraEdge{q,
                                 word_type(uw),
                                 std::move(x2),
                                 word_type(vw),
                                 std::move(y2),
                                 state_of(target)}};
      };

      if (u_end && v_end && u.empty() && v.empty()) {
        if (!p.empty()) {
          return std::nullopt;
        }
        return std::pair{WpEdgeKind::A,
                         PraEdge{q, word_type(uw), word_type(uw),
                                 word_type(vw), word_type(vw), _plus}};
      }
      if (u.empty() || v.empty()) {
        return std::nullopt;
      }

      auto match = find_clean_overlap_prefix(u, _t);
      if (!match) {
        if (u[0] != v[0] || (!p.empty() && p[0] != u[0])) {
          return std::nullopt;
        }
        return result(WpEdgeKind::B,
                      word_type(u.substr(1)),
                      word_type(v.substr(1)),
                      p.empty() ? std::string_view() : std::string_view(p).substr(1));
      }

      Factorization const& f  = *match->factorization;
      Factorization const& fb = _t.complement_of(f);
      bool const p_in_x  = detail::begins_with(f.prefix, p);
      bool const p_in_xb = detail::begins_with(fb.prefix, p);
      if (!p_in_x && !p_in_xb) {
        return std::nullopt;
      }
      word_type const& r   = f.relation_word;
      word_type const& rb  = fb.relation_word;
      word_type const  xy  = f.prefix_middle();
      word_type const  xyb = fb.prefix_middle();
      word_type const& z   = f.suffix;
      word_type const& zb  = fb.suffix;
      auto begins = [](std::string_view w, std::string_view s) {
        return w.substr(0, s.size()) == s;
      };
      bool const u_r   = begins(u, r);
      bool const v_r   = begins(v, r);
      bool const v_xy  = begins(v, xy);
      bool const v_rb  = begins(v, rb);
      bool const v_xyb = begins(v, xyb);
      std::string_view const u_after_r   = u_r ? u.substr(r.size()) : "";
      std::string_view const u_after_xy  = u.substr(xy.size());
      std::string_view const v_after_xy  = v_xy ? v.substr(xy.size()) : "";
      std::string_view const v_after_r   = v_r ? v.substr(r.size()) : "";
      std::string_view const v_after_rb  = v_rb ? v.substr(rb.size()) : "";
      std::string_view const v_after_xyb = v_xyb ? v.substr(xyb.size()) : "";
      bool const active
          = u_r && detail::has_early_relation_prefix(z, u_after_r, _t);

      word_type const  zc = detail::common_suffix(z, zb);
      std::string_view z1 = std::string_view(z).substr(0, z.size() - zc.size());
      std::string_view z2
          = std::string_view(zb).substr(0, zb.size() - zc.size());

      // Every guard is evaluated; at most one may hold.
      std::array<bool, 9> guard{
          u_r && v_r && active,
          u_r && v_r && !active,
          v_xy && !(u_r && v_r) && p_in_x,
          v_xy && !(u_r && v_r) && !p_in_x,
          u_r && v_rb && active,
          u_r && v_rb && !active,
          v_rb && !u_r,
          u_r && v_xyb && !v_rb,
          v_xyb && !u_r && !v_rb && begins(u_after_xy, z1)
              && begins(v_after_xyb, z2)};
      int which = -1;
      for (int i = 0; i < 9; ++i) {
        if (guard[i]) {
          if (which != -1) {
            throw NondeterminismError(
                "edge guards C" + std::to_string(which + 1) + " and C"
                + std::to_string(i + 1) + " both hold in state "
                + state_name(q) + " on (" + word_type(uw) + ", "
                + word_type(vw) + ")");
          }
          which = i;
        }
      }
      auto cat = [](std::string_view a, std::string_view b) {
        word_type w(a);
        w += b;
        return w;
      };
      switch (which) {
        case 0:
          return result(WpEdgeKind::C1, cat(z, u_after_r), cat(z, v_after_r), "");
        case 1:
          return result(
              WpEdgeKind::C2, cat(zb, u_after_r), cat(zb, v_after_r), "");
        case 2:
          return result(WpEdgeKind::C3,
                        word_type(u_after_xy),
                        word_type(v_after_xy),
                        "");
        case 3:
          return result(WpEdgeKind::C4,
                        word_type(u_after_xy),
                        word_type(v_after_xy),
                        z);
        case 4:
          return result(
              WpEdgeKind::C5, cat(z, u_after_r), cat(z, v_after_rb), "");
        case 5:
          return result(
              WpEdgeKind::C6, cat(zb, u_after_r), cat(zb, v_after_rb), "");
        case 6:
          return result(
              WpEdgeKind::C7, word_type(u_after_xy), cat(z, v_after_rb), "");
        case 7:
          return result(WpEdgeKind::C8,
                        cat(zb, u_after_r),
                        word_type(v_after_xyb),
                        "");
        case 8:
          return result(WpEdgeKind::C9,
                        word_type(u_after_xy.substr(z1.size())),
                        word_type(v_after_xyb.substr(z2.size())),
                        zc);
        default:
          return std::nullopt;
      }
    }

    std::vector<automata::PraEdge> applicable(automata::pra_state q,
                                              std::string_view    t1,
                                              std::string_view    t2) const {
      std::vector<automata::PraEdge> out;
      if (auto e = edge(q, window_of(t1), window_of(t2))) {
        out.push_back(std::move(e->second));
      }
      return out;
    }

    //! Every edge, stored explicitly. Throws LimitExceeded if more than
    //! \p cap (state, window, window) triples would have to be examined.
    automata::PrefixRewritingAutomaton
    materialize(std::size_t cap = 10'000'000) const {
      auto windows = window_set(presentation(), _k, cap);
      if (windows.size() * windows.size() * _pieces.size() > cap) {
        throw LimitExceeded("materializing the word-problem automaton needs "
                            "more than "
                            + std::to_string(cap) + " guard evaluations");
      }
      automata::PrefixRewritingAutomaton m(_k, alphabet1(), alphabet2());
      for (std::size_t q = 0; q < number_of_states(); ++q) {
        m.add_state(state_name(static_cast<automata::pra_state>(q)));
      }
      m.set_initial(initial());
      m.set_terminal(_plus);
      for (std::size_t q = 0; q < _pieces.size(); ++q) {
        for (auto const& uw : windows) {
          for (auto const& vw : windows) {
            if (auto e = edge(static_cast<automata::pra_state>(q), uw, vw)) {
              m.add_edge(std::move(e->second));
            }
          }
        }
      }
      return m;
    }

   private:
    PieceTable             _t;
    std::size_t            _k;
    std::vector<word_type> _pieces;
    automata::pra_state    _plus;
  };

  using WpTransducer = automata::BufferedTransducer<WpAutomaton>;
  using WpTwoTape    = automata::TwoTapeView<WpTransducer>;

  //! The three machines for one presentation. k is the window, b the
  //! expansion bound (the longest relation word).
  struct WpMachineBundle {
    Presentation                       presentation;
    std::size_t                        k;
    std::size_t                        b;
    std::shared_ptr<WpAutomaton const>  pra;
    std::shared_ptr<WpTransducer const> transducer;
    std::shared_ptr<WpTwoTape const>    two_tape;

    //! u ≡ v, decided by the 2-tape automaton.
    bool accepts(std::string_view u, std::string_view v) const {
      presentation.validate_word(u);
      presentation.validate_word(v);
      return automata::two_tape_accepts(*two_tape, u, v);
    }
  };

  inline std::shared_ptr<WpAutomaton const> build_wp_pra(Presentation p) {
    return std::make_shared<WpAutomaton const>(std::move(p));
  }

  inline WpMachineBundle compile_word_problem(Presentation p) {
    auto        pra = build_wp_pra(p);
    std::size_t b   = p.max_relation_length();
    auto        t   = std::make_shared<WpTransducer const>(pra, b);
    auto        d   = std::make_shared<WpTwoTape const>(*t);
    std::size_t k   = pra->window();
    return {std::move(p), k, b, std::move(pra), std::move(t), std::move(d)};
  }

  //! The presentation with every relation word written backwards.
  inline Presentation reverse_presentation(Presentation const& p) {
    std::vector<Relation> rs;
    for (auto const& r : p.relations()) {
      rs.push_back({reversed(r.lhs), reversed(r.rhs)});
    }
    return Presentation(p.alphabet(), std::move(rs), p.mode());
  }

  //! Machines for the reversed presentation; they accept (u^R, v^R)
  //! exactly when u ≡ v in \p p.
  inline WpMachineBundle reverse_word_problem_machine(Presentation const& p) {
    return compile_word_problem(reverse_presentation(p));
  }

  //! The word-problem relation of a semigroup presentation: the monoid
  //! relation without (ε, ε).
  class SemigroupRelationView {
   public:
    explicit SemigroupRelationView(std::shared_ptr<WpMachineBundle const> b)
        : _b(std::move(b)) {
      if (_b->presentation.mode() != Mode::semigroup) {
        throw InvalidArgument("semigroup view needs a semigroup presentation");
      }
    }

    bool accepts(std::string_view u, std::string_view v) const {
      if (u.empty() && v.empty()) {
        return false;
      }
      if (u.empty() || v.empty()) {
        throw InvalidArgument(
            "the empty word is not an element of a semigroup presentation");
      }
      return _b->accepts(u, v);
    }

   private:
    std::shared_ptr<WpMachineBundle const> _b;
  };

}  // namespace smallover

#endif  // SMALLOVER_WP_COMPILER_HPP_
