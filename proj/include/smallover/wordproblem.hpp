// The word problem for C(4) presentations: the WP-Prefix procedure, a
// breadth-first class enumeration over one-step rewriting (used as an
// oracle and for normal forms), and lexicographic normal forms.

#ifndef SMALLOVER_WORDPROBLEM_HPP_
#define SMALLOVER_WORDPROBLEM_HPP_

#include <cstddef>      // for size_t
#include <deque>        // for deque
#include <set>          // for set
#include <string>       // for string
#include <string_view>  // for string_view
#include <utility>      // for move

#include "smallover/errors.hpp"
#include "smallover/presentation.hpp"
#include "smallover/word.hpp"

namespace smallover {

  enum class Verdict { no, yes };

  inline std::string_view to_string(Verdict v) noexcept {
    return v == Verdict::yes ? "YES" : "NO";
  }

  //! Arguments of WP-Prefix: two words and a piece constraining their
  //! common prefix.
  struct WpQuery {
    word_type u;
    word_type v;
    word_type p;
  };

  struct EquivClass {
    word_type           representative;
    std::set<word_type> members;
  };

  inline constexpr std::size_t default_class_cap = 1'000'000;

  ////////////////////////////////////////////////////////////////////////
  // One-step rewriting
  ////////////////////////////////////////////////////////////////////////

  //! Every word obtained from \p w by replacing one occurrence of a relation
  //! word by its partner.
  inline std::set<word_type> one_step_neighbors(Presentation const& p,
                                                std::string_view    w) {
    std::set<word_type> out;
    for (auto const& r : p.relations()) {
      for (auto const& [from, to] : {std::pair{&r.lhs, &r.rhs},
                                     std::pair{&r.rhs, &r.lhs}}) {
        if (from->empty()) {
          // ε occurs at every position.
          for (std::size_t i = 0; i <= w.size(); ++i) {
            word_type n(w.substr(0, i));
            n += *to;
            n += w.substr(i);
            out.insert(std::move(n));
          }
          continue;
        }
        for (auto i = w.find(*from); i != std::string_view::npos;
             i      = w.find(*from, i + 1)) {
          word_type n(w.substr(0, i));
          n += *to;
          n += w.substr(i + from->size());
          out.insert(std::move(n));
        }
      }
    }
    return out;
  }

  namespace detail {
    inline void reject_empty_in_semigroup(Presentation const& p,
                                          std::string_view    w) {
      if (p.mode() == Mode::semigroup && w.empty()) {
        throw InvalidArgument(
            "the empty word is not an element of a semigroup presentation");
      }
    }
  }  // namespace detail

  //! Breadth-first closure of {w} under one-step equivalence. Classes are
  //! finite for C(3) presentations; \p cap bounds the search otherwise.
  inline EquivClass enumerate_class(Presentation const& p,
                                    std::string_view    w,
                                    LetterOrder const&  order,
                                    std::size_t cap = default_class_cap) {
    p.validate_word(w);
    detail::reject_empty_in_semigroup(p, w);
    EquivClass             cls;
    std::deque<word_type>  queue{word_type(w)};
    cls.members.insert(word_type(w));
    while (!queue.empty()) {
      word_type next = std::move(queue.front());
      queue.pop_front();
      for (auto& n : one_step_neighbors(p, next)) {
        if (cls.members.insert(n).second) {
          if (cls.members.size() > cap) {
            throw LimitExceeded("class of " + show(w) + " exceeds "
                                + std::to_string(cap)
                                + " members (is the presentation C(3)?)");
          }
          queue.push_back(std::move(n));
        }
      }
    }
    cls.representative = *cls.members.begin();
    for (auto const& m : cls.members) {
      if (lex_compare(m, cls.representative, order) < 0) {
        cls.representative = m;
      }
    }
    return cls;
  }

  inline EquivClass enumerate_class(Presentation const& p,
                                    std::string_view    w,
                                    std::size_t cap = default_class_cap) {
    return enumerate_class(p, w, LetterOrder(p.alphabet()), cap);
  }

  //! The lexicographically least word equivalent to \p w.
  inline word_type normal_form(Presentation const& p,
                               std::string_view    w,
                               LetterOrder const&  order,
                               std::size_t         cap = default_class_cap) {
    if (!order.is_permutation_of(p.alphabet())) {
      throw InvalidArgument("letter order must be a permutation of the "
                            "alphabet");
    }
    return enumerate_class(p, w, order, cap).representative;
  }

  inline word_type normal_form(Presentation const& p,
                               std::string_view    w,
                               std::size_t         cap = default_class_cap) {
    return normal_form(p, w, LetterOrder(p.alphabet()), cap);
  }

  ////////////////////////////////////////////////////////////////////////
  // WP-Prefix
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    // A word held as a short mutable head followed by an immutable view of
    // the caller's input. Every step of WP-Prefix removes a prefix and may
    // prepend a short suffix of a relation word, so the head stays bounded
    // by the longest relation word and each step costs O(1) in |input|.
    class WordCursor {
     public:
      explicit WordCursor(std::string_view w) : _tail(w) {}

      bool empty() const noexcept {
        return _head.empty() && _tail.empty();
      }

      char front() const noexcept {
        return _head.empty() ? _tail.front() : _head.front();
      }

      std::size_t size() const noexcept {
        return _head.size() + _tail.size();
      }

      bool starts_with(std::string_view s) const {
        if (s.size() > size()) {
          return false;
        }
        std::size_t h = std::min(s.size(), _head.size());
        return _head.compare(0, h, s.substr(0, h)) == 0
               && _tail.compare(0, s.size() - h, s.substr(h)) == 0;
      }

      void drop(std::size_t n) {
        if (n <= _head.size()) {
          _head.erase(0, n);
        } else {
          _tail.remove_prefix(n - _head.size());
          _head.clear();
        }
      }

      void prepend(std::string_view s) {
        _head.insert(0, s);
      }

      word_type peek(std::size_t n) const {
        word_type out = _head.substr(0, n);
        if (out.size() < n) {
          out.append(_tail.substr(0, n - out.size()));
        }
        return out;
      }

     private:
      word_type        _head;
      std::string_view _tail;
    };

    inline word_type common_suffix(std::string_view a, std::string_view b) {
      std::size_t n = 0;
      while (n < a.size() && n < b.size()
             && a[a.size() - 1 - n] == b[b.size() - 1 - n]) {
        ++n;
      }
      return word_type(a.substr(a.size() - n));
    }

    inline bool begins_with(std::string_view w, std::string_view prefix) {
      return w.substr(0, prefix.size()) == prefix;
    }
  }  // namespace detail

  //! WP-Prefix(u, v, p) for a C(4) presentation whose piece table is \p t.
  //! With p = ε the answer is YES exactly when u and v are equivalent.
  //! The recursion is tail-recursive and runs as a loop; |u| + |v|
  //! strictly decreases on every iteration.
  inline Verdict wp_prefix(PieceTable const& t,
                           std::string_view  u_in,
                           std::string_view  v_in,
                           std::string_view  p_in) {
    if (!t.is_piece(p_in)) {
      throw InvalidArgument("wp_prefix: " + show(p_in) + " is not a piece");
    }
    // Letters needed to decide cleanliness and activity exactly.
    std::size_t const   window = 2 * t.presentation().max_relation_length();
    detail::WordCursor  u(u_in), v(v_in);
    word_type           p(p_in);

    while (true) {
      if (u.empty() || v.empty()) {
        return u.empty() && v.empty() && p.empty() ? Verdict::yes
                                                   : Verdict::no;
      }
      word_type u_head = u.peek(window);
      auto      match  = find_clean_overlap_prefix(u_head, t);
      if (!match) {
        if (u.front() != v.front()) {
          return Verdict::no;
        }
        if (!p.empty() && u.front() != p.front()) {
          return Verdict::no;
        }
        u.drop(1);
        v.drop(1);
        if (!p.empty()) {
          p.erase(0, 1);
        }
        continue;
      }

      Factorization const& f   = *match->factorization;
      Factorization const& fb  = t.complement_of(f);
      word_type const      xy  = f.prefix_middle();
      word_type const      xyb = fb.prefix_middle();

      if (!detail::begins_with(f.prefix, p)
          && !detail::begins_with(fb.prefix, p)) {
        return Verdict::no;
      }
      if (!v.starts_with(xy) && !v.starts_with(xyb)) {
        return Verdict::no;
      }

      bool const u_full  = u.starts_with(f.relation_word);
      bool const v_full  = v.starts_with(f.relation_word);
      bool const v_xy    = v.starts_with(xy);
      bool const vb_full = v.starts_with(fb.relation_word);

      // Prepend Z to both words if the rest of u is Z-active, else Z̄.
      auto restore_suffix = [&]() {
        bool active
            = detail::has_early_relation_prefix(f.suffix, u.peek(window), t);
        word_type const& z = active ? f.suffix : fb.suffix;
        u.prepend(z);
        v.prepend(z);
        p.clear();
      };

      if (u_full && v_full) {
        u.drop(f.relation_word.size());
        v.drop(f.relation_word.size());
        restore_suffix();
      } else if (v_xy) {
        u.drop(xy.size());
        v.drop(xy.size());
        p = detail::begins_with(f.prefix, p) ? word_type() : f.suffix;
      } else if (u_full && vb_full) {
        u.drop(f.relation_word.size());
        v.drop(fb.relation_word.size());
        restore_suffix();
      } else if (vb_full) {
        u.drop(xy.size());
        v.drop(fb.relation_word.size());
        v.prepend(f.suffix);
        p.clear();
      } else if (u_full) {
        u.drop(f.relation_word.size());
        u.prepend(fb.suffix);
        v.drop(xyb.size());
        p.clear();
      } else {
        word_type z  = detail::common_suffix(f.suffix, fb.suffix);
        auto      z1 = std::string_view(f.suffix).substr(
            0, f.suffix.size() - z.size());
        auto z2 = std::string_view(fb.suffix).substr(
            0, fb.suffix.size() - z.size());
        u.drop(xy.size());
        v.drop(xyb.size());
        if (!u.starts_with(z1) || !v.starts_with(z2)) {
          return Verdict::no;
        }
        u.drop(z1.size());
        v.drop(z2.size());
        p = std::move(z);
      }
    }
  }

  inline Verdict wp_prefix(PieceTable const& t, WpQuery const& q) {
    return wp_prefix(t, q.u, q.v, q.p);
  }

  //! Decides the word problem of a C(4) presentation with WP-Prefix.
  class WordProblemSolver {
   public:
    explicit WordProblemSolver(Presentation p) : _pieces(std::move(p)) {
      if (auto w = small_overlap_witness(_pieces, 4)) {
        throw PreconditionFailed(
            "presentation is not C(4): relation word "
            + show(w->relation_word) + " is a product of "
            + std::to_string(w->pieces.size()) + " piece(s)");
      }
    }

    PieceTable const& pieces() const noexcept {
      return _pieces;
    }

    Presentation const& presentation() const noexcept {
      return _pieces.presentation();
    }

    Verdict wp_prefix(WpQuery const& q) const {
      presentation().validate_word(q.u);
      presentation().validate_word(q.v);
      return smallover::wp_prefix(_pieces, q);
    }

    //! u ≡ v. In semigroup mode both words must be non-empty.
    bool equiv(std::string_view u, std::string_view v) const {
      presentation().validate_word(u);
      presentation().validate_word(v);
      detail::reject_empty_in_semigroup(presentation(), u);
      detail::reject_empty_in_semigroup(presentation(), v);
      return smallover::wp_prefix(_pieces, u, v, {}) == Verdict::yes;
    }

   private:
    PieceTable _pieces;
  };

}  // namespace smallover

#endif  // SMALLOVER_WORDPROBLEM_HPP_
