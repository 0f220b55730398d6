// Rational subsets of a C(4) monoid. A subset is represented by the
// language of all words representing its elements (a union of
// equivalence classes); such languages are regular, computable as the
// image of a regular language under the word-problem transducer, and
// closed under the boolean operations.

#ifndef SMALLOVER_SUBSETS_HPP_
#define SMALLOVER_SUBSETS_HPP_

#include <cstddef>      // for size_t
#include <memory>       // for shared_ptr
#include <string>       // for string
#include <string_view>  // for string_view
#include <utility>      // for move

#include "smallover/automata/nfa.hpp"
#include "smallover/automata/transducer.hpp"
#include "smallover/errors.hpp"
#include "smallover/presentation.hpp"
#include "smallover/word.hpp"
#include "smallover/wp_compiler.hpp"

namespace smallover {

  ////////////////////////////////////////////////////////////////////////
  // Pattern expressions
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    // expr := term ('|' term)*     term := factor*
    // factor := atom ('*' | '+')*  atom := letter | '(' expr ')'
    class PatternParser {
     public:
      PatternParser(std::string_view text, std::string alphabet)
          : _text(text), _alphabet(std::move(alphabet)) {}

      automata::Nfa parse() {
        auto n = expr();
        skip();
        if (_pos != _text.size()) {
          fail("unexpected '" + std::string(1, _text[_pos]) + "'");
        }
        return n;
      }

     private:
      void skip() {
        while (_pos < _text.size()
               && (_text[_pos] == ' ' || _text[_pos] == '\t')) {
          ++_pos;
        }
      }

      bool peek(char c) {
        skip();
        return _pos < _text.size() && _text[_pos] == c;
      }

      [[noreturn]] void fail(std::string const& what) const {
        throw ParseError("pattern, column " + std::to_string(_pos + 1) + ": "
                         + what);
      }

      automata::Nfa expr() {
        auto n = term();
        while (peek('|')) {
          ++_pos;
          n = automata::nfa_union(n, term());
        }
        return n;
      }

      automata::Nfa term() {
        auto n = automata::single_word(_alphabet, "");
        while (true) {
          skip();
          if (_pos == _text.size() || _text[_pos] == '|'
              || _text[_pos] == ')') {
            return n;
          }
          n = automata::nfa_concat(n, factor());
        }
      }

      automata::Nfa factor() {
        auto n = atom();
        while (true) {
          if (peek('*')) {
            ++_pos;
            n = automata::nfa_star(n);
          } else if (peek('+')) {
            ++_pos;
            n = automata::nfa_concat(n, automata::nfa_star(n));
          } else {
            return n;
          }
        }
      }

      automata::Nfa atom() {
        skip();
        char c = _text[_pos];
        if (c == '(') {
          ++_pos;
          auto n = expr();
          if (!peek(')')) {
            fail("missing ')'");
          }
          ++_pos;
          return n;
        }
        if (_alphabet.find(c) == std::string::npos) {
          fail("'" + std::string(1, c) + "' is not a letter of the alphabet");
        }
        ++_pos;
        return automata::single_word(_alphabet, std::string(1, c));
      }

      std::string_view _text;
      std::string      _alphabet;
      std::size_t      _pos = 0;
    };
  }  // namespace detail

  //! Nfa for a pattern over \p alphabet: letters, concatenation, '|', '*',
  //! '+' and parentheses; "()" (or an empty alternative) denotes ε.
  inline automata::Nfa parse_pattern(std::string_view text,
                                     std::string      alphabet) {
    return detail::PatternParser(text, std::move(alphabet)).parse();
  }

  ////////////////////////////////////////////////////////////////////////
  // Closed languages
  ////////////////////////////////////////////////////////////////////////

  //! A regular language that is a union of equivalence classes, held as a
  //! minimal DFA.
  class ClosedLanguage {
   public:
    automata::Nfa const& nfa() const noexcept {
      return _nfa;
    }

    std::shared_ptr<WpMachineBundle const> const& bundle() const noexcept {
      return _bundle;
    }

    Presentation const& presentation() const noexcept {
      return _bundle->presentation;
    }

    bool contains(std::string_view w) const {
      presentation().validate_word(w);
      return automata::nfa_membership(_nfa, w);
    }

   private:
    friend ClosedLanguage closure(std::shared_ptr<WpMachineBundle const>,
                                  automata::Nfa const&,
                                  std::size_t);
    friend ClosedLanguage subset_intersect(ClosedLanguage const&,
                                           ClosedLanguage const&);
    friend ClosedLanguage subset_union(ClosedLanguage const&,
                                       ClosedLanguage const&);
    friend ClosedLanguage subset_complement(ClosedLanguage const&);

    ClosedLanguage(std::shared_ptr<WpMachineBundle const> b, automata::Nfa n)
        : _bundle(std::move(b)),
          _nfa(automata::canonical(n, _bundle->presentation.alphabet())) {}

    std::shared_ptr<WpMachineBundle const> _bundle;
    automata::Nfa                          _nfa;
  };

  inline constexpr std::size_t default_image_cap = 5'000'000;

  //! { v : v ≡ u for some u ∈ L(l) }, as the image of l under the
  //! word-problem transducer.
  inline ClosedLanguage closure(std::shared_ptr<WpMachineBundle const> b,
                                automata::Nfa const&                   l,
                                std::size_t cap = default_image_cap) {
    for (char c : l.alphabet()) {
      if (!b->presentation.contains_letter(c)) {
        throw InvalidArgument(std::string("language letter '") + c
                              + "' is not in the presentation alphabet");
      }
    }
    auto image = automata::transducer_image(
        *b->transducer, automata::append_end_marker(l), cap);
    return ClosedLanguage(b, automata::strip_end_marker(image));
  }

  //! w represents an element of the rational subset given by l.
  inline bool subset_member(std::shared_ptr<WpMachineBundle const> b,
                            std::string_view                       w,
                            automata::Nfa const&                   l) {
    b->presentation.validate_word(w);
    return closure(std::move(b), l).contains(w);
  }

  namespace detail {
    inline void check_same_presentation(ClosedLanguage const& x,
                                        ClosedLanguage const& y) {
      if (!(x.presentation() == y.presentation())) {
        throw InvalidArgument("subsets of different presentations");
      }
    }
  }  // namespace detail

  inline ClosedLanguage subset_intersect(ClosedLanguage const& x,
                                         ClosedLanguage const& y) {
    detail::check_same_presentation(x, y);
    return ClosedLanguage(x.bundle(),
                          automata::nfa_intersection(x.nfa(), y.nfa()));
  }

  inline ClosedLanguage subset_union(ClosedLanguage const& x,
                                     ClosedLanguage const& y) {
    detail::check_same_presentation(x, y);
    return ClosedLanguage(x.bundle(), automata::nfa_union(x.nfa(), y.nfa()));
  }

  //! Relative to A* for monoids and A+ for semigroups.
  inline ClosedLanguage subset_complement(ClosedLanguage const& x) {
    auto const& alphabet = x.presentation().alphabet();
    auto        c        = automata::nfa_complement(x.nfa(), alphabet);
    if (x.presentation().mode() == Mode::semigroup) {
      c = automata::nfa_intersection(
          c, automata::nfa_complement(automata::single_word(alphabet, "")));
    }
    return ClosedLanguage(x.bundle(), std::move(c));
  }

  inline bool subset_equal(ClosedLanguage const& x, ClosedLanguage const& y) {
    detail::check_same_presentation(x, y);
    return automata::nfa_equivalent(x.nfa(), y.nfa());
  }

  inline bool subset_is_empty(ClosedLanguage const& x) {
    return automata::nfa_is_empty(x.nfa());
  }

}  // namespace smallover

#endif  // SMALLOVER_SUBSETS_HPP_
