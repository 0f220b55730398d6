// Words, alphabets, letter orders and the end-marker convention shared by
// every other header in the library.

#ifndef SMALLOVER_WORD_HPP_
#define SMALLOVER_WORD_HPP_

#include <algorithm>    // for reverse, lexicographical_compare
#include <array>        // for array
#include <compare>      // for strong_ordering
#include <cstddef>      // for size_t
#include <string>       // for string
#include <string_view>  // for string_view
#include <vector>       // for vector

#include "smallover/errors.hpp"

namespace smallover {

  //! Words are byte strings; every letter is a single printable character.
  using word_type = std::string;

  //! The end-marker appended to tapes of the two-tape machines.
  inline constexpr char end_marker = '$';

  //! Render a word for diagnostics, with the empty word shown as "ε".
  inline std::string show(std::string_view w) {
    return w.empty() ? std::string("ε") : std::string(w);
  }

  inline word_type reversed(std::string_view w) {
    word_type out(w);
    std::reverse(out.begin(), out.end());
    return out;
  }

  inline bool ends_with_marker(std::string_view w) noexcept {
    return !w.empty() && w.back() == end_marker;
  }

  //! Strip a single trailing end-marker, if there is one.
  inline std::string_view strip_marker(std::string_view w) noexcept {
    return ends_with_marker(w) ? w.substr(0, w.size() - 1) : w;
  }

  //! All words over \p alphabet of length at most \p max_length, shortest
  //! first and in alphabet order within each length.
  inline std::vector<word_type> words_up_to(std::string_view alphabet,
                                            std::size_t      max_length) {
    std::vector<word_type> out{word_type()};
    std::size_t            level_begin = 0;
    for (std::size_t len = 1; len <= max_length; ++len) {
      std::size_t level_end = out.size();
      for (std::size_t i = level_begin; i < level_end; ++i) {
        for (char a : alphabet) {
          out.push_back(out[i] + a);
        }
      }
      level_begin = level_end;
    }
    return out;
  }

  //! A total order on the letters of an alphabet, used by the
  //! lexicographic order on words.
  class LetterOrder {
   public:
    LetterOrder() = default;

    //! \p letters lists the alphabet from smallest to largest.
    explicit LetterOrder(std::string_view letters) : _letters(letters) {
      _rank.fill(unranked);
      for (std::size_t i = 0; i < letters.size(); ++i) {
        auto c = static_cast<unsigned char>(letters[i]);
        if (_rank[c] != unranked) {
          throw InvalidArgument(std::string("letter '") + letters[i]
                                + "' repeated in letter order");
        }
        _rank[c] = static_cast<int>(i);
      }
    }

    std::string const& letters() const noexcept {
      return _letters;
    }

    int rank(char c) const {
      int r = _rank[static_cast<unsigned char>(c)];
      if (r == unranked) {
        throw InvalidArgument(std::string("letter '") + c
                              + "' is not in the letter order");
      }
      return r;
    }

    //! True iff the order ranks exactly the letters of \p alphabet.
    bool is_permutation_of(std::string_view alphabet) const {
      return _letters.size() == alphabet.size()
             && std::is_permutation(
                 _letters.begin(), _letters.end(), alphabet.begin());
    }

   private:
    static constexpr int      unranked = -1;
    std::string               _letters;
    std::array<int, 256>      _rank{};
  };

  //! Lexicographic (dictionary) order: the empty word is smallest, and
  //! otherwise words compare by first differing letter. Not shortlex; the
  //! order is total but has infinite descending chains such as b > ab > aab.
  inline std::strong_ordering lex_compare(std::string_view   u,
                                          std::string_view   v,
                                          LetterOrder const& order) {
    std::size_t n = std::min(u.size(), v.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (u[i] != v[i]) {
        return order.rank(u[i]) <=> order.rank(v[i]);
      }
    }
    return u.size() <=> v.size();
  }

}  // namespace smallover

#endif  // SMALLOVER_WORD_HPP_
