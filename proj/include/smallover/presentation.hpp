// Finite monoid and semigroup presentations, their pieces, and the
// combinatorial predicates used by the word problem algorithm: small
// overlap conditions C(m), the X.Y.Z factorization of each relation word,
// clean overlap prefixes and p-activity.

#ifndef SMALLOVER_PRESENTATION_HPP_
#define SMALLOVER_PRESENTATION_HPP_

#include <algorithm>      // for max, find
#include <cstddef>        // for size_t
#include <fstream>        // for ifstream
#include <map>            // for map
#include <optional>       // for optional
#include <set>            // for set
#include <sstream>        // for ostringstream
#include <string>         // for string
#include <string_view>    // for string_view
#include <unordered_map>  // for unordered_map
#include <utility>        // for move
#include <vector>         // for vector

#include "json.hpp"

#include "smallover/errors.hpp"
#include "smallover/word.hpp"

namespace smallover {

  enum class Mode { monoid, semigroup };

  inline std::string_view to_string(Mode m) noexcept {
    return m == Mode::monoid ? "monoid" : "semigroup";
  }

  struct Relation {
    word_type lhs;
    word_type rhs;

    bool operator==(Relation const&) const = default;
  };

  //! A finite presentation <A | R>. Immutable once constructed; the
  //! constructor enforces every structural invariant.
  class Presentation {
   public:
    Presentation(std::string           alphabet,
                 std::vector<Relation> relations,
                 Mode                  mode = Mode::monoid)
        : _alphabet(std::move(alphabet)),
          _relations(std::move(relations)),
          _mode(mode) {
      validate();
      for (std::size_t i = 0; i < _relations.size(); ++i) {
        _words.push_back(_relations[i].lhs);
        _words.push_back(_relations[i].rhs);
        _complement.emplace(_relations[i].lhs, _relations[i].rhs);
        _complement.emplace(_relations[i].rhs, _relations[i].lhs);
        _max_length = std::max(
            {_max_length, _relations[i].lhs.size(), _relations[i].rhs.size()});
      }
    }

    std::string const& alphabet() const noexcept {
      return _alphabet;
    }

    std::vector<Relation> const& relations() const noexcept {
      return _relations;
    }

    Mode mode() const noexcept {
      return _mode;
    }

    //! Relation words in declaration order: lhs0, rhs0, lhs1, rhs1, ...
    std::vector<word_type> const& relation_words() const noexcept {
      return _words;
    }

    std::size_t max_relation_length() const noexcept {
      return _max_length;
    }

    bool is_relation_word(std::string_view w) const {
      return _complement.find(word_type(w)) != _complement.end();
    }

    //! The partner of a relation word.
    word_type const& complement(std::string_view w) const {
      auto it = _complement.find(word_type(w));
      if (it == _complement.end()) {
        throw InvalidArgument("not a relation word: " + show(w));
      }
      return it->second;
    }

    bool contains_letter(char c) const noexcept {
      return _alphabet.find(c) != std::string::npos;
    }

    //! Throws InvalidArgument unless every letter of \p w is in the alphabet.
    void validate_word(std::string_view w) const {
      for (char c : w) {
        if (!contains_letter(c)) {
          throw InvalidArgument(std::string("letter '") + c
                                + "' is not in the alphabet of the"
                                  " presentation");
        }
      }
    }

    bool operator==(Presentation const& that) const {
      return _alphabet == that._alphabet && _relations == that._relations
             && _mode == that._mode;
    }

   private:
    void validate() const {
      if (_alphabet.empty()) {
        throw InvalidPresentation("the alphabet must be non-empty");
      }
      std::set<char> seen;
      for (char c : _alphabet) {
        if (c == end_marker) {
          throw InvalidPresentation(
              "'$' is reserved as the end-marker and cannot be a letter");
        }
        if (!seen.insert(c).second) {
          throw InvalidPresentation(std::string("duplicate letter '") + c
                                    + "' in alphabet");
        }
      }
      std::set<word_type> words;
      for (auto const& rel : _relations) {
        for (auto const* w : {&rel.lhs, &rel.rhs}) {
          for (char c : *w) {
            if (!seen.count(c)) {
              throw InvalidPresentation(std::string("letter '") + c
                                        + "' of relation word " + show(*w)
                                        + " is not in the alphabet");
            }
          }
          if (_mode == Mode::semigroup && w->empty()) {
            throw InvalidPresentation(
                "empty relation word in a semigroup presentation");
          }
          if (!words.insert(*w).second) {
            throw InvalidPresentation("duplicate relation word " + show(*w));
          }
        }
      }
    }

    std::string                                _alphabet;
    std::vector<Relation>                      _relations;
    Mode                                       _mode;
    std::vector<word_type>                     _words;
    std::unordered_map<word_type, word_type>   _complement;
    std::size_t                                _max_length = 0;
  };

  ////////////////////////////////////////////////////////////////////////
  // Presentation files
  ////////////////////////////////////////////////////////////////////////

  //! Parse the JSON presentation format:
  //! `{"alphabet": ["a","b"], "relations": [["ab","ba"]], "mode": "monoid"}`.
  //! `mode` is optional and defaults to "monoid".
  inline Presentation parse_presentation(std::string_view text) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (nlohmann::json::parse_error const& e) {
      throw ParseError(std::string("presentation: ") + e.what());
    }
    if (!doc.is_object()) {
      throw ParseError("presentation: expected a JSON object");
    }
    if (!doc.contains("alphabet") || !doc["alphabet"].is_array()) {
      throw ParseError("presentation: 'alphabet' must be an array");
    }
    std::string alphabet;
    for (auto const& letter : doc["alphabet"]) {
      if (!letter.is_string() || letter.get<std::string>().size() != 1) {
        throw ParseError(
            "presentation: alphabet entries must be one-character strings");
      }
      alphabet += letter.get<std::string>()[0];
    }
    std::vector<Relation> relations;
    if (doc.contains("relations")) {
      if (!doc["relations"].is_array()) {
        throw ParseError("presentation: 'relations' must be an array");
      }
      for (auto const& rel : doc["relations"]) {
        if (!rel.is_array() || rel.size() != 2 || !rel[0].is_string()
            || !rel[1].is_string()) {
          throw ParseError(
              "presentation: each relation must be a pair of strings");
        }
        relations.push_back(
            {rel[0].get<std::string>(), rel[1].get<std::string>()});
      }
    }
    Mode mode = Mode::monoid;
    if (doc.contains("mode")) {
      auto const& m = doc["mode"];
      if (m == "monoid") {
        mode = Mode::monoid;
      } else if (m == "semigroup") {
        mode = Mode::semigroup;
      } else {
        throw ParseError(
            "presentation: 'mode' must be \"monoid\" or \"semigroup\"");
      }
    }
    return Presentation(std::move(alphabet), std::move(relations), mode);
  }

  inline Presentation load_presentation(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw ParseError("cannot open presentation file " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_presentation(buf.str());
  }

  inline nlohmann::json to_json(Presentation const& p) {
    nlohmann::json doc;
    doc["alphabet"] = nlohmann::json::array();
    for (char c : p.alphabet()) {
      doc["alphabet"].push_back(std::string(1, c));
    }
    doc["relations"] = nlohmann::json::array();
    for (auto const& r : p.relations()) {
      doc["relations"].push_back({r.lhs, r.rhs});
    }
    doc["mode"] = std::string(to_string(p.mode()));
    return doc;
  }

  ////////////////////////////////////////////////////////////////////////
  // Pieces
  ////////////////////////////////////////////////////////////////////////

  //! The decomposition R = X Y Z of a relation word into its maximal piece
  //! prefix X, middle word Y and maximal piece suffix Z.
  struct Factorization {
    word_type relation_word;
    word_type prefix;
    word_type middle;
    word_type suffix;
    word_type complement;

    word_type prefix_middle() const {
      return prefix + middle;
    }
  };

  class PieceTable {
   public:
    explicit PieceTable(Presentation p) : _presentation(std::move(p)) {
      // A location is a (relation word, start index) pair; a factor is a
      // piece when it has two or more locations.
      std::map<word_type, std::size_t> locations;
      auto const&                      words = _presentation.relation_words();
      for (auto const& w : words) {
        for (std::size_t i = 0; i < w.size(); ++i) {
          for (std::size_t j = i + 1; j <= w.size(); ++j) {
            ++locations[w.substr(i, j - i)];
          }
        }
      }
      _pieces.insert(word_type());
      for (auto const& [factor, count] : locations) {
        if (count >= 2) {
          _pieces.insert(factor);
          _max_piece_length = std::max(_max_piece_length, factor.size());
        }
      }
      for (auto const& w : words) {
        Factorization f;
        f.relation_word = w;
        f.complement    = _presentation.complement(w);
        std::size_t x   = longest_piece_prefix(w);
        std::size_t z   = 0;
        for (std::size_t len = std::min(w.size(), _max_piece_length); len > 0;
             --len) {
          if (is_piece(std::string_view(w).substr(w.size() - len))) {
            z = len;
            break;
          }
        }
        f.prefix = w.substr(0, x);
        f.suffix = w.substr(w.size() - z);
        // Prefix and suffix may meet or overlap when C(3) fails; the middle
        // word is then empty and the factorization only partially
        // meaningful.
        f.middle = x + z <= w.size() ? w.substr(x, w.size() - x - z)
                                     : word_type();
        _by_word.emplace(w, _factorizations.size());
        _factorizations.push_back(std::move(f));
      }
    }

    Presentation const& presentation() const noexcept {
      return _presentation;
    }

    std::set<word_type, std::less<>> const& pieces() const noexcept {
      return _pieces;
    }

    bool is_piece(std::string_view w) const {
      return w.size() <= _max_piece_length && _pieces.find(w) != _pieces.end();
    }

    std::size_t max_piece_length() const noexcept {
      return _max_piece_length;
    }

    //! Factorizations in the order of Presentation::relation_words().
    std::vector<Factorization> const& factorizations() const noexcept {
      return _factorizations;
    }

    Factorization const& factorization(std::string_view relation_word) const {
      auto it = _by_word.find(word_type(relation_word));
      if (it == _by_word.end()) {
        throw InvalidArgument("not a relation word: " + show(relation_word));
      }
      return _factorizations[it->second];
    }

    //! Factorization of the partner word: X̄, Ȳ, Z̄ in the usual notation.
    Factorization const& complement_of(Factorization const& f) const {
      return factorization(f.complement);
    }

    std::size_t longest_piece_prefix(std::string_view w) const {
      for (std::size_t len = std::min(w.size(), _max_piece_length); len > 0;
           --len) {
        if (is_piece(w.substr(0, len))) {
          return len;
        }
      }
      return 0;
    }

   private:
    Presentation                            _presentation;
    std::set<word_type, std::less<>>        _pieces;
    std::size_t                             _max_piece_length = 0;
    std::vector<Factorization>              _factorizations;
    std::unordered_map<word_type, std::size_t> _by_word;
  };

  //! Greedy decomposition of \p w into non-empty pieces, taking the longest
  //! piece prefix at each step. Because the set of pieces is closed under
  //! taking factors, greedy uses the fewest pieces possible. Returns nothing
  //! if \p w is not a product of pieces.
  inline std::optional<std::vector<word_type>>
  piece_decomposition(std::string_view w, PieceTable const& t) {
    std::vector<word_type> parts;
    while (!w.empty()) {
      std::size_t len = t.longest_piece_prefix(w);
      if (len == 0) {
        return std::nullopt;
      }
      parts.emplace_back(w.substr(0, len));
      w.remove_prefix(len);
    }
    return parts;
  }

  inline std::optional<std::size_t> min_piece_count(std::string_view  w,
                                                    PieceTable const& t) {
    auto parts = piece_decomposition(w, t);
    if (!parts) {
      return std::nullopt;
    }
    return parts->size();
  }

  //! A relation word written as a product of fewer than m pieces.
  struct SmallOverlapWitness {
    word_type              relation_word;
    std::vector<word_type> pieces;
  };

  //! The first relation word that violates C(m), if any.
  inline std::optional<SmallOverlapWitness>
  small_overlap_witness(PieceTable const& t, std::size_t m) {
    if (m < 1) {
      throw InvalidArgument("C(m) requires m >= 1");
    }
    for (auto const& w : t.presentation().relation_words()) {
      auto parts = piece_decomposition(w, t);
      if (parts && parts->size() < m) {
        return SmallOverlapWitness{w, std::move(*parts)};
      }
    }
    return std::nullopt;
  }

  inline bool check_small_overlap(PieceTable const& t, std::size_t m) {
    return !small_overlap_witness(t, m).has_value();
  }

  inline bool check_small_overlap(Presentation const& p, std::size_t m) {
    return check_small_overlap(PieceTable(p), m);
  }

  ////////////////////////////////////////////////////////////////////////
  // Clean overlap prefixes and activity
  ////////////////////////////////////////////////////////////////////////

  //! u = X Y remainder, where X Y is the maximal piece prefix and middle
  //! word of the relation word recorded in \c factorization.
  struct CleanOverlapMatch {
    Factorization const* factorization;
    std::string_view     remainder;
  };

  namespace detail {
    // Some X_R Y_R is a prefix of w.
    inline bool starts_with_relation_prefix(std::string_view  w,
                                            PieceTable const& t) {
      for (auto const& f : t.factorizations()) {
        std::size_t n = f.prefix.size() + f.middle.size();
        if (n != 0 && n <= w.size() && w.compare(0, f.prefix.size(), f.prefix) == 0
            && w.compare(f.prefix.size(), f.middle.size(), f.middle) == 0) {
          return true;
        }
      }
      return false;
    }
  }  // namespace detail

  //! Finds the clean overlap prefix X Y of \p u, if there is one: X Y is
  //! the maximal piece prefix and middle word of a relation word R, X Y is
  //! a prefix of u, and no X_0 Y_0 of any relation word begins strictly
  //! inside Y (u has no prefix X Y' X_0 Y_0 with Y' a proper non-empty
  //! prefix of Y). Only the first 2 * max_relation_length() letters of u
  //! are inspected.
  //!
  //! Under C(4) at most one relation word has X Y as a prefix of u; two
  //! matches mean the precondition was violated and raise
  //! NondeterminismError.
  inline std::optional<CleanOverlapMatch>
  find_clean_overlap_prefix(std::string_view u, PieceTable const& t) {
    Factorization const* found = nullptr;
    for (auto const& f : t.factorizations()) {
      std::size_t n = f.prefix.size() + f.middle.size();
      if (n == 0 || n > u.size()) {
        continue;
      }
      if (u.compare(0, f.prefix.size(), f.prefix) == 0
          && u.compare(f.prefix.size(), f.middle.size(), f.middle) == 0) {
        if (found != nullptr) {
          throw NondeterminismError(
              "ambiguous clean overlap prefix in " + show(u) + ": "
              + found->relation_word + " and " + f.relation_word
              + " (presentation is not C(4))");
        }
        found = &f;
      }
    }
    if (found == nullptr) {
      return std::nullopt;
    }
    std::size_t const x  = found->prefix.size();
    std::size_t const xy = x + found->middle.size();
    for (std::size_t j = x + 1; j < xy; ++j) {
      if (detail::starts_with_relation_prefix(u.substr(j), t)) {
        return std::nullopt;
      }
    }
    return CleanOverlapMatch{found, u.substr(xy)};
  }

  namespace detail {
    // p u has an occurrence of some X_R Y_R starting at a position < |p|.
    inline bool has_early_relation_prefix(std::string_view  p,
                                          std::string_view  u,
                                          PieceTable const& t) {
      if (p.empty()) {
        return false;
      }
      std::size_t need = p.size() + t.presentation().max_relation_length();
      word_type   pu(p);
      pu.append(u.substr(0, std::min(u.size(), need)));
      std::string_view view(pu);
      for (std::size_t j = 0; j < p.size(); ++j) {
        if (starts_with_relation_prefix(view.substr(j), t)) {
          return true;
        }
      }
      return false;
    }
  }  // namespace detail

  //! True iff \p u is p-active: p u has a relation prefix a X Y with
  //! |a| < |p|. \p p must be a piece.
  inline bool is_p_active(std::string_view  p,
                          std::string_view  u,
                          PieceTable const& t) {
    if (!t.is_piece(p)) {
      throw InvalidArgument("is_p_active: " + show(p) + " is not a piece");
    }
    return detail::has_early_relation_prefix(p, u, t);
  }

}  // namespace smallover

#endif  // SMALLOVER_PRESENTATION_HPP_
