// Brute-force oracles. Each one re-derives a quantity directly from its
// definition, without calling the library routine it is used to check.

#ifndef SMALLOVER_TESTS_ORACLES_HPP_
#define SMALLOVER_TESTS_ORACLES_HPP_

#include <algorithm>
#include <climits>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "smallover/presentation.hpp"

namespace smallover::test::oracle {

  // Number of (relation word, position) locations at which f occurs.
  inline std::size_t occurrences(Presentation const& p, std::string const& f) {
    std::size_t n = 0;
    for (auto const& w : p.relation_words()) {
      for (std::size_t i = 0; i + f.size() <= w.size(); ++i) {
        bool eq = true;
        for (std::size_t j = 0; j < f.size(); ++j) {
          eq = eq && w[i + j] == f[j];
        }
        n += eq ? 1 : 0;
      }
    }
    return n;
  }

  // Pieces by enumerating every candidate word over the alphabet.
  inline std::set<std::string> pieces(Presentation const& p) {
    std::set<std::string> out{""};
    std::vector<std::string> level{""};
    for (std::size_t len = 1; len <= p.max_relation_length(); ++len) {
      std::vector<std::string> next;
      for (auto const& w : level) {
        for (char a : p.alphabet()) {
          next.push_back(w + a);
        }
      }
      for (auto const& w : next) {
        if (occurrences(p, w) >= 2) {
          out.insert(w);
        }
      }
      level = std::move(next);
    }
    return out;
  }

  // Fewest pieces whose product is w, by trying every split point.
  inline std::optional<std::size_t>
  min_pieces(std::string const& w, std::set<std::string> const& pc) {
    std::vector<std::size_t> best(w.size() + 1, SIZE_MAX);
    best[0] = 0;
    for (std::size_t j = 1; j <= w.size(); ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        if (best[i] != SIZE_MAX && pc.count(w.substr(i, j - i))) {
          best[j] = std::min(best[j], best[i] + 1);
        }
      }
    }
    if (best[w.size()] == SIZE_MAX) {
      return std::nullopt;
    }
    return best[w.size()];
  }

  struct Xyz {
    std::string x, y, z;
  };

  inline Xyz factor(std::string const& r, std::set<std::string> const& pc) {
    std::size_t xl = 0, zl = 0;
    for (std::size_t i = 0; i <= r.size(); ++i) {
      if (pc.count(r.substr(0, i))) {
        xl = i;
      }
      if (pc.count(r.substr(r.size() - i))) {
        zl = i;
      }
    }
    return {r.substr(0, xl), r.substr(xl, r.size() - xl - zl),
            r.substr(r.size() - zl)};
  }

  // Relation words whose X Y is a prefix of u.
  inline std::vector<std::string> xy_prefix_words(Presentation const& p,
                                                  std::string const&  u) {
    auto                     pc = pieces(p);
    std::vector<std::string> out;
    for (auto const& r : p.relation_words()) {
      auto f = factor(r, pc);
      auto xy = f.x + f.y;
      if (!xy.empty() && u.rfind(xy, 0) == 0) {
        out.push_back(r);
      }
    }
    return out;
  }

  // The relation word whose X Y is a clean overlap prefix of u: X Y is a
  // prefix and no X0 Y0 starts at a position strictly inside Y.
  inline std::optional<std::string> clean_prefix_word(Presentation const& p,
                                                      std::string const&  u) {
    auto pc    = pieces(p);
    auto found = xy_prefix_words(p, u);
    if (found.empty()) {
      return std::nullopt;
    }
    auto f = factor(found.front(), pc);
    for (std::size_t j = f.x.size() + 1; j < f.x.size() + f.y.size(); ++j) {
      for (auto const& r : p.relation_words()) {
        auto g  = factor(r, pc);
        auto xy = g.x + g.y;
        if (!xy.empty() && u.size() >= j + xy.size()
            && u.compare(j, xy.size(), xy) == 0) {
          return std::nullopt;
        }
      }
    }
    return found.front();
  }

  // Some X Y occurs in q u at a position < |q|.
  inline bool active(Presentation const& p,
                     std::string const&  q,
                     std::string const&  u) {
    auto pc = pieces(p);
    auto qu = q + u;
    for (std::size_t j = 0; j < q.size(); ++j) {
      for (auto const& r : p.relation_words()) {
        auto f  = factor(r, pc);
        auto xy = f.x + f.y;
        if (!xy.empty() && qu.compare(j, xy.size(), xy) == 0
            && j + xy.size() <= qu.size()) {
          return true;
        }
      }
    }
    return false;
  }

  // Equivalence class by rewriting every relation word at every position.
  inline std::set<std::string> bfs_class(Presentation const& p,
                                         std::string const&  w) {
    std::set<std::string>    seen{w};
    std::vector<std::string> stack{w};
    while (!stack.empty()) {
      auto cur = stack.back();
      stack.pop_back();
      for (auto const& rel : p.relations()) {
        for (int side = 0; side < 2; ++side) {
          auto const& a = side ? rel.rhs : rel.lhs;
          auto const& b = side ? rel.lhs : rel.rhs;
          for (std::size_t i = 0; i + a.size() <= cur.size(); ++i) {
            if (cur.compare(i, a.size(), a) == 0) {
              auto n = cur.substr(0, i) + b + cur.substr(i + a.size());
              if (seen.insert(n).second) {
                stack.push_back(n);
              }
            }
          }
        }
      }
    }
    return seen;
  }

  // All words up to length n, generated independently of the library.
  inline std::vector<std::string> all_words(std::string const& alphabet,
                                            std::size_t        n) {
    std::vector<std::string> out{""};
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].size() < n) {
        for (char a : alphabet) {
          out.push_back(out[i] + a);
        }
      }
    }
    return out;
  }

}  // namespace smallover::test::oracle

#endif  // SMALLOVER_TESTS_ORACLES_HPP_
