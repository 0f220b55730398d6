// Presentations used throughout the test suites.

#ifndef SMALLOVER_TESTS_FIXTURES_HPP_
#define SMALLOVER_TESTS_FIXTURES_HPP_

#include <string>
#include <vector>

#include "smallover/presentation.hpp"

namespace smallover::test {

  // <a,b,c,d | ab = cd>
  inline Presentation p1(Mode mode = Mode::monoid) {
    return Presentation("abcd", {{"ab", "cd"}}, mode);
  }

  // <a,b,c,d | abcda = adcba>
  inline Presentation p2(Mode mode = Mode::monoid) {
    return Presentation("abcd", {{"abcda", "adcba"}}, mode);
  }

  // <a,b | abba = baab>, not C(3)
  inline Presentation p3() {
    return Presentation("ab", {{"abba", "baab"}});
  }

  // C(4) presentations with Z != Z̄ and pieces of length > 1; these reach
  // the branches of WP-Prefix that P1 and P2 never exercise.
  inline Presentation p4() {
    return Presentation("abc", {{"abcca", "baccc"}});
  }

  inline Presentation p5() {
    return Presentation("abc", {{"bcbaa", "cabbca"}});
  }

  inline Presentation p6() {
    return Presentation("abc", {{"aaabcb", "ccbbca"}});
  }

  // Regular languages over {a,b,c,d}, as patterns. Each is also a valid
  // ECMAScript regular expression with the same meaning, which the tests
  // use as an independent membership reference.
  inline std::vector<std::string> p1_patterns() {
    return {"(ab)*",   "abab",      "a",          "()",
            "c(d|a)*", "(ab|cd)+",  "a*b*",       "(a|b|c|d)*dd",
            "cdb",     "b(cd)*a",   "(ab)*c|d",   "acd*"};
  }

}  // namespace smallover::test

#endif  // SMALLOVER_TESTS_FIXTURES_HPP_
