// Walks through the library on <a,b,c,d | ab = cd>.

#include <iostream>
#include <memory>

#include "smallover/subsets.hpp"
#include "smallover/wordproblem.hpp"
#include "smallover/wp_compiler.hpp"

int main() {
  using namespace smallover;
  Presentation p("abcd", {{"ab", "cd"}});

  PieceTable t(p);
  std::cout << "C(4): " << (check_small_overlap(t, 4) ? "yes" : "no") << '\n';

  WordProblemSolver s(p);
  std::cout << "abab = cdcd: " << (s.equiv("abab", "cdcd") ? "yes" : "no")
            << '\n';
  std::cout << "normal form of cdcd: " << normal_form(p, "cdcd") << '\n';

  auto b = std::make_shared<WpMachineBundle const>(compile_word_problem(p));
  std::cout << "window " << b->k << ", expansion bound " << b->b << '\n';
  std::cout << "two-tape machine accepts (abcd, cdab): "
            << (b->accepts("abcd", "cdab") ? "yes" : "no") << '\n';

  auto c = closure(b, parse_pattern("(ab)*", p.alphabet()));
  std::cout << "cdcd in closure of (ab)*: " << (c.contains("cdcd") ? "yes" : "no")
            << '\n';
}
