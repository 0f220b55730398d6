// smallover: command-line front end.
//
// Exit codes: 0 success or a true verdict, 1 a false verdict, 2 usage,
// parse or input errors, 3 an unmet precondition (not C(4), a cap hit).

#include <chrono>    // for steady_clock
#include <cstdlib>   // for EXIT_SUCCESS
#include <fstream>   // for ofstream
#include <iostream>  // for cout, cerr
#include <memory>    // for make_shared
#include <optional>  // for optional
#include <string>    // for string
#include <variant>   // for visit
#include <vector>    // for vector

#include "CLI11.hpp"
#include "json.hpp"

#include "smallover/io.hpp"
#include "smallover/presentation.hpp"
#include "smallover/subsets.hpp"
#include "smallover/wordproblem.hpp"
#include "smallover/wp_compiler.hpp"

namespace {

  using json = nlohmann::json;
  using namespace smallover;

  enum class Format { text, structured, dot };

  struct CliConfig {
    std::string presentation_path;
    std::string order;
    Format      format    = Format::text;
    std::size_t cap       = default_class_cap;
    int         verbosity = 0;
  };

  enum ExitCode : int {
    exit_true         = 0,
    exit_false        = 1,
    exit_usage        = 2,
    exit_precondition = 3
  };

  int verdict(bool b) {
    return b ? exit_true : exit_false;
  }

  class Cli {
   public:
    explicit Cli(CliConfig cfg) : _cfg(std::move(cfg)) {}

    Presentation const& presentation() {
      if (!_presentation) {
        if (_cfg.presentation_path.empty()) {
          throw InvalidArgument(
              "no presentation: pass --presentation or set "
              "SMALLOVER_PRESENTATION");
        }
        _presentation = load_presentation(_cfg.presentation_path);
        note("presentation " + _cfg.presentation_path);
      }
      return *_presentation;
    }

    LetterOrder order() {
      auto const& p = presentation();
      LetterOrder o(_cfg.order.empty() ? p.alphabet() : _cfg.order);
      if (!o.is_permutation_of(p.alphabet())) {
        throw InvalidArgument("--order must be a permutation of the alphabet");
      }
      return o;
    }

    void note(std::string const& msg) const {
      if (_cfg.verbosity > 0) {
        std::cerr << "smallover: " << msg << '\n';
      }
    }

    void record(json const& j) const {
      std::cout << j.dump() << '\n';
    }

    bool structured() const {
      return _cfg.format == Format::structured;
    }

    void no_dot(char const* cmd) const {
      if (_cfg.format == Format::dot) {
        throw InvalidArgument(std::string(cmd)
                              + " has no DOT output; use text or structured");
      }
    }

    ////////////////////////////////////////////////////////////////////////

    int validate(std::size_t m) {
      no_dot("validate");
      PieceTable  t(presentation());
      auto        w  = small_overlap_witness(t, m);
      std::string cm = "C(" + std::to_string(m) + ")";
      if (structured()) {
        json pieces = json::array();
        for (auto const& p : t.pieces()) {
          pieces.push_back(p);
        }
        record({{"record", "pieces"}, {"pieces", pieces}});
        for (auto const& f : t.factorizations()) {
          record({{"record", "factorization"},
                  {"relation_word", f.relation_word},
                  {"X", f.prefix},
                  {"Y", f.middle},
                  {"Z", f.suffix}});
        }
        json v = {{"record", "verdict"}, {"m", m}, {"holds", !w}};
        if (w) {
          v["witness"] = {{"relation_word", w->relation_word},
                          {"pieces", w->pieces}};
        }
        record(v);
      } else {
        std::cout << "pieces:";
        for (auto const& p : t.pieces()) {
          std::cout << ' ' << show(p);
        }
        std::cout << '\n';
        for (auto const& f : t.factorizations()) {
          std::cout << show(f.relation_word) << " = " << show(f.prefix)
                    << " . " << show(f.middle) << " . " << show(f.suffix)
                    << '\n';
        }
        if (w) {
          std::cout << cm << ": no (" << show(w->relation_word) << " =";
          for (std::size_t i = 0; i < w->pieces.size(); ++i) {
            std::cout << (i == 0 ? " " : " . ") << w->pieces[i];
          }
          std::cout << ")\n";
        } else {
          std::cout << cm << ": yes\n";
        }
      }
      return verdict(!w);
    }

    int wp(std::string const& u, std::string const& v) {
      no_dot("wp");
      WordProblemSolver s(presentation());
      bool              eq = s.equiv(u, v);
      if (structured()) {
        record({{"record", "wp"}, {"u", u}, {"v", v}, {"equal", eq}});
      } else {
        std::cout << (eq ? "YES" : "NO") << '\n';
      }
      return verdict(eq);
    }

    int normalize(std::string const& w) {
      no_dot("normalize");
      auto nf = normal_form(presentation(), w, order(), _cfg.cap);
      if (structured()) {
        record({{"record", "normal_form"}, {"word", w}, {"normal_form", nf}});
      } else {
        std::cout << show(nf) << '\n';
      }
      return exit_true;
    }

    int klass(std::string const& w) {
      no_dot("class");
      auto cls = enumerate_class(presentation(), w, order(), _cfg.cap);
      for (auto const& m : cls.members) {
        if (structured()) {
          record({{"record", "member"}, {"word", m}});
        } else {
          std::cout << show(m) << '\n';
        }
      }
      note(std::to_string(cls.members.size()) + " member(s), normal form "
           + show(cls.representative));
      return exit_true;
    }

    int compile(std::string const& stage,
                bool               reverse,
                std::string const& output) {
      auto start  = std::chrono::steady_clock::now();
      auto bundle = reverse ? reverse_word_problem_machine(presentation())
                            : compile_word_problem(presentation());
      note("window " + std::to_string(bundle.k) + ", expansion bound "
           + std::to_string(bundle.b));
      std::string text;
      if (stage == "bundle") {
        if (_cfg.format == Format::dot) {
          throw InvalidArgument("the bundle stage has no DOT output");
        }
        text = dump(io::manifest(bundle));
      } else if (stage == "pra") {
        text = emit(bundle.pra->materialize());
      } else if (stage == "transducer") {
        text = emit(bundle.transducer->materialize());
      } else {
        text = emit(
            automata::transducer_to_two_tape(bundle.transducer->materialize()));
      }
      write(text, output);
      note("compiled in "
           + std::to_string(std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - start)
                                .count())
           + " s");
      return exit_true;
    }

    int closure(std::string const& nfa_file,
                std::string const& pattern,
                std::string const& output) {
      auto b = std::make_shared<WpMachineBundle const>(
          compile_word_problem(presentation()));
      auto c = smallover::closure(b, language(nfa_file, pattern));
      note(std::to_string(c.nfa().number_of_states()) + " state(s)");
      write(emit(c.nfa()), output);
      return exit_true;
    }

    int member(std::string const& w,
               std::string const& nfa_file,
               std::string const& pattern) {
      no_dot("member");
      auto b = std::make_shared<WpMachineBundle const>(
          compile_word_problem(presentation()));
      bool in = subset_member(b, w, language(nfa_file, pattern));
      if (structured()) {
        record({{"record", "member"}, {"word", w}, {"member", in}});
      } else {
        std::cout << (in ? "YES" : "NO") << '\n';
      }
      return verdict(in);
    }

    int run(std::string const& file, std::vector<std::string> const& words) {
      no_dot("run");
      auto machine = io::load_machine(file);
      bool is_nfa  = std::holds_alternative<automata::Nfa>(machine);
      if (words.size() != (is_nfa ? 1u : 2u)) {
        throw InvalidArgument(is_nfa ? "an nfa reads one word"
                                     : "this machine reads two words");
      }
      std::string const u = words[0];
      std::string const v = is_nfa ? std::string() : words[1];
      bool              accepted = std::visit(
          [&](auto const& m) -> bool {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, automata::Nfa>) {
              return automata::nfa_membership(m, u);
            } else if constexpr (std::is_same_v<T, automata::Transducer>) {
              return automata::transducer_accepts(m, u + "$", v + "$");
            } else if constexpr (std::is_same_v<T, automata::TwoTapeDfa>) {
              return automata::two_tape_accepts(m, u, v);
            } else {
              return automata::pra_accepts(m, u, v);
            }
          },
          machine);
      if (structured()) {
        record({{"record", "run"}, {"words", words}, {"accepted", accepted}});
      } else {
        std::cout << (accepted ? "YES" : "NO") << '\n';
      }
      return verdict(accepted);
    }

   private:
    std::string dump(json const& j) const {
      return structured() ? j.dump() : j.dump(2);
    }

    template <typename M>
    std::string emit(M const& m) const {
      return _cfg.format == Format::dot ? io::to_dot(m) : dump(io::to_json(m));
    }

    void write(std::string const& text, std::string const& output) const {
      if (output.empty() || output == "-") {
        std::cout << text;
        if (text.empty() || text.back() != '\n') {
          std::cout << '\n';
        }
        return;
      }
      std::ofstream out(output);
      if (!(out << text << '\n')) {
        throw ParseError("cannot write " + output);
      }
    }

    automata::Nfa language(std::string const& nfa_file,
                           std::string const& pattern) {
      if (nfa_file.empty() == pattern.empty()) {
        throw InvalidArgument("give exactly one of an nfa file or --pattern");
      }
      return pattern.empty() ? io::load_nfa(nfa_file)
                             : parse_pattern(pattern, presentation().alphabet());
    }

    CliConfig                   _cfg;
    std::optional<Presentation> _presentation;
  };

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word problems and rational subsets of C(4) monoids"};
  app.require_subcommand(1);
  app.fallthrough();

  CliConfig cfg;
  app.add_option("-p,--presentation", cfg.presentation_path,
                 "presentation file (JSON)")
      ->envname("SMALLOVER_PRESENTATION");
  app.add_option("--order", cfg.order,
                 "letter order for normal forms, smallest first");
  std::map<std::string, Format> formats{{"text", Format::text},
                                        {"structured", Format::structured},
                                        {"dot", Format::dot}};
  app.add_option("--format", cfg.format, "text, structured or dot")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--cap", cfg.cap, "equivalence class size cap");
  app.add_flag("-v,--verbose", cfg.verbosity, "report progress on stderr");

  std::size_t m = 4;
  auto* validate = app.add_subcommand("validate", "pieces, factorizations "
                                                  "and the C(m) verdict");
  validate->add_option("--cm", m, "m in C(m)")->check(CLI::PositiveNumber);

  std::string u, v, w;
  auto*       wp = app.add_subcommand("wp", "decide u = v");
  wp->add_option("u", u)->required();
  wp->add_option("v", v)->required();

  auto* normalize = app.add_subcommand("normalize", "lexicographic normal form");
  normalize->add_option("word", w)->required();

  auto* klass = app.add_subcommand("class", "list the equivalence class");
  klass->add_option("word", w)->required();

  std::string stage = "two-tape", output;
  bool        reverse = false;
  auto*       compile = app.add_subcommand("compile", "build a machine file");
  compile->add_option("--stage", stage)
      ->check(CLI::IsMember({"pra", "transducer", "two-tape", "bundle"}));
  compile->add_flag("--reverse", reverse, "machine for the reversed relation");
  compile->add_option("-o,--output", output, "output file (default stdout)");

  std::string nfa_file, pattern;
  auto*       closure = app.add_subcommand(
      "closure", "all words equivalent to a word of a regular language");
  closure->add_option("nfa", nfa_file, "nfa file");
  closure->add_option("--pattern", pattern, "language as a pattern");
  closure->add_option("-o,--output", output, "output file (default stdout)");

  auto* member = app.add_subcommand(
      "member", "decide membership in a rational subset");
  member->add_option("word", w)->required();
  member->add_option("nfa", nfa_file, "nfa file");
  member->add_option("--pattern", pattern, "language as a pattern");

  std::string              machine;
  std::vector<std::string> words;
  auto* run = app.add_subcommand("run", "run a machine file on words");
  run->add_option("machine", machine)->required();
  run->add_option("words", words)->required()->expected(1, 2);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? EXIT_SUCCESS : exit_usage;
  }

  Cli cli(cfg);
  try {
    if (*validate) {
      return cli.validate(m);
    } else if (*wp) {
      return cli.wp(u, v);
    } else if (*normalize) {
      return cli.normalize(w);
    } else if (*klass) {
      return cli.klass(w);
    } else if (*compile) {
      return cli.compile(stage, reverse, output);
    } else if (*closure) {
      return cli.closure(nfa_file, pattern, output);
    } else if (*member) {
      return cli.member(w, nfa_file, pattern);
    }
    return cli.run(machine, words);
  } catch (PreconditionFailed const& e) {
    std::cerr << "smallover: " << e.what() << '\n';
    return exit_precondition;
  } catch (LimitExceeded const& e) {
    std::cerr << "smallover: " << e.what() << '\n';
    return exit_precondition;
  } catch (std::exception const& e) {
    std::cerr << "smallover: " << e.what() << '\n';
    return exit_usage;
  }
}
