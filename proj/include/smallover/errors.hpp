// Exception types thrown by the library. The CLI maps each family onto a
// distinct exit code.

#ifndef SMALLOVER_ERRORS_HPP_
#define SMALLOVER_ERRORS_HPP_

#include <stdexcept>  // for runtime_error, invalid_argument
#include <string>     // for string

namespace smallover {

  //! Malformed input text (presentation files, machine files, patterns).
  class ParseError : public std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  //! A presentation that violates one of its structural invariants.
  class InvalidPresentation : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
  };

  //! An argument outside the domain of an operation (a non-piece passed
  //! where a piece is required, an empty word in semigroup mode, ...).
  class InvalidArgument : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
  };

  //! An operation's precondition on the presentation fails, e.g. C(4) is
  //! required but does not hold.
  class PreconditionFailed : public std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  //! A configurable safety cap (class size, state count, step count) was
  //! exceeded.
  class LimitExceeded : public std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  //! A machine expected to be deterministic has two applicable moves, or a
  //! construction produced overlapping guards.
  class NondeterminismError : public std::logic_error {
    using std::logic_error::logic_error;
  };

}  // namespace smallover

#endif  // SMALLOVER_ERRORS_HPP_
