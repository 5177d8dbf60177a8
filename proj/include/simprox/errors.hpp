#pragma once

#include <stdexcept>
#include <string>

namespace simprox {

/// A contract stated in an operation's documentation was violated by the
/// caller's inputs (as opposed to a bug: those use the standard exceptions).
struct PreconditionViolation : std::runtime_error {
  explicit PreconditionViolation(const std::string& what) : std::runtime_error(what) {}
};

/// A comparison between enclosed reals stayed undecided at the precision cap.
/// Callers that can refine should; surfacing this is always preferred over
/// guessing a verdict.
struct InconclusiveComparison : std::runtime_error {
  explicit InconclusiveComparison(const std::string& what) : std::runtime_error(what) {}
};

/// Evaluation would require astronomically many bits (for instance exp(-t)
/// for huge t, whose first nonzero bit sits beyond any usable precision).
struct EvalOverflow : std::runtime_error {
  explicit EvalOverflow(const std::string& what) : std::runtime_error(what) {}
};

/// An identity's stated hypotheses do not hold for the given parameters, so
/// its conclusion is not certified.
struct HypothesisUnmet : std::runtime_error {
  explicit HypothesisUnmet(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// An interval argument is empty (lo >= hi) where a nonempty open interval
/// is required.
struct DegenerateInterval : std::runtime_error {
  explicit DegenerateInterval(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace simprox
