#pragma once

#include <stdexcept>
#include <string>

namespace sunits {

/// Base class for every error raised by the library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A value violates an operation's precondition (zero where a nonzero
/// integer is required, a composite in a prime set, a non-solution, ...).
struct invalid_argument : error {
  using error::error;
};

/// Text input could not be parsed.
struct parse_error : error {
  using error::error;
};

/// Two S-units built over different prime sets were combined.
struct prime_set_mismatch : error {
  prime_set_mismatch() : error("sunits: operands use different prime sets") {}
};

/// A search would exceed (or did exceed) its configured work ceiling.
struct budget_exceeded : error {
  using error::error;
};

/// Internal invariant violated. Seeing one of these means a bug.
struct consistency_error : error {
  using error::error;
};

}  // namespace sunits
