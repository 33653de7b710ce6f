#pragma once

#include <stdexcept>
#include <string>

namespace robinlab {

// A requested range or value exceeds what the sieve / allocator can serve.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A floor/bracket boundary could not be separated from an integer even at
// the precision ceiling.
struct TieError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Root bracketing failed: the target value lies outside the expandable
// bracket.
struct NoBracketError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A comparison stayed inside the accumulated error bound at the precision
// ceiling.
struct UndecidedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace robinlab
