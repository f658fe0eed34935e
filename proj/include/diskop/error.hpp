#ifndef DISKOP_ERROR_HPP
#define DISKOP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace diskop {

/// Input is well typed but violates a mathematical precondition or invariant.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad flags, schema violations, unknown names.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal identity that must hold by construction failed.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace diskop

#endif  // DISKOP_ERROR_HPP
