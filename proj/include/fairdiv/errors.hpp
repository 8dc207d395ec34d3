#ifndef FAIRDIV_ERRORS_HPP
#define FAIRDIV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fairdiv {

// Raised when a caller hands us malformed data: bad indices, duplicate edges,
// negative weights, unparsable numbers, and the like. The CLI maps this to
// exit code 1.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a solver detects that one of its own guarantees failed to hold.
// Reaching this means a bug in this library, not in the input. The CLI maps
// this to exit code 2.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

inline void require_input(bool cond, const std::string& what) {
  if (!cond) throw input_error(what);
}

inline void require_internal(bool cond, const std::string& what) {
  if (!cond) throw internal_error(what);
}

}  // namespace fairdiv

#endif  // FAIRDIV_ERRORS_HPP
