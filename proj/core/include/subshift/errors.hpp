#ifndef SUBSHIFT_ERRORS_HPP
#define SUBSHIFT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace subshift {

// Failure classes; the CLI maps these to exit codes (parse/invalid-input=2,
// gate=3, budget=4, everything else=5).
enum class ErrorKind {
  Parse,
  InvalidInput,
  Gate,
  Budget,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace subshift

#endif
