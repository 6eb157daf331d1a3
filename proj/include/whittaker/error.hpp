#ifndef WHITTAKER_ERROR_HPP
#define WHITTAKER_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace whittaker {

enum class ErrorKind {
  UnsupportedType,
  NotARoot,
  NotSimpleRoot,
  MixedRootSystem,
  DimensionMismatch,
  NonOrthogonalSupport,
  InvalidParams,
  ReductionDivergence,
  NotGraded,
  NotInNilradical,
  TruncationNotClosed,
  UnknownLength,
  InvalidConfig,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace whittaker

#endif  // WHITTAKER_ERROR_HPP
