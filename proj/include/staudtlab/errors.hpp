#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace staudt {

enum class ErrorKind {
  Syntax,
  Semantic,
  NonUnit,
  Unsupported,
  InfiniteRing,
  NotAdmissible,
  FrameDegenerate,
  NotResolvable,
  TwoNotUnit,
  NonUnitDifference,
  InvalidParameter,
  BudgetExceeded,
  PreconditionFailed,
  FrameNotFixed,
  CharacteristicTwo,
  NotJordan,
  InconsistentParameterization,
  DegenerateArguments,
  DegenerateAux,
  ChainMismatch,
  NotAffine,
  NoIntersection,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `witness` carries the rendered
/// offending value when there is one (a non-unit, a quadruple, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string witness = {},
        std::size_t position = npos);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& witness() const noexcept { return witness_; }
  /// Offset into the parsed text for syntax errors, npos otherwise.
  std::size_t position() const noexcept { return position_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  ErrorKind kind_;
  std::string witness_;
  std::size_t position_;
};

}  // namespace staudt
