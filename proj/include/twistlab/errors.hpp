#pragma once

#include <stdexcept>
#include <string>

namespace twistlab {

// Base of every error raised by the library. The kind() string is stable and
// is what the CLI prints next to the message.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define TWISTLAB_ERROR(Name)                                   \
  class Name : public Error {                                  \
   public:                                                     \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  }

TWISTLAB_ERROR(NotAGroup);
TWISTLAB_ERROR(InvalidParameter);
TWISTLAB_ERROR(ResourceLimit);
TWISTLAB_ERROR(NotACocycle);
TWISTLAB_ERROR(NotCoboundary);
TWISTLAB_ERROR(NotHomomorphism);
TWISTLAB_ERROR(PreconditionError);
TWISTLAB_ERROR(NotACharacter);
TWISTLAB_ERROR(NotInZOmega);
TWISTLAB_ERROR(ExtensionDoesNotSplit);
TWISTLAB_ERROR(NumericalFailure);
TWISTLAB_ERROR(NotAScalar);
TWISTLAB_ERROR(ValidationFailure);
TWISTLAB_ERROR(NotIntegral);
TWISTLAB_ERROR(NotFound);
TWISTLAB_ERROR(DimensionMismatch);
TWISTLAB_ERROR(Degenerate);
TWISTLAB_ERROR(ParseError);
TWISTLAB_ERROR(Ambiguous);

#undef TWISTLAB_ERROR

}  // namespace twistlab
