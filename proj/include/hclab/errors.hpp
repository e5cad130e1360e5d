#pragma once

#include <stdexcept>
#include <string>

namespace hclab {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define HCLAB_DEFINE_ERROR(Name)              \
  class Name : public Error {                 \
   public:                                    \
    using Error::Error;                       \
  }

HCLAB_DEFINE_ERROR(MixedSideError);
HCLAB_DEFINE_ERROR(DimensionTooLarge);
HCLAB_DEFINE_ERROR(BudgetExceeded);
HCLAB_DEFINE_ERROR(NotIndependentError);
HCLAB_DEFINE_ERROR(NonpositiveLambda);
HCLAB_DEFINE_ERROR(UnknownRegime);
HCLAB_DEFINE_ERROR(MSolveFailure);
HCLAB_DEFINE_ERROR(RangeError);
HCLAB_DEFINE_ERROR(UncoverableError);
HCLAB_DEFINE_ERROR(RetryExhausted);
HCLAB_DEFINE_ERROR(PreconditionError);
HCLAB_DEFINE_ERROR(IoError);
HCLAB_DEFINE_ERROR(ParseError);

#undef HCLAB_DEFINE_ERROR

}  // namespace hclab
