#pragma once

#include <stdexcept>
#include <string>

namespace siltlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define SILTLAB_ERROR(Name)          \
  struct Name : Error {              \
    using Error::Error;              \
  }

SILTLAB_ERROR(InvalidInput);
SILTLAB_ERROR(CyclicQuiver);
SILTLAB_ERROR(InfiniteDimensional);
SILTLAB_ERROR(FieldMismatch);
SILTLAB_ERROR(AlgebraMismatch);
SILTLAB_ERROR(NeedsFiniteField);
SILTLAB_ERROR(BudgetExceeded);
SILTLAB_ERROR(DecompositionFailure);
SILTLAB_ERROR(NotTwoTerm);
SILTLAB_ERROR(NotSilting);
SILTLAB_ERROR(NotPresilting);
SILTLAB_ERROR(ApproximationNotMono);
SILTLAB_ERROR(ConeNotInAddT);
SILTLAB_ERROR(NestednessViolation);
SILTLAB_ERROR(LinearSolveFailure);
SILTLAB_ERROR(SearchExhausted);

#undef SILTLAB_ERROR

}  // namespace siltlab
