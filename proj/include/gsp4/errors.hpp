#pragma once

#include <stdexcept>
#include <string>

namespace gsp4 {

struct Error : std::runtime_error {
  explicit Error(const std::string& w) : std::runtime_error(w) {}
};

#define GSP4_ERROR(NAME)                                   \
  struct NAME : Error {                                    \
    explicit NAME(const std::string& w = #NAME) : Error(w) {} \
  }

GSP4_ERROR(NonSimilitude);
GSP4_ERROR(NonInvertibleMultiplier);
GSP4_ERROR(SingularBlock);
GSP4_ERROR(LevelExceedsPrecision);
GSP4_ERROR(NotInParahoric);
GSP4_ERROR(NonIntegralConjugate);
GSP4_ERROR(ScaleRefused);
GSP4_ERROR(CounterexampleFound);
GSP4_ERROR(LevelMismatch);
GSP4_ERROR(NonDominant);
GSP4_ERROR(ParityViolation);
GSP4_ERROR(InvalidWQ);
GSP4_ERROR(UnsupportedDegree);
GSP4_ERROR(InconsistentDegrees);
GSP4_ERROR(NonRegular);
GSP4_ERROR(UnsortedInput);
GSP4_ERROR(UnderdeterminedCase);
GSP4_ERROR(EndpointMismatch);
GSP4_ERROR(IndependenceViolated);
GSP4_ERROR(PrecisionExhausted);
GSP4_ERROR(HypothesisViolated);

#undef GSP4_ERROR

}  // namespace gsp4
