#pragma once

#include <stdexcept>
#include <string>

namespace endline {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define ENDLINE_ERROR(Name)                                   \
  struct Name : Error {                                       \
    explicit Name(const std::string& what) : Error(what) {}   \
  }

ENDLINE_ERROR(ZeroConstantTerm);
ENDLINE_ERROR(NonPositiveConstantTerm);
ENDLINE_ERROR(DivisionByZero);
ENDLINE_ERROR(OnEndLocus);
ENDLINE_ERROR(InvalidJet);
ENDLINE_ERROR(NegativeDiscriminant);
ENDLINE_ERROR(DegenerateQuadratic);
ENDLINE_ERROR(NoSingularity);
ENDLINE_ERROR(NonHyperbolic);
ENDLINE_ERROR(DegenerateM);
ENDLINE_ERROR(StepCollapse);
ENDLINE_ERROR(LeftDomain);
ENDLINE_ERROR(ParseError);

#undef ENDLINE_ERROR

}  // namespace endline
