#pragma once

#include <stdexcept>
#include <string>

namespace acg {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ACG_DEFINE_ERROR(Name)                                      \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  };

ACG_DEFINE_ERROR(UnboundVariable)
ACG_DEFINE_ERROR(DivisionByZero)
ACG_DEFINE_ERROR(ParseError)
ACG_DEFINE_ERROR(SpecMalformed)
ACG_DEFINE_ERROR(PhiAbsent)
ACG_DEFINE_ERROR(SingularMetric)
ACG_DEFINE_ERROR(DegenerateOmega)
ACG_DEFINE_ERROR(NotKContact)
ACG_DEFINE_ERROR(UnknownTensor)
ACG_DEFINE_ERROR(DimensionMismatch)

#undef ACG_DEFINE_ERROR

}  // namespace acg
