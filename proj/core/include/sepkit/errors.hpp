#pragma once

#include <stdexcept>
#include <string>

namespace sepkit {

enum class ErrorKind {
  Parse,
  Invariant,
  UnknownId,
  DuplicateCoordinate,
  GeneralPosition,
  ScheduleViolation,
  EmptyInput,
  EmptyColor,
  NonPositiveEps,
  CapExceeded,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

#define SEPKIT_ERROR_TYPE(Name)                                          \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what) : Error(ErrorKind::Name, what) {} \
  };

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorKind::Parse, what) {}
};

class InvariantError : public Error {
 public:
  explicit InvariantError(const std::string& what) : Error(ErrorKind::Invariant, what) {}
};

SEPKIT_ERROR_TYPE(UnknownId)
SEPKIT_ERROR_TYPE(DuplicateCoordinate)
SEPKIT_ERROR_TYPE(GeneralPosition)
SEPKIT_ERROR_TYPE(ScheduleViolation)
SEPKIT_ERROR_TYPE(EmptyInput)
SEPKIT_ERROR_TYPE(EmptyColor)
SEPKIT_ERROR_TYPE(NonPositiveEps)
SEPKIT_ERROR_TYPE(CapExceeded)

#undef SEPKIT_ERROR_TYPE

}  // namespace sepkit
