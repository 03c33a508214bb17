#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ctlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

#define CTLAB_ERROR(Name)              \
  class Name : public Error {          \
   public:                             \
    using Error::Error;                \
  }

CTLAB_ERROR(OpenTermSubstitution);
CTLAB_ERROR(InadmissibleValuation);
CTLAB_ERROR(InvalidParameter);
CTLAB_ERROR(NotATermCode);
CTLAB_ERROR(NotAFormulaCode);
CTLAB_ERROR(NotASeqCode);
CTLAB_ERROR(IndexOutOfRange);
CTLAB_ERROR(OpenTerm);
CTLAB_ERROR(NotASentence);
CTLAB_ERROR(MissingAtom);
CTLAB_ERROR(SpecInvariantViolation);
CTLAB_ERROR(LengthMismatch);
CTLAB_ERROR(UndecidedPrefix);
CTLAB_ERROR(TooManyFreeVars);
CTLAB_ERROR(WrongArity);
CTLAB_ERROR(CyclicOrder);
CTLAB_ERROR(InconsistentConstraints);

#undef CTLAB_ERROR

}  // namespace ctlab
