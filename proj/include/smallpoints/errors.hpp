#pragma once

#include <stdexcept>
#include <string>

namespace smallpoints {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SMALLPOINTS_ERROR(Name)                  \
  class Name : public Error {                    \
   public:                                       \
    explicit Name(const std::string& what)       \
        : Error(std::string(#Name ": ") + what) {} \
  }

/// A composite cofactor survived trial division and Pollard rho.
SMALLPOINTS_ERROR(UnfactoredPart);
SMALLPOINTS_ERROR(ZeroInput);
SMALLPOINTS_ERROR(SingularModel);
SMALLPOINTS_ERROR(InfinityInput);
SMALLPOINTS_ERROR(NotMultiplicative);
SMALLPOINTS_ERROR(EqualPoints);
SMALLPOINTS_ERROR(DuplicatePoints);
SMALLPOINTS_ERROR(NonConvergent);
SMALLPOINTS_ERROR(LatticePoint);
SMALLPOINTS_ERROR(BadPrime);
SMALLPOINTS_ERROR(TorsionPointSupplied);
SMALLPOINTS_ERROR(GoodReduction);
SMALLPOINTS_ERROR(InvalidArgument);
/// An internal invariant was violated; always a bug.
SMALLPOINTS_ERROR(InternalError);

#undef SMALLPOINTS_ERROR

}  // namespace smallpoints
