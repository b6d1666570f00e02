#pragma once

#include <stdexcept>
#include <string>

namespace stokeswire {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// mesh
struct NonConformingError : Error { using Error::Error; };
struct DegenerateTriangleError : Error { using Error::Error; };
struct IndexOutOfRangeError : Error { using Error::Error; };
struct OutOfRangeError : Error { using Error::Error; };

// singularity
struct AllSingularError : Error { using Error::Error; };
struct LengthMismatchError : Error { using Error::Error; };

// polynomials
struct TriangleNotInPatchError : Error { using Error::Error; };
struct UnsupportedDegreeError : Error { using Error::Error; };

// assembly / solve
struct QuadratureUnsupportedError : Error { using Error::Error; };
struct SingularSystemError : Error { using Error::Error; };
struct EmptyPressureSpaceError : Error { using Error::Error; };
struct EigSolverFailureError : Error { using Error::Error; };

// verify
struct DegenerateAngleError : Error { using Error::Error; };
struct IncompatibleFieldsError : Error { using Error::Error; };
struct InfeasibleSystemError : Error { using Error::Error; };
struct ConditionViolatedError : Error { using Error::Error; };
struct NotCriticalError : Error { using Error::Error; };

// io
struct ParseError : Error { using Error::Error; };
struct UnknownKeyError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace stokeswire
