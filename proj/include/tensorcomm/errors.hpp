#pragma once

#include <stdexcept>
#include <string>

namespace tensorcomm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutOfBounds : Error { using Error::Error; };
struct Overflow : Error { using Error::Error; };
struct SizeMismatch : Error { using Error::Error; };
struct NotPermutationProblem : Error { using Error::Error; };
struct NotGreen : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct CoverageTimeout : Error { using Error::Error; };
struct EvenModulus : Error { using Error::Error; };
struct VerificationFailed : Error { using Error::Error; };
struct ExtraTriangle : Error { using Error::Error; };
struct SharedEdge : Error { using Error::Error; };
struct NotAllTriangles : Error { using Error::Error; };
struct NotInjection : Error { using Error::Error; };
struct ImproperColoring : Error { using Error::Error; };
struct PromiseMismatch : Error { using Error::Error; };
struct NotContained : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct HashMismatch : Error { using Error::Error; };

} // namespace tensorcomm
