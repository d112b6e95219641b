#pragma once

#include <stdexcept>
#include <string>

namespace pyra {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rejected inputs and misconfiguration (CLI exit code 2).
struct InvalidInputError : Error {
  using Error::Error;
};

struct SelfLoopError : InvalidInputError { using InvalidInputError::InvalidInputError; };
struct NonPositiveWeightError : InvalidInputError { using InvalidInputError::InvalidInputError; };
struct DuplicateEdgeError : InvalidInputError { using InvalidInputError::InvalidInputError; };
struct IndexOutOfRangeError : InvalidInputError { using InvalidInputError::InvalidInputError; };
struct InvalidFamilyParametersError : InvalidInputError { using InvalidInputError::InvalidInputError; };
struct TooLargeError : InvalidInputError { using InvalidInputError::InvalidInputError; };
struct DimensionMismatchError : InvalidInputError { using InvalidInputError::InvalidInputError; };
struct BadSpectrumBoundError : InvalidInputError { using InvalidInputError::InvalidInputError; };
struct NotBipartiteError : InvalidInputError { using InvalidInputError::InvalidInputError; };
struct MaskTooSmallError : InvalidInputError { using InvalidInputError::InvalidInputError; };
struct NotALaplacianError : InvalidInputError { using InvalidInputError::InvalidInputError; };
struct TooManyLevelsError : InvalidInputError { using InvalidInputError::InvalidInputError; };
struct BadKeepCountError : InvalidInputError { using InvalidInputError::InvalidInputError; };

// Numerical failures (CLI exit code 3).
struct NumericError : Error {
  using Error::Error;
};

struct SolverFailureError : NumericError { using NumericError::NumericError; };
struct NoConvergenceError : NumericError { using NumericError::NumericError; };
struct DegenerateSplitError : NumericError { using NumericError::NumericError; };
struct DisconnectedAfterRetriesError : NumericError { using NumericError::NumericError; };
struct KernelNotFiniteError : NumericError { using NumericError::NumericError; };

// Unreadable or inconsistent files (CLI exit code 4).
struct CorruptInputError : Error {
  using Error::Error;
};

struct FileFormatError : CorruptInputError { using CorruptInputError::CorruptInputError; };
struct ContainerCorruptError : CorruptInputError { using CorruptInputError::CorruptInputError; };

} // namespace pyra
