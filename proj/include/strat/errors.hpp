#pragma once

#include <stdexcept>
#include <string>

namespace strat {

// Base class for all solver/analysis failures.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input/schema problems (bad profile files, invalid construction data).
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ThresholdOutOfRange : SolverError { using SolverError::SolverError; };
struct SubboxOutOfBounds : SolverError { using SolverError::SolverError; };
struct DegenerateState : SolverError { using SolverError::SolverError; };
struct BracketFailure : SolverError { using SolverError::SolverError; };
struct NotAnEigenvalue : SolverError { using SolverError::SolverError; };
struct OutOfDomain : SolverError { using SolverError::SolverError; };
struct StepFailure : SolverError { using SolverError::SolverError; };
struct GridTooCoarse : SolverError { using SolverError::SolverError; };
struct MissingDerivatives : SolverError { using SolverError::SolverError; };
struct OutsideSpectralWindow : SolverError { using SolverError::SolverError; };
struct MissingWell : SolverError { using SolverError::SolverError; };
struct NotPiecewiseConstant : SolverError { using SolverError::SolverError; };
struct EvanescentLayerPresent : SolverError { using SolverError::SolverError; };
struct NotGuided : SolverError { using SolverError::SolverError; };
struct BandIntersectsWell : SolverError { using SolverError::SolverError; };
struct ModeBelowThreshold : SolverError { using SolverError::SolverError; };
struct NotMonotone : SolverError { using SolverError::SolverError; };
struct InvalidOrdering : SolverError { using SolverError::SolverError; };
struct NoNearbyEigenvalue : SolverError { using SolverError::SolverError; };
struct WrongProfileShape : SolverError { using SolverError::SolverError; };
struct OutsideZone : SolverError { using SolverError::SolverError; };

} // namespace strat
