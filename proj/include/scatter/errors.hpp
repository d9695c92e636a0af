#ifndef SCATTER_ERRORS_HPP
#define SCATTER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace scatter {

// Base class for all failure modes of the toolkit.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input to a transform has not decayed at the end of its grid.
struct NonDecayedInput : Error { using Error::Error; };

// Cauchy/Hilbert evaluation point too close to (or on) the contour.
struct PoleOnContour : Error { using Error::Error; };

// Phase unwrapping ran into a step larger than the allowed bound.
struct UnwrapAmbiguity : Error { using Error::Error; };

// Riemann factorization requires winding index zero.
struct NonzeroIndex : Error { using Error::Error; };

// Continuous logarithm branch could not be tracked along the grid.
struct BranchCutFailure : Error { using Error::Error; };

// Jost function vanished (or got below the floor) on the real axis.
struct ZeroJost : Error { using Error::Error; };

// A linear solve hit a vanishing pivot.
struct SingularSystem : Error { using Error::Error; };

// Symbol 1 + Htilde(k) is not strictly positive.
struct SymbolNotPositive : Error { using Error::Error; };

// Requested a stored full row that was not checkpointed.
struct MissingRow : Error { using Error::Error; };

// An iterative scheme failed to converge.
struct NoConvergence : Error { using Error::Error; };

// Riccati integration exceeded the configured bound.
struct BlowUp : Error { using Error::Error; };

// Fixed point iteration is not contracting and the fallback failed.
struct NoContraction : Error { using Error::Error; };

// Supplied bound-state data disagrees with the computed winding index.
struct IndexMismatch : Error { using Error::Error; };

// Blaschke parameter gamma is invalid (must be > 0 and distinct from k_j).
struct InvalidGamma : Error { using Error::Error; };

// File/config ingestion failure.
struct IngestionError : Error { using Error::Error; };

}  // namespace scatter

#endif
