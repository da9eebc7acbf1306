#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace oqwlab {

/// %g formatting for residuals and tolerances in error text; std::to_string
/// would flatten anything below 1e-6 to "0.000000".
inline std::string str(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

/// Base class for every failure the toolkit reports deliberately.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotFiniteError : Error { using Error::Error; };
struct NotHermitianError : Error { using Error::Error; };
struct NotPSDError : Error { using Error::Error; };
struct ShapeMismatchError : Error { using Error::Error; };
struct DimensionMismatchError : Error { using Error::Error; };
struct IndexOutOfRangeError : Error { using Error::Error; };

/// A node whose edge operators fail the completeness relation.
struct IncompleteKrausError : Error {
    IncompleteKrausError(int node_, double residual_)
        : Error("completeness relation violated at node " + std::to_string(node_ + 1) +
                " (residual " + str(residual_) + ")"),
          node(node_),
          residual(residual_) {}
    int node;
    double residual;
};

struct ZeroProbabilityError : Error { using Error::Error; };
struct SpectrumOutOfRangeError : Error { using Error::Error; };
struct TooLargeError : Error { using Error::Error; };
struct DegenerateNormalizationError : Error { using Error::Error; };
struct NotInComplementError : Error { using Error::Error; };

struct NotInSpanError : Error {
    explicit NotInSpanError(double residual_)
        : Error("state not in the span of the supplied eigenvectors (projection residual " +
                str(residual_) + ")"),
          residual(residual_) {}
    double residual;
};

struct NormDriftError : Error { using Error::Error; };
struct NonStochasticError : Error { using Error::Error; };
struct NonUnitaryCoinError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace oqwlab
