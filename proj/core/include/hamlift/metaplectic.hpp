#pragma once

#include <stdexcept>
#include <vector>

#include "hamlift/grid.hpp"
#include "hamlift/phase_space.hpp"

namespace hamlift {

/// Thrown when a chirp or transform would exceed the grid's Nyquist band.
class AliasingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense linear operator on grid states.
struct GridOperator {
    CMat matrix;
    Grid grid;

    WaveFunction apply(const WaveFunction& psi) const;
};

/// Quadratic Fourier transform S^W: chirp, scaled DFT (Bluestein), chirp,
/// with prefactor (2 pi i hbar)^{-1/2} i^m sqrt|det L|. Throws
/// AliasingError if the chirps or the output band violate Nyquist.
WaveFunction apply_quadratic_fourier(const QuadraticGeneratingFunction& W,
                                     const WaveFunction& psi);

/// Direct O(N^2) quadrature of the same integral, as a dense matrix.
/// Cross-check route for apply_quadratic_fourier.
GridOperator quadratic_fourier_matrix(const QuadraticGeneratingFunction& W, const Grid& g);

/// Classical shadow of S^W (delegates to generating_to_symplectic).
Mat project_metaplectic(const QuadraticGeneratingFunction& W);

/// Product S^{W_1} S^{W_2} ... as a dense operator (applied right to left,
/// i.e. the returned matrix is M_1 M_2 ...).
GridOperator compose_metaplectic(const std::vector<QuadraticGeneratingFunction>& ops,
                                 const Grid& g);

}  // namespace hamlift
