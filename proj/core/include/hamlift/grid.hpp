#pragma once

#include <complex>
#include <string>

#include "hamlift/phase_space.hpp"

namespace hamlift {

using Complex = std::complex<double>;

/// Uniform periodic position grid with an hbar scaling. 1-D.
struct Grid {
    Eigen::Index N = 0;   // samples, power of two >= 16
    double x_min = 0.0;
    double x_max = 0.0;
    double hbar = 1.0;

    Grid() = default;
    Grid(Eigen::Index N_, double x_min_, double x_max_, double hbar_ = 1.0);

    double dx() const { return (x_max - x_min) / static_cast<double>(N); }
    /// Dual-lattice momentum spacing, 2 pi hbar / (N dx).
    double dp() const;
    double x_at(Eigen::Index i) const { return x_min + static_cast<double>(i) * dx(); }
    /// Momentum lattice in monotone order, p_k = dp * (k - N/2).
    double p_at(Eigen::Index k) const {
        return dp() * (static_cast<double>(k) - static_cast<double>(N) / 2.0);
    }
    Vec x_lattice() const;
    Vec p_lattice() const;

    bool operator==(const Grid& other) const = default;
};

/// Complex samples of psi on a Grid, L^2 weight dx.
struct WaveFunction {
    Grid grid;
    CVec values;

    WaveFunction() = default;
    WaveFunction(Grid g, CVec v);

    double norm() const;
    WaveFunction normalized() const;
};

/// dx-weighted inner product <a, b> = dx sum conj(a) b.
Complex inner(const WaveFunction& a, const WaveFunction& b);

/// Normalized Gaussian centered at (x0, p0) with position width
/// sqrt(hbar/2)*s, phase convention exp(i p0 (x - x0/2) / hbar).
WaveFunction coherent_state(const Grid& g, double x0, double p0, double squeeze = 1.0);

/// Unitary hbar-Fourier transform to the momentum lattice (monotone order)
/// and back. to_position(to_momentum(psi)) == psi to machine precision.
CVec to_momentum(const Grid& g, const CVec& psi);
CVec to_position(const Grid& g, const CVec& phi);

/// First and second phase-space moments of a state.
struct StateMoments {
    double mean_x = 0.0;
    double mean_p = 0.0;
    Mat covariance;  // 2x2: [[Var x, Cov(x,p)], [Cov(x,p), Var p]]
};
StateMoments state_moments(const WaveFunction& psi);

/// FFT utilities (forward = e^{-2pi i jk/N} sum, unnormalized).
CVec fft_forward(const CVec& in);
CVec fft_inverse(const CVec& in);  // includes the 1/N factor

/// out_j = sum_{j'} a_{j'} e^{-i alpha j j'} for arbitrary real alpha,
/// computed by Bluestein chirp factorization in O(N log N).
CVec scaled_dft(const CVec& a, double alpha);

}  // namespace hamlift
