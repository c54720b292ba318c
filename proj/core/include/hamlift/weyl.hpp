#pragma once

#include <functional>
#include <string>

#include "hamlift/grid.hpp"
#include "hamlift/hamiltonian.hpp"
#include "hamlift/metaplectic.hpp"
#include "hamlift/phase_space.hpp"

namespace hamlift {

/// Phase-space observable a(x, p), either a callable or a sampled table
/// on the grid's phase lattice (bilinear periodic interpolation).
struct Symbol {
    std::function<Complex(double x, double p)> f;
    std::string label;
    bool real_valued = false;

    Complex operator()(double x, double p) const { return f(x, p); }

    /// Sample onto the phase lattice: table(i, k) = a(x_i, p_k).
    CMat sample(const Grid& g) const;

    static Symbol from_callable(std::function<Complex(double, double)> f, std::string label,
                                bool real_valued = false);
    /// Wrap a sampled table; evaluation interpolates bilinearly with
    /// periodic wrap in both coordinates.
    static Symbol from_table(CMat table, Grid g, std::string label);

    /// a o s^{-1} for symplectic s (2x2).
    Symbol pullback_inverse(const Mat& s) const;
};

namespace symbols {
Symbol one();
Symbol x();
Symbol p();
Symbol xp();
Symbol p_squared();
/// exp(-(x^2 + p^2) / (2 w^2))
Symbol gaussian(double width = 1.0);
Symbol by_name(const std::string& name);
}  // namespace symbols

/// tau in [0, 1].
struct TauParameter {
    double tau = 0.5;
    TauParameter() = default;
    TauParameter(double t);
};

/// Position-space integral kernel of the tau-quantized operator.
struct KernelMatrix {
    CMat K;
    Grid grid;
    double tau = 0.5;
};

/// K(x, y) = (2 pi hbar)^{-1} sum_p e^{i p (x - y)/hbar} a((1-tau)x + tau y, p) dp.
KernelMatrix symbol_to_kernel(const Symbol& a, TauParameter tau, const Grid& g);

/// a_tau(x, p) = sum_y e^{-i p y/hbar} K(x + tau y, x - (1-tau) y) dy, with
/// sheared kernel evaluation by bilinear periodic interpolation.
Symbol kernel_to_symbol(const KernelMatrix& K);

/// A psi(x) = sum_y K(x, y) psi(y) dy for the tau-kernel of a.
WaveFunction apply_tau_operator(const Symbol& a, TauParameter tau, const WaveFunction& psi);

/// Dense matrix of the tau-operator (kernel times dx).
GridOperator tau_operator_matrix(const Symbol& a, TauParameter tau, const Grid& g);

/// Weyl quantization of 1/2 z^T M z on the grid:
/// 1/2 A x^2 + B sym(x p) + 1/2 C p^2 with spectral derivatives. Hermitian
/// for real blocks.
GridOperator weyl_quantize_quadratic(const QuadraticHamiltonian& H, const Grid& g);

/// Dense momentum operator -i hbar d/dx (spectral).
GridOperator momentum_operator(const Grid& g);

/// Heisenberg-Weyl translation T(z')psi(x) = e^{i(p'x - p'x'/2)/hbar} psi(x - x').
/// x' snaps to the position lattice and p' to the dual lattice; a snap
/// beyond 1e-9 emits a warning on stderr.
WaveFunction heisenberg_weyl(const PhaseSpacePoint& zp, const WaveFunction& psi);

/// Symplectic Fourier transform on the phase lattice,
/// a_sigma(z) = (2 pi hbar)^{-1} int e^{-i sigma(z, z'')/hbar} a(z'') dz''.
Symbol symplectic_fourier(const Symbol& a, const Grid& g);

/// Weyl operator through the Heisenberg-Weyl route:
/// A psi = (2 pi hbar)^{-1} sum_{z'} a_sigma(z') T(z') psi dz'.
/// Requires a centered grid (x_min = -x_max).
WaveFunction apply_weyl_via_hw(const Symbol& a, const WaveFunction& psi);

/// max over the probe states of || Op_tau(a o s^{-1}) psi - S Op_tau(a) S^{-1} psi ||
/// with s = project_metaplectic(W) and S the quadratic Fourier transform of W.
/// An empty probe list selects the built-in deterministic 10-state set.
double covariance_residual(const Symbol& a, const QuadraticGeneratingFunction& W,
                           TauParameter tau, const Grid& g,
                           const std::vector<WaveFunction>& probes = {});

/// The built-in probe set used by covariance_residual.
std::vector<WaveFunction> default_probe_states(const Grid& g);

}  // namespace hamlift
