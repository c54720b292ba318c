#pragma once

#include <map>
#include <string>
#include <vector>

#include "hamlift/flow.hpp"
#include "hamlift/grid.hpp"
#include "hamlift/metaplectic.hpp"
#include "hamlift/weyl.hpp"

namespace hamlift {

enum class PropagationMethod { eigensolve, split_step, metaplectic };

/// One-parameter family t -> F(t), strongly continuous, F(0) = id.
struct UnitaryFamily {
    std::function<WaveFunction(const WaveFunction&, double t)> F;
    Grid grid;
    std::string label;

    WaveFunction operator()(const WaveFunction& psi, double t) const { return F(psi, t); }

    static UnitaryFamily identity(const Grid& g);
    /// Propagator family of the quantized quadratic block. For eigensolve
    /// the Hamiltonian is diagonalized once and reused for every t.
    static UnitaryFamily from_quadratic(const QuadraticHamiltonian& H, const Grid& g,
                                        PropagationMethod method = PropagationMethod::eigensolve,
                                        int steps_per_unit = 1000);
};

/// Solve i hbar dpsi/dt = H^ psi for duration t.
///  - eigensolve: exact in the diagonalized dense operator;
///  - split_step: Strang splitting (half potential kick, kinetic drift in
///    momentum space, half kick) — requires a vanishing cross block;
///  - metaplectic: slices exp(t J M) into near-identity free factors and
///    applies the corresponding quadratic Fourier transforms.
WaveFunction propagate_schrodinger(const QuadraticHamiltonian& H, const WaveFunction& psi0,
                                   double t, int steps,
                                   PropagationMethod method = PropagationMethod::eigensolve);

/// Split-step propagation for a general separable symbol T(p) + V(x).
WaveFunction propagate_split_step(const std::function<double(double)>& T,
                                  const std::function<double(double)>& V,
                                  const WaveFunction& psi0, double t, int steps);

/// i hbar (F(dt) psi - psi) / dt, or the central variant
/// i hbar (F(dt) psi - F(-dt) psi) / (2 dt).
WaveFunction stone_generator_estimate(const UnitaryFamily& F, const WaveFunction& psi,
                                      double dt, bool central = false);

struct CorrespondenceReport {
    std::string hamiltonian_label;
    std::map<std::string, double> classical_residuals;
    std::map<std::string, double> quantum_residuals;
    double roundtrip_residual = 0.0;
    std::string parameters;
};

/// Verify the flow <-> propagator dictionary for a quadratic Hamiltonian:
/// (1) classical flow and Jacobian, (2) quantized propagation, (3) quantum
/// means vs the classical flow and covariances vs S_t Sigma_0 S_t^T,
/// (4) conjugation of the dynamics by a linear symplectic map along both
/// the classical and the quantum route.
CorrespondenceReport correspondence_roundtrip(const QuadraticHamiltonian& H, const Grid& g,
                                              double t,
                                              const std::vector<PhaseSpacePoint>& probe_centers,
                                              PropagationMethod method = PropagationMethod::eigensolve,
                                              int steps = 1000);

/// Residual of the extended Schrodinger equation for the phase-dressed
/// solution Psi(x, t; t') = psi(x, t) e^{i E (t - t')/hbar}: maximum over
/// interior time samples and t' samples of
/// || i hbar d/dt' Psi - (H^ - i hbar d/dt) Psi ||, derivatives by central
/// differences (dtp is the t' step). Requires >= 3 uniform time samples.
double extended_schrodinger_check(const std::vector<double>& times,
                                  const std::vector<WaveFunction>& path,
                                  const GridOperator& Hop, double E,
                                  const std::vector<double>& tprime_samples = {},
                                  double dtp = 1e-4);

}  // namespace hamlift
