#pragma once

#include <functional>
#include <string>

#include "hamlift/phase_space.hpp"

namespace hamlift {

/// An evaluatable Hamiltonian H(z, t) with gradient and Hessian in z.
struct HamiltonianSpec {
    std::function<double(const PhaseSpacePoint&, double)> eval;
    std::function<Vec(const PhaseSpacePoint&, double)> grad;
    std::function<Mat(const PhaseSpacePoint&, double)> hess;
    bool time_dependent = false;
    std::string label;

    double operator()(const PhaseSpacePoint& z, double t) const { return eval(z, t); }
};

/// Quadratic Hamiltonian H(z, t) = 1/2 z^T M(t) z with symmetric M(t)
/// carrying blocks [[A, B], [B^T, C]].
struct QuadraticHamiltonian {
    std::function<Mat(double)> M;
    Eigen::Index n = 1;
    bool time_dependent = false;
    std::string label;

    static QuadraticHamiltonian constant(Mat M0, std::string label = "quadratic");
    /// 1-D block scalars A, B, C.
    static QuadraticHamiltonian scalar(double A, double B, double C,
                                       std::string label = "quadratic");

    HamiltonianSpec to_spec() const;
};

/// Build a spec from a plain eval callable; grad and hess fall back to
/// central finite differences (step h for grad, sqrt-scaled for hess).
HamiltonianSpec hamiltonian_from_eval(
    std::function<double(const PhaseSpacePoint&, double)> eval, bool time_dependent,
    std::string label, double h = 1e-5);

/// Central finite-difference gradient of eval, for tests and fallbacks.
Vec fd_gradient(const std::function<double(const PhaseSpacePoint&, double)>& eval,
                const PhaseSpacePoint& z, double t, double h = 1e-4);
Mat fd_hessian(const std::function<double(const PhaseSpacePoint&, double)>& eval,
               const PhaseSpacePoint& z, double t, double h = 1e-3);

namespace presets {

/// H = 1/2 (x^2 + p^2), n = 1.
HamiltonianSpec oscillator();
/// H = 1/2 p^2.
HamiltonianSpec free_particle();
/// H = 1/2 p^2 + (1 - cos x).
HamiltonianSpec pendulum();
/// H = 1/2 (x^2 + p^2) + eps x sin t.
HamiltonianSpec driven_oscillator(double eps = 0.1);
/// H = x p (generator of the squeeze flow).
HamiltonianSpec shear_xp();
/// H = 1/2 p^2 + 1/4 x^4.
HamiltonianSpec quartic_oscillator();
/// H = x^2 p^2 (blows up in finite time; truncation test case).
HamiltonianSpec xxpp();

/// Look up a preset by name ("oscillator", "free", "pendulum",
/// "driven_oscillator", "shear", "quartic", "xxpp"). Throws on unknown names.
HamiltonianSpec by_name(const std::string& name);

}  // namespace presets

}  // namespace hamlift
