#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "hamlift/hamiltonian.hpp"
#include "hamlift/phase_space.hpp"

namespace hamlift {

enum class IntegrationMethod { rk4, symplectic_leapfrog };

/// Thrown when the state norm exceeds the divergence threshold.
class FlowDivergenceError : public std::runtime_error {
public:
    FlowDivergenceError(const std::string& what, double t)
        : std::runtime_error(what), time(t) {}
    double time;
};

/// Numerical time-t' -> t solution map of Hamilton's equations for H.
struct FlowMap {
    HamiltonianSpec H;
    double t_from = 0.0;
    double t_to = 0.0;
    int steps = 1000;
    IntegrationMethod method = IntegrationMethod::rk4;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Vec> states;  // stacked (x, p) vectors

    PhaseSpacePoint back_point() const { return PhaseSpacePoint::from_vector(states.back()); }
};

struct FlowResult {
    PhaseSpacePoint z;
    Trajectory trajectory;
};

/// X_H(z, t) = J grad H(z, t).
Vec hamilton_vector_field(const HamiltonianSpec& H, const PhaseSpacePoint& z, double t);

/// Integrate zdot = X_H(z, t) from flow.t_from to flow.t_to. Deterministic
/// for fixed (method, steps). Throws FlowDivergenceError (naming the time)
/// if the state norm passes divergence_threshold.
FlowResult integrate_flow(const FlowMap& flow, const PhaseSpacePoint& z0,
                          double divergence_threshold = 1e12);

/// Convenience: endpoint of the rk4 flow of H over [t_from, t_to].
PhaseSpacePoint flow_point(const HamiltonianSpec& H, const PhaseSpacePoint& z0,
                           double t_from, double t_to, int steps = 1000);

/// The Jacobian S_t = Df_t(z0) along the trajectory, co-integrated with
/// z_t via dS/dt = J H''(z_t, t) S.  S(t_from) = I.
struct JacobianTrajectory {
    PhaseSpacePoint base_point;
    std::vector<double> times;
    std::vector<Mat> jacobians;

    const Mat& final_jacobian() const { return jacobians.back(); }
};

JacobianTrajectory integrate_variational(const HamiltonianSpec& H, const PhaseSpacePoint& z0,
                                         double t_from, double t_to, int steps);

/// H#K(z, t) = H(z, t) + K((f_t^H)^{-1}(z), t); its flow is f_t^H f_t^K.
/// The inverse flow is evaluated by integrating H backward from t to 0
/// with steps_per_unit rk4 steps per unit time.
HamiltonianSpec compose_hamiltonians(const HamiltonianSpec& H, const HamiltonianSpec& K,
                                     int steps_per_unit = 400);

/// K(z, t) = -H(f_t^H(z), t); its flow is (f_t^H)^{-1}.
HamiltonianSpec invert_hamiltonian(const HamiltonianSpec& H, int steps_per_unit = 400);

/// K = H o s^{-1}; its flow is s f_t^H s^{-1}. Rejects non-symplectic s.
HamiltonianSpec conjugate_hamiltonian(const HamiltonianSpec& H, const Mat& s,
                                      double tol = 1e-8);

/// K(z, t) = t0 H(z, t0 t), so that f^K_{t/t0} = f^H_t. Rejects t0 = 0.
HamiltonianSpec rescale_time(const HamiltonianSpec& H, double t0);

using FlowFamily = std::function<PhaseSpacePoint(const PhaseSpacePoint&, double)>;

struct BanyagaOptions {
    int quad_nodes = 16;       // Gauss-Legendre nodes for the u-integral
    double fd_step = 1.0 / 1024.0;  // central-difference step in t
    double newton_tol = 1e-11;
    int newton_max_iter = 60;
};

/// Reconstruct H(z, t) from a flow family via
///   H(z, t) = H0(z) - int_0^1 sigma(X(u z, t), z) du,
/// X = (d/dt f_t) o f_t^{-1}. The time derivative uses central differences
/// and f_t^{-1} is solved by Newton iteration (finite-difference Jacobian);
/// a Newton residual above 1e-6 is reported as an inconsistent-flow error.
HamiltonianSpec banyaga_reconstruct(FlowFamily flow, std::function<double(const PhaseSpacePoint&)> H0,
                                    Eigen::Index n, BanyagaOptions opts = {});

/// Point of the extended phase space R^{2n+2}.
struct ExtendedPoint {
    PhaseSpacePoint z;
    double t = 0.0;
    double E = 0.0;
};

/// The autonomous Hamiltonian Htilde(x, p, t, E) = H(x, p, t) - E on the
/// extended phase space, returned as an (n+1)-dimensional spec. The slot
/// conjugate to the time coordinate stores -E, which makes the extended
/// Hamilton equations read tdot = 1, Edot = dH/dt.
HamiltonianSpec extend_hamiltonian(const HamiltonianSpec& H, double dHdt_step = 1e-6);

/// Pack/unpack between ExtendedPoint and the (n+1)-dim state of
/// extend_hamiltonian (handles the -E sign convention).
PhaseSpacePoint extended_to_state(const ExtendedPoint& zext);
ExtendedPoint state_to_extended(const PhaseSpacePoint& state);

/// Flow of the extended Hamiltonian for duration t, starting at zext.
ExtendedPoint extended_flow(const HamiltonianSpec& H, const ExtendedPoint& zext, double t,
                            int steps = 1000);

/// Smooth compactly supported cutoff: 1 inside inner_radius, 0 outside
/// outer_radius, exp-profile ramp between.
struct BumpTruncation {
    PhaseSpacePoint center;
    double inner_radius = 1.0;
    double outer_radius = 2.0;

    BumpTruncation(PhaseSpacePoint c, double r_in, double r_out);
    double operator()(const PhaseSpacePoint& z) const;
};

/// H Theta: equals H inside the inner radius, vanishes outside the outer
/// radius; all flows of the result are globally defined.
HamiltonianSpec truncate_support(const HamiltonianSpec& H, const BumpTruncation& theta);

}  // namespace hamlift
