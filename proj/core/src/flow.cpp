#include "hamlift/flow.hpp"

#include <cmath>
#include <utility>

namespace hamlift {

namespace {

using Deriv = std::function<Vec(const Vec&, double)>;

Vec rk4_step(const Deriv& f, const Vec& y, double t, double dt) {
    const Vec k1 = f(y, t);
    const Vec k2 = f(y + 0.5 * dt * k1, t + 0.5 * dt);
    const Vec k3 = f(y + 0.5 * dt * k2, t + 0.5 * dt);
    const Vec k4 = f(y + dt * k3, t + dt);
    return y + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
}

Vec hamilton_rhs(const HamiltonianSpec& H, const Vec& zv, double t) {
    const Eigen::Index n = zv.size() / 2;
    const Vec g = H.grad(PhaseSpacePoint::from_vector(zv), t);
    Vec rhs(2 * n);
    rhs.head(n) = g.tail(n);   // xdot = grad_p H
    rhs.tail(n) = -g.head(n);  // pdot = -grad_x H
    return rhs;
}

void check_finite(const Vec& zv, double t, double threshold) {
    if (!zv.allFinite() || zv.cwiseAbs().maxCoeff() > threshold)
        throw FlowDivergenceError("flow diverged at t = " + std::to_string(t), t);
}

// Leapfrog (kick-drift-kick) for separable time-independent H.
Vec leapfrog_step(const HamiltonianSpec& H, const Vec& zv, double t, double dt) {
    const Eigen::Index n = zv.size() / 2;
    Vec x = zv.head(n), p = zv.tail(n);
    Vec g = H.grad(PhaseSpacePoint(x, p), t);
    p -= 0.5 * dt * g.head(n);
    g = H.grad(PhaseSpacePoint(x, p), t + 0.5 * dt);
    x += dt * g.tail(n);
    g = H.grad(PhaseSpacePoint(x, p), t + dt);
    p -= 0.5 * dt * g.head(n);
    Vec out(2 * n);
    out << x, p;
    return out;
}

}  // namespace

Vec hamilton_vector_field(const HamiltonianSpec& H, const PhaseSpacePoint& z, double t) {
    const Vec g = H.grad(z, t);
    if (!g.allFinite())
        throw std::runtime_error("hamilton_vector_field: non-finite gradient");
    const Eigen::Index n = z.dim();
    Vec f(2 * n);
    f.head(n) = g.tail(n);
    f.tail(n) = -g.head(n);
    return f;
}

FlowResult integrate_flow(const FlowMap& flow, const PhaseSpacePoint& z0,
                          double divergence_threshold) {
    if (flow.steps < 1) throw std::invalid_argument("integrate_flow: steps must be >= 1");
    const double dt = (flow.t_to - flow.t_from) / flow.steps;
    Vec zv = z0.to_vector();
    Trajectory traj;
    traj.times.reserve(flow.steps + 1);
    traj.states.reserve(flow.steps + 1);
    traj.times.push_back(flow.t_from);
    traj.states.push_back(zv);
    const auto& H = flow.H;
    const Deriv rhs = [&H](const Vec& y, double t) { return hamilton_rhs(H, y, t); };
    for (int i = 0; i < flow.steps; ++i) {
        const double t = flow.t_from + i * dt;
        if (flow.method == IntegrationMethod::rk4)
            zv = rk4_step(rhs, zv, t, dt);
        else
            zv = leapfrog_step(H, zv, t, dt);
        check_finite(zv, t + dt, divergence_threshold);
        traj.times.push_back(flow.t_from + (i + 1) * dt);
        traj.states.push_back(zv);
    }
    return {PhaseSpacePoint::from_vector(zv), std::move(traj)};
}

PhaseSpacePoint flow_point(const HamiltonianSpec& H, const PhaseSpacePoint& z0,
                           double t_from, double t_to, int steps) {
    if (t_from == t_to) return z0;
    FlowMap fm{H, t_from, t_to, steps, IntegrationMethod::rk4};
    Vec zv = z0.to_vector();
    const double dt = (t_to - t_from) / steps;
    const Deriv rhs = [&H](const Vec& y, double t) { return hamilton_rhs(H, y, t); };
    for (int i = 0; i < steps; ++i) {
        zv = rk4_step(rhs, zv, t_from + i * dt, dt);
        check_finite(zv, t_from + (i + 1) * dt, 1e12);
    }
    return PhaseSpacePoint::from_vector(zv);
}

JacobianTrajectory integrate_variational(const HamiltonianSpec& H, const PhaseSpacePoint& z0,
                                         double t_from, double t_to, int steps) {
    const Eigen::Index n = z0.dim();
    const Eigen::Index d = 2 * n;
    const Mat J = standard_symplectic(n).J;

    // Combined state: first 2n entries are z, the rest is S column-major.
    Vec y(d + d * d);
    y.head(d) = z0.to_vector();
    Eigen::Map<Mat>(y.data() + d, d, d) = Mat::Identity(d, d);

    const Deriv rhs = [&H, &J, d](const Vec& yv, double t) {
        const Vec zv = yv.head(d);
        const PhaseSpacePoint z = PhaseSpacePoint::from_vector(zv);
        const Mat S = Eigen::Map<const Mat>(yv.data() + d, d, d);
        Vec out(d + d * d);
        out.head(d) = hamilton_rhs(H, zv, t);
        Eigen::Map<Mat>(out.data() + d, d, d) = J * H.hess(z, t) * S;
        return out;
    };

    JacobianTrajectory jt;
    jt.base_point = z0;
    jt.times.push_back(t_from);
    jt.jacobians.push_back(Mat::Identity(d, d));
    if (steps < 1 || t_from == t_to) return jt;
    const double dt = (t_to - t_from) / steps;
    for (int i = 0; i < steps; ++i) {
        y = rk4_step(rhs, y, t_from + i * dt, dt);
        check_finite(y, t_from + (i + 1) * dt, 1e12);
        jt.times.push_back(t_from + (i + 1) * dt);
        jt.jacobians.push_back(Eigen::Map<const Mat>(y.data() + d, d, d));
    }
    return jt;
}

namespace {

int scaled_steps(double t, int steps_per_unit) {
    return std::max(16, static_cast<int>(std::ceil(std::abs(t) * steps_per_unit)));
}

}  // namespace

HamiltonianSpec compose_hamiltonians(const HamiltonianSpec& H, const HamiltonianSpec& K,
                                     int steps_per_unit) {
    auto eval = [H, K, steps_per_unit](const PhaseSpacePoint& z, double t) {
        PhaseSpacePoint w = z;
        if (t != 0.0) w = flow_point(H, z, t, 0.0, scaled_steps(t, steps_per_unit));
        return H.eval(z, t) + K.eval(w, t);
    };
    auto spec = hamiltonian_from_eval(eval, true, H.label + "#" + K.label);
    return spec;
}

HamiltonianSpec invert_hamiltonian(const HamiltonianSpec& H, int steps_per_unit) {
    auto eval = [H, steps_per_unit](const PhaseSpacePoint& z, double t) {
        PhaseSpacePoint w = z;
        if (t != 0.0) w = flow_point(H, z, 0.0, t, scaled_steps(t, steps_per_unit));
        return -H.eval(w, t);
    };
    return hamiltonian_from_eval(eval, true, "inv(" + H.label + ")");
}

HamiltonianSpec conjugate_hamiltonian(const HamiltonianSpec& H, const Mat& s, double tol) {
    if (!is_symplectic(s, tol))
        throw std::invalid_argument("conjugate_hamiltonian: matrix is not symplectic");
    const Mat sinv = s.inverse();
    HamiltonianSpec K;
    K.eval = [H, sinv](const PhaseSpacePoint& z, double t) {
        return H.eval(PhaseSpacePoint::from_vector(sinv * z.to_vector()), t);
    };
    K.grad = [H, sinv](const PhaseSpacePoint& z, double t) -> Vec {
        return sinv.transpose() *
               H.grad(PhaseSpacePoint::from_vector(sinv * z.to_vector()), t);
    };
    K.hess = [H, sinv](const PhaseSpacePoint& z, double t) -> Mat {
        return sinv.transpose() *
               H.hess(PhaseSpacePoint::from_vector(sinv * z.to_vector()), t) * sinv;
    };
    K.time_dependent = H.time_dependent;
    K.label = H.label + "∘s⁻¹";
    return K;
}

HamiltonianSpec rescale_time(const HamiltonianSpec& H, double t0) {
    if (t0 == 0.0) throw std::invalid_argument("rescale_time: t0 must be nonzero");
    HamiltonianSpec K;
    K.eval = [H, t0](const PhaseSpacePoint& z, double t) { return t0 * H.eval(z, t0 * t); };
    K.grad = [H, t0](const PhaseSpacePoint& z, double t) -> Vec {
        return t0 * H.grad(z, t0 * t);
    };
    K.hess = [H, t0](const PhaseSpacePoint& z, double t) -> Mat {
        return t0 * H.hess(z, t0 * t);
    };
    K.time_dependent = true;
    K.label = H.label + "@t0";
    return K;
}

namespace {

// Gauss-Legendre nodes/weights on [0, 1] by Newton on Legendre polynomials.
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = 0.5 * (1.0 - x);  // map [-1,1] -> [0,1] (order irrelevant)
        weights[i] = 1.0 / ((1.0 - x * x) * pp * pp);
    }
}

// Solve f_t(w) = y by Newton with finite-difference Jacobian.
PhaseSpacePoint invert_flow_at(const FlowFamily& flow, const PhaseSpacePoint& y, double t,
                               const BanyagaOptions& opts) {
    const Eigen::Index d = 2 * y.dim();
    Vec w = y.to_vector();
    const double h = 1e-6;
    for (int it = 0; it < opts.newton_max_iter; ++it) {
        const Vec fw = flow(PhaseSpacePoint::from_vector(w), t).to_vector();
        const Vec r = y.to_vector() - fw;
        if (r.cwiseAbs().maxCoeff() < opts.newton_tol) return PhaseSpacePoint::from_vector(w);
        Mat Jac(d, d);
        for (Eigen::Index j = 0; j < d; ++j) {
            Vec wp = w, wm = w;
            wp(j) += h;
            wm(j) -= h;
            Jac.col(j) = (flow(PhaseSpacePoint::from_vector(wp), t).to_vector() -
                          flow(PhaseSpacePoint::from_vector(wm), t).to_vector()) /
                         (2 * h);
        }
        w += Jac.partialPivLu().solve(r);
    }
    const Vec fw = flow(PhaseSpacePoint::from_vector(w), t).to_vector();
    if ((y.to_vector() - fw).cwiseAbs().maxCoeff() > 1e-6)
        throw std::runtime_error("banyaga_reconstruct: flow family not invertible at the "
                                 "requested point (Newton round-trip residual too large)");
    return PhaseSpacePoint::from_vector(w);
}

// X(w, t) = (d/dt f_t)(f_t^{-1}(w)) by central differences.
Vec flow_vector_field(const FlowFamily& flow, const PhaseSpacePoint& w, double t,
                      const BanyagaOptions& opts) {
    const PhaseSpacePoint w0 = invert_flow_at(flow, w, t, opts);
    const double dt = opts.fd_step;
    return (flow(w0, t + dt).to_vector() - flow(w0, t - dt).to_vector()) / (2 * dt);
}

}  // namespace

HamiltonianSpec banyaga_reconstruct(FlowFamily flow,
                                    std::function<double(const PhaseSpacePoint&)> H0,
                                    Eigen::Index n, BanyagaOptions opts) {
    if (opts.quad_nodes < 8)
        throw std::invalid_argument("banyaga_reconstruct: quad_nodes must be >= 8");
    std::vector<double> nodes, weights;
    gauss_legendre_01(opts.quad_nodes, nodes, weights);
    if (!H0) H0 = [](const PhaseSpacePoint&) { return 0.0; };

    auto eval = [flow, H0, n, opts, nodes, weights](const PhaseSpacePoint& z, double t) {
        const Vec zv = z.to_vector();
        double integral = 0.0;
        for (std::size_t q = 0; q < nodes.size(); ++q) {
            const Vec uz = nodes[q] * zv;
            Vec uzv = uz;
            // The origin is a fixed scaling limit; sigma(X(0,t), z) is
            // still well defined, evaluate there directly.
            const Vec X = flow_vector_field(flow, PhaseSpacePoint::from_vector(uzv), t, opts);
            integral += weights[q] * symplectic_form(X, zv);
        }
        return H0(z) - integral;
    };
    auto spec = hamiltonian_from_eval(eval, true, "banyaga");
    return spec;
}

HamiltonianSpec extend_hamiltonian(const HamiltonianSpec& H, double dHdt_step) {
    // State layout: x_ext = (x, t), p_ext = (p, pi) with pi = -E, so that
    // Htilde = H(x, p, t) - E = H(x, p, t) + pi and tdot = +1.
    auto split = [](const PhaseSpacePoint& zext) {
        const Eigen::Index n = zext.dim() - 1;
        return std::tuple<PhaseSpacePoint, double, double>(
            PhaseSpacePoint(zext.x.head(n), zext.p.head(n)), zext.x(n), zext.p(n));
    };
    HamiltonianSpec ext;
    ext.eval = [H, split](const PhaseSpacePoint& zext, double) {
        auto [z, t, pi] = split(zext);
        return H.eval(z, t) + pi;
    };
    ext.grad = [H, split, dHdt_step](const PhaseSpacePoint& zext, double) -> Vec {
        auto [z, t, pi] = split(zext);
        (void)pi;
        const Eigen::Index n = z.dim();
        const Vec g = H.grad(z, t);
        const double dHdt =
            (H.eval(z, t + dHdt_step) - H.eval(z, t - dHdt_step)) / (2 * dHdt_step);
        Vec out(2 * n + 2);
        out.head(n) = g.head(n);
        out(n) = dHdt;       // d/dt slot (a position)
        out.segment(n + 1, n) = g.tail(n);
        out(2 * n + 1) = 1.0;  // d/dpi slot
        return out;
    };
    ext.hess = [ext](const PhaseSpacePoint& zext, double t) {
        return fd_hessian(ext.eval, zext, t, 1e-4);
    };
    ext.time_dependent = false;
    ext.label = "extended(" + H.label + ")";
    return ext;
}

PhaseSpacePoint extended_to_state(const ExtendedPoint& zext) {
    const Eigen::Index n = zext.z.dim();
    Vec x(n + 1), p(n + 1);
    x << zext.z.x, zext.t;
    p << zext.z.p, -zext.E;
    return {x, p};
}

ExtendedPoint state_to_extended(const PhaseSpacePoint& state) {
    const Eigen::Index n = state.dim() - 1;
    ExtendedPoint out;
    out.z = PhaseSpacePoint(state.x.head(n), state.p.head(n));
    out.t = state.x(n);
    out.E = -state.p(n);
    return out;
}

ExtendedPoint extended_flow(const HamiltonianSpec& H, const ExtendedPoint& zext, double t,
                            int steps) {
    const HamiltonianSpec ext = extend_hamiltonian(H);
    return state_to_extended(flow_point(ext, extended_to_state(zext), 0.0, t, steps));
}

BumpTruncation::BumpTruncation(PhaseSpacePoint c, double r_in, double r_out)
    : center(std::move(c)), inner_radius(r_in), outer_radius(r_out) {
    if (!(0 < r_in && r_in < r_out))
        throw std::invalid_argument("BumpTruncation: need 0 < inner_radius < outer_radius");
}

double BumpTruncation::operator()(const PhaseSpacePoint& z) const {
    const double r = (z.to_vector() - center.to_vector()).norm();
    if (r <= inner_radius) return 1.0;
    if (r >= outer_radius) return 0.0;
    const double s = (r - inner_radius) / (outer_radius - inner_radius);
    auto g = [](double u) { return u > 0 ? std::exp(-1.0 / u) : 0.0; };
    return g(1.0 - s) / (g(1.0 - s) + g(s));
}

HamiltonianSpec truncate_support(const HamiltonianSpec& H, const BumpTruncation& theta) {
    auto eval = [H, theta](const PhaseSpacePoint& z, double t) {
        const double th = theta(z);
        return th == 0.0 ? 0.0 : th * H.eval(z, t);
    };
    auto spec = hamiltonian_from_eval(eval, H.time_dependent, H.label + "·Θ");
    return spec;
}

}  // namespace hamlift
