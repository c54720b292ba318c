#include "hamlift/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace hamlift {

Vec fd_gradient(const std::function<double(const PhaseSpacePoint&, double)>& eval,
                const PhaseSpacePoint& z, double t, double h) {
    const Eigen::Index n2 = 2 * z.dim();
    Vec zv = z.to_vector();
    Vec g(n2);
    for (Eigen::Index i = 0; i < n2; ++i) {
        Vec zp = zv, zm = zv;
        zp(i) += h;
        zm(i) -= h;
        g(i) = (eval(PhaseSpacePoint::from_vector(zp), t) -
                eval(PhaseSpacePoint::from_vector(zm), t)) /
               (2 * h);
    }
    return g;
}

Mat fd_hessian(const std::function<double(const PhaseSpacePoint&, double)>& eval,
               const PhaseSpacePoint& z, double t, double h) {
    const Eigen::Index n2 = 2 * z.dim();
    const Vec zv = z.to_vector();
    const double f0 = eval(z, t);
    Mat H(n2, n2);
    for (Eigen::Index i = 0; i < n2; ++i) {
        for (Eigen::Index j = i; j < n2; ++j) {
            if (i == j) {
                Vec zp = zv, zm = zv;
                zp(i) += h;
                zm(i) -= h;
                H(i, i) = (eval(PhaseSpacePoint::from_vector(zp), t) - 2 * f0 +
                           eval(PhaseSpacePoint::from_vector(zm), t)) /
                          (h * h);
            } else {
                Vec zpp = zv, zpm = zv, zmp = zv, zmm = zv;
                zpp(i) += h; zpp(j) += h;
                zpm(i) += h; zpm(j) -= h;
                zmp(i) -= h; zmp(j) += h;
                zmm(i) -= h; zmm(j) -= h;
                H(i, j) = H(j, i) =
                    (eval(PhaseSpacePoint::from_vector(zpp), t) -
                     eval(PhaseSpacePoint::from_vector(zpm), t) -
                     eval(PhaseSpacePoint::from_vector(zmp), t) +
                     eval(PhaseSpacePoint::from_vector(zmm), t)) /
                    (4 * h * h);
            }
        }
    }
    return H;
}

HamiltonianSpec hamiltonian_from_eval(
    std::function<double(const PhaseSpacePoint&, double)> eval, bool time_dependent,
    std::string label, double h) {
    HamiltonianSpec spec;
    spec.eval = eval;
    spec.grad = [eval, h](const PhaseSpacePoint& z, double t) {
        return fd_gradient(eval, z, t, h);
    };
    spec.hess = [eval, h](const PhaseSpacePoint& z, double t) {
        return fd_hessian(eval, z, t, std::sqrt(h));
    };
    spec.time_dependent = time_dependent;
    spec.label = std::move(label);
    return spec;
}

QuadraticHamiltonian QuadraticHamiltonian::constant(Mat M0, std::string label) {
    if (M0.rows() != M0.cols() || M0.rows() % 2 != 0)
        throw std::invalid_argument("QuadraticHamiltonian: M must be 2n x 2n");
    if ((M0 - M0.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("QuadraticHamiltonian: M must be symmetric");
    QuadraticHamiltonian q;
    q.n = M0.rows() / 2;
    q.M = [M0](double) { return M0; };
    q.time_dependent = false;
    q.label = std::move(label);
    return q;
}

QuadraticHamiltonian QuadraticHamiltonian::scalar(double A, double B, double C,
                                                  std::string label) {
    Mat M(2, 2);
    M << A, B, B, C;
    return constant(M, std::move(label));
}

HamiltonianSpec QuadraticHamiltonian::to_spec() const {
    auto M_ = M;
    HamiltonianSpec spec;
    spec.eval = [M_](const PhaseSpacePoint& z, double t) {
        const Vec zv = z.to_vector();
        return 0.5 * zv.dot(M_(t) * zv);
    };
    spec.grad = [M_](const PhaseSpacePoint& z, double t) -> Vec {
        return M_(t) * z.to_vector();
    };
    spec.hess = [M_](const PhaseSpacePoint&, double t) { return M_(t); };
    spec.time_dependent = time_dependent;
    spec.label = label;
    return spec;
}

namespace presets {

HamiltonianSpec oscillator() {
    HamiltonianSpec h;
    h.eval = [](const PhaseSpacePoint& z, double) {
        return 0.5 * (z.x.squaredNorm() + z.p.squaredNorm());
    };
    h.grad = [](const PhaseSpacePoint& z, double) { return z.to_vector(); };
    h.hess = [](const PhaseSpacePoint& z, double) {
        return Mat::Identity(2 * z.dim(), 2 * z.dim());
    };
    h.time_dependent = false;
    h.label = "oscillator";
    return h;
}

HamiltonianSpec free_particle() {
    HamiltonianSpec h;
    h.eval = [](const PhaseSpacePoint& z, double) { return 0.5 * z.p.squaredNorm(); };
    h.grad = [](const PhaseSpacePoint& z, double) -> Vec {
        Vec g = Vec::Zero(2 * z.dim());
        g.tail(z.dim()) = z.p;
        return g;
    };
    h.hess = [](const PhaseSpacePoint& z, double) {
        const Eigen::Index n = z.dim();
        Mat H = Mat::Zero(2 * n, 2 * n);
        H.bottomRightCorner(n, n) = Mat::Identity(n, n);
        return H;
    };
    h.time_dependent = false;
    h.label = "free";
    return h;
}

HamiltonianSpec pendulum() {
    HamiltonianSpec h;
    h.eval = [](const PhaseSpacePoint& z, double) {
        return 0.5 * z.p.squaredNorm() + (1.0 - std::cos(z.x(0)));
    };
    h.grad = [](const PhaseSpacePoint& z, double) -> Vec {
        Vec g(2);
        g << std::sin(z.x(0)), z.p(0);
        return g;
    };
    h.hess = [](const PhaseSpacePoint& z, double) {
        Mat H(2, 2);
        H << std::cos(z.x(0)), 0, 0, 1;
        return H;
    };
    h.time_dependent = false;
    h.label = "pendulum";
    return h;
}

HamiltonianSpec driven_oscillator(double eps) {
    HamiltonianSpec h;
    h.eval = [eps](const PhaseSpacePoint& z, double t) {
        return 0.5 * (z.x.squaredNorm() + z.p.squaredNorm()) + eps * z.x(0) * std::sin(t);
    };
    h.grad = [eps](const PhaseSpacePoint& z, double t) -> Vec {
        Vec g = z.to_vector();
        g(0) += eps * std::sin(t);
        return g;
    };
    h.hess = [](const PhaseSpacePoint& z, double) {
        return Mat::Identity(2 * z.dim(), 2 * z.dim());
    };
    h.time_dependent = true;
    h.label = "driven_oscillator";
    return h;
}

HamiltonianSpec shear_xp() {
    HamiltonianSpec h;
    h.eval = [](const PhaseSpacePoint& z, double) { return z.x(0) * z.p(0); };
    h.grad = [](const PhaseSpacePoint& z, double) -> Vec {
        Vec g(2);
        g << z.p(0), z.x(0);
        return g;
    };
    h.hess = [](const PhaseSpacePoint&, double) {
        Mat H(2, 2);
        H << 0, 1, 1, 0;
        return H;
    };
    h.time_dependent = false;
    h.label = "shear";
    return h;
}

HamiltonianSpec quartic_oscillator() {
    HamiltonianSpec h;
    h.eval = [](const PhaseSpacePoint& z, double) {
        return 0.5 * z.p.squaredNorm() + 0.25 * std::pow(z.x(0), 4);
    };
    h.grad = [](const PhaseSpacePoint& z, double) -> Vec {
        Vec g(2);
        g << std::pow(z.x(0), 3), z.p(0);
        return g;
    };
    h.hess = [](const PhaseSpacePoint& z, double) {
        Mat H(2, 2);
        H << 3 * z.x(0) * z.x(0), 0, 0, 1;
        return H;
    };
    h.time_dependent = false;
    h.label = "quartic";
    return h;
}

HamiltonianSpec xxpp() {
    HamiltonianSpec h;
    h.eval = [](const PhaseSpacePoint& z, double) {
        return z.x(0) * z.x(0) * z.p(0) * z.p(0);
    };
    h.grad = [](const PhaseSpacePoint& z, double) -> Vec {
        Vec g(2);
        g << 2 * z.x(0) * z.p(0) * z.p(0), 2 * z.x(0) * z.x(0) * z.p(0);
        return g;
    };
    h.hess = [](const PhaseSpacePoint& z, double) {
        const double x = z.x(0), p = z.p(0);
        Mat H(2, 2);
        H << 2 * p * p, 4 * x * p, 4 * x * p, 2 * x * x;
        return H;
    };
    h.time_dependent = false;
    h.label = "xxpp";
    return h;
}

HamiltonianSpec by_name(const std::string& name) {
    if (name == "oscillator") return oscillator();
    if (name == "free") return free_particle();
    if (name == "pendulum") return pendulum();
    if (name == "driven_oscillator") return driven_oscillator();
    if (name == "shear") return shear_xp();
    if (name == "quartic") return quartic_oscillator();
    if (name == "xxpp") return xxpp();
    throw std::invalid_argument("unknown Hamiltonian preset: " + name);
}

}  // namespace presets

}  // namespace hamlift
