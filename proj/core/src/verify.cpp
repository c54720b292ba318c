#include "hamlift/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hamlift/correspondence.hpp"
#include "hamlift/flow.hpp"
#include "hamlift/grid.hpp"
#include "hamlift/hamiltonian.hpp"
#include "hamlift/metaplectic.hpp"
#include "hamlift/phase_space.hpp"
#include "hamlift/weyl.hpp"

namespace hamlift {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

VerifyCheck make_check(std::string name, double residual, double tolerance,
                       bool negative = false) {
    VerifyCheck c;
    c.name = std::move(name);
    c.residual = residual;
    c.tolerance = tolerance;
    c.negative_control = negative;
    c.pass = negative ? (residual > tolerance) : (residual <= tolerance);
    return c;
}

std::vector<PhaseSpacePoint> sample_points(long seed, int count, double radius) {
    std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
    std::uniform_real_distribution<double> u(-radius, radius);
    std::vector<PhaseSpacePoint> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double x = u(rng), p = u(rng);
        pts.emplace_back(x, p);
    }
    return pts;
}

WaveFunction random_bandlimited(const Grid& g, std::mt19937& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    CVec phi = CVec::Zero(g.N);
    const Eigen::Index half = g.N / 2, band = g.N / 8;
    for (Eigen::Index k = half - band; k <= half + band; ++k)
        phi(k) = Complex(nd(rng), nd(rng));
    WaveFunction psi(g, to_position(g, phi));
    return psi.normalized();
}

double max_symplectic_defect(const HamiltonianSpec& H, const PhaseSpacePoint& z0, double t,
                             int steps) {
    const JacobianTrajectory jt = integrate_variational(H, z0, 0.0, t, steps);
    double worst = 0;
    for (const Mat& S : jt.jacobians) worst = std::max(worst, symplecticity_defect(S));
    return worst;
}

double flow_identity_residual(const HamiltonianSpec& lhs, int lhs_steps,
                              const std::function<PhaseSpacePoint(const PhaseSpacePoint&)>& rhs,
                              const std::vector<PhaseSpacePoint>& pts, double t) {
    double worst = 0;
    for (const auto& z : pts) {
        const PhaseSpacePoint a = flow_point(lhs, z, 0.0, t, lhs_steps);
        const PhaseSpacePoint b = rhs(z);
        worst = std::max(worst, (a.to_vector() - b.to_vector()).lpNorm<Eigen::Infinity>());
    }
    return worst;
}

double banyaga_residual(const FlowFamily& family,
                        const std::function<double(const PhaseSpacePoint&)>& H_true,
                        const std::vector<PhaseSpacePoint>& pts, double* flow_residual) {
    const HamiltonianSpec H_rec = banyaga_reconstruct(
        family, [](const PhaseSpacePoint&) { return 0.0; }, 1);
    double worst = 0;
    for (const auto& z : pts) {
        const double ht = H_true(z);
        const double diff = std::abs(H_rec(z, 0.5) - ht);
        worst = std::max(worst, diff / std::max(std::abs(ht), 1e-3));
    }
    if (flow_residual) {
        double fw = 0;
        for (const auto& z : pts) {
            const PhaseSpacePoint a = flow_point(H_rec, z, 0.0, 1.0, 200);
            const PhaseSpacePoint b = family(z, 1.0);
            fw = std::max(fw, (a.to_vector() - b.to_vector()).lpNorm<Eigen::Infinity>());
        }
        *flow_residual = fw;
    }
    return worst;
}

double hermiticity_residual(const CMat& K) {
    const double scale = std::max(1.0, K.lpNorm<Eigen::Infinity>());
    return (K - K.adjoint()).lpNorm<Eigen::Infinity>() / scale;
}

}  // namespace

std::vector<VerifyCheck> run_verification(const VerifyOptions& opts) {
    std::vector<VerifyCheck> checks;
    const double hbar = opts.hbar;
    const Grid g256(256, -12.0, 12.0, hbar);
    const Grid g512(512, -12.0, 12.0, hbar);
    const Grid g1024(1024, -12.0, 12.0, hbar);

    // --- Jacobians of flows are symplectic. ---
    {
        const PhaseSpacePoint z0(1.0, 0.5);
        checks.push_back(make_check(
            "symplecticity_oscillator",
            max_symplectic_defect(presets::oscillator(), z0, kTwoPi, 4000), 1e-8));
        checks.push_back(make_check(
            "symplecticity_driven_oscillator",
            max_symplectic_defect(presets::driven_oscillator(), z0, kTwoPi, 4000), 1e-8));
        const HamiltonianSpec pend = truncate_support(
            presets::pendulum(), BumpTruncation(PhaseSpacePoint(0.0, 0.0), 5.0, 9.0));
        checks.push_back(make_check("symplecticity_pendulum",
                                    max_symplectic_defect(pend, z0, kTwoPi, 4000), 1e-8));
    }

    // --- Group algebra of flows at t = 0.7. ---
    {
        const double t = 0.7;
        const auto pts = sample_points(opts.seed, 10, 1.5);
        const HamiltonianSpec H = presets::oscillator();
        const HamiltonianSpec K = presets::shear_xp();

        const HamiltonianSpec HK = compose_hamiltonians(H, K, 200);
        checks.push_back(make_check(
            "flow_composition",
            flow_identity_residual(HK, 200,
                                   [&](const PhaseSpacePoint& z) {
                                       return flow_point(H, flow_point(K, z, 0, t, 400), 0, t,
                                                         400);
                                   },
                                   pts, t),
            1e-6));

        const HamiltonianSpec Hinv = invert_hamiltonian(H, 200);
        checks.push_back(make_check(
            "flow_inverse",
            flow_identity_residual(Hinv, 200,
                                   [&](const PhaseSpacePoint& z) {
                                       // target: the inverse of the H-flow
                                       return flow_point(H, z, t, 0, 400);
                                   },
                                   pts, t),
            1e-6));

        Mat s(2, 2);
        s << 1.0, 1.0, 0.0, 1.0;
        const HamiltonianSpec Hc = conjugate_hamiltonian(H, s);
        checks.push_back(make_check(
            "flow_conjugation",
            flow_identity_residual(Hc, 400,
                                   [&](const PhaseSpacePoint& z) {
                                       const Vec w = s.inverse() * z.to_vector();
                                       const PhaseSpacePoint fz = flow_point(
                                           H, PhaseSpacePoint::from_vector(w), 0, t, 400);
                                       return PhaseSpacePoint::from_vector(s * fz.to_vector());
                                   },
                                   pts, t),
            1e-6));
    }

    // --- Reconstruction of H from its flow family. ---
    {
        const auto pts = sample_points(opts.seed + 1, 8, 2.0);
        const FlowFamily rotation = [](const PhaseSpacePoint& z, double t) {
            const double c = std::cos(t), s = std::sin(t);
            return PhaseSpacePoint(c * z.x(0) + s * z.p(0), -s * z.x(0) + c * z.p(0));
        };
        const FlowFamily shear = [](const PhaseSpacePoint& z, double t) {
            return PhaseSpacePoint(z.x(0) + t * z.p(0), z.p(0));
        };
        double fw = 0;
        const double r1 = banyaga_residual(
            rotation,
            [](const PhaseSpacePoint& z) {
                return 0.5 * (z.x(0) * z.x(0) + z.p(0) * z.p(0));
            },
            pts, &fw);
        checks.push_back(make_check("banyaga_rotation", std::max(r1, fw), 1e-4));
        const double r2 = banyaga_residual(
            shear, [](const PhaseSpacePoint& z) { return 0.5 * z.p(0) * z.p(0); }, pts, &fw);
        checks.push_back(make_check("banyaga_shear", std::max(r2, fw), 1e-4));
    }

    // --- Energy bookkeeping on the extended phase space. ---
    {
        const HamiltonianSpec H = presets::driven_oscillator();
        ExtendedPoint z0;
        z0.z = PhaseSpacePoint(1.0, 0.3);
        z0.t = 0.0;
        z0.E = H(z0.z, 0.0);
        const ExtendedPoint zt = extended_flow(H, z0, 1.0, 2000);
        const PhaseSpacePoint direct = flow_point(H, z0.z, 0.0, 1.0, 2000);
        const double res =
            std::max({std::abs(zt.t - 1.0), std::abs(zt.E - H(zt.z, zt.t)),
                      (zt.z.to_vector() - direct.to_vector()).lpNorm<Eigen::Infinity>()});
        checks.push_back(make_check("extended_energy", res, 1e-6));
    }

    // --- Quadratic Fourier transforms: unitarity and inverse. ---
    {
        // L commensurate with dp/dx makes the discrete transform exactly
        // unitary; P and Q chirps are diagonal phases.
        const double L = g1024.dp() / g1024.dx();
        const QuadraticGeneratingFunction W =
            QuadraticGeneratingFunction::scalar(0.3, L, -0.4);
        std::mt19937 rng(static_cast<std::mt19937::result_type>(opts.seed + 2));
        double unit_res = 0, inv_res = 0;
        for (int i = 0; i < 100; ++i) {
            const WaveFunction psi = random_bandlimited(g1024, rng);
            const WaveFunction Spsi = apply_quadratic_fourier(W, psi);
            unit_res = std::max(unit_res, std::abs(Spsi.norm() - 1.0));
            const WaveFunction back = apply_quadratic_fourier(W.dual(), Spsi);
            inv_res = std::max(inv_res,
                               std::sqrt((back.values - psi.values).squaredNorm() * g1024.dx()));
        }
        checks.push_back(make_check("metaplectic_unitarity", unit_res, 1e-6));
        checks.push_back(make_check("metaplectic_inverse", inv_res, 1e-6));
    }

    // --- Gaussian covariance transport under quadratic Fourier transforms. ---
    {
        const std::vector<QuadraticGeneratingFunction> Ws = {
            QuadraticGeneratingFunction::scalar(0.0, 1.0, 0.0),
            QuadraticGeneratingFunction::scalar(1.0, 1.0, 1.0),
            QuadraticGeneratingFunction::scalar(0.5, -1.3, 0.2),
        };
        double worst = 0;
        for (const auto& W : Ws) {
            const Mat s = project_metaplectic(W);
            const WaveFunction psi0 = coherent_state(g512, 0.3, -0.2, 1.1);
            const StateMoments m0 = state_moments(psi0);
            const WaveFunction psi1 = apply_quadratic_fourier(W, psi0);
            const StateMoments m1 = state_moments(psi1);
            const Mat pred = s * m0.covariance * s.transpose();
            worst = std::max(worst, (m1.covariance - pred).lpNorm<Eigen::Infinity>());
        }
        checks.push_back(make_check("metaplectic_covariance", worst, 1e-5));
    }

    // --- tau-calculus on the lattice. ---
    {
        const Symbol ax = Symbol::from_callable(
            [](double x, double) { return Complex(std::exp(-0.5 * x * x), 0.0); }, "a(x)",
            true);
        double mult_res = 0;
        const WaveFunction probe = coherent_state(g256, 0.7, -0.4);
        for (double tau : {0.0, 0.25, 0.5, 1.0}) {
            const WaveFunction got = apply_tau_operator(ax, tau, probe);
            CVec want = probe.values;
            for (Eigen::Index i = 0; i < g256.N; ++i)
                want(i) *= ax(g256.x_at(i), 0.0).real();
            mult_res = std::max(mult_res, (got.values - want).lpNorm<Eigen::Infinity>());
        }
        checks.push_back(make_check("tau_multiplication", mult_res, 1e-10));

        const Symbol ag = symbols::gaussian();
        const KernelMatrix km = symbol_to_kernel(ag, 0.5, g256);
        const Symbol back = kernel_to_symbol(km);
        checks.push_back(make_check(
            "tau_roundtrip", (back.sample(g256) - ag.sample(g256)).lpNorm<Eigen::Infinity>(),
            1e-6));

        double herm = 0;
        for (const Symbol& a : {ag, symbols::xp()})
            herm = std::max(herm, hermiticity_residual(symbol_to_kernel(a, 0.5, g256).K));
        checks.push_back(make_check("tau_hermiticity", herm, 1e-10));
        checks.push_back(make_check(
            "tau_hermiticity_tau_zero_negative",
            hermiticity_residual(symbol_to_kernel(symbols::xp(), 0.0, g256).K), 1e-3, true));
    }

    // --- Symplectic covariance of the quantization. ---
    {
        const QuadraticGeneratingFunction WJ =
            QuadraticGeneratingFunction::scalar(0.0, 1.0, 0.0);
        const QuadraticGeneratingFunction Wshear =
            QuadraticGeneratingFunction::scalar(1.0, 1.0, 1.0);
        const Symbol a = symbols::gaussian();
        checks.push_back(make_check("covariance_fourier",
                                    covariance_residual(a, WJ, opts.covariance_tau, g256),
                                    1e-5));
        checks.push_back(make_check("covariance_shear",
                                    covariance_residual(a, Wshear, opts.covariance_tau, g256),
                                    1e-5));
        checks.push_back(make_check("covariance_tau_zero_negative",
                                    covariance_residual(a, WJ, 0.0, g256), 1e-2, true));
    }

    // --- Quadratic correspondence: moments and method agreement. ---
    {
        const QuadraticHamiltonian H = QuadraticHamiltonian::scalar(1, 0, 1, "oscillator");
        const int steps = static_cast<int>(std::ceil(kTwoPi / 1e-3));
        const std::vector<PhaseSpacePoint> probes = {PhaseSpacePoint(1.0, 0.0),
                                                     PhaseSpacePoint(0.5, 0.8)};
        const CorrespondenceReport rep = correspondence_roundtrip(
            H, g512, kTwoPi, probes, PropagationMethod::split_step, steps);
        checks.push_back(make_check("correspondence_center",
                                    rep.quantum_residuals.at("ehrenfest_center"), 1e-6));
        checks.push_back(make_check("correspondence_covariance",
                                    rep.quantum_residuals.at("ehrenfest_covariance"), 1e-5));

        const WaveFunction psi0 = coherent_state(g512, 1.0, 0.0);
        const WaveFunction a =
            propagate_schrodinger(H, psi0, kTwoPi, steps, PropagationMethod::eigensolve);
        const WaveFunction b =
            propagate_schrodinger(H, psi0, kTwoPi, steps, PropagationMethod::split_step);
        const WaveFunction c =
            propagate_schrodinger(H, psi0, kTwoPi, steps, PropagationMethod::metaplectic);
        auto l2 = [&](const WaveFunction& u, const WaveFunction& v) {
            return std::sqrt((u.values - v.values).squaredNorm() * g512.dx());
        };
        checks.push_back(make_check("correspondence_methods_agree",
                                    std::max({l2(a, b), l2(b, c), l2(a, c)}), 1e-5));
    }

    // --- Stone generator refinement orders. ---
    {
        const QuadraticHamiltonian H = QuadraticHamiltonian::scalar(1, 0, 1, "oscillator");
        const UnitaryFamily F = UnitaryFamily::from_quadratic(H, g256);
        const WaveFunction psi = coherent_state(g256, 1.0, 0.0);
        const CVec Hpsi = weyl_quantize_quadratic(H, g256).matrix * psi.values;
        auto err = [&](double dt, bool central) {
            const WaveFunction est = stone_generator_estimate(F, psi, dt, central);
            return std::sqrt((est.values - Hpsi).squaredNorm() * g256.dx());
        };
        const double f1 = err(1e-2, false), f2 = err(5e-3, false), f3 = err(2.5e-3, false);
        const double fwd_dev =
            std::max(std::abs(f1 / f2 - 2.0), std::abs(f2 / f3 - 2.0));
        checks.push_back(make_check("stone_forward", fwd_dev, 0.4));
        const double c1 = err(1e-2, true), c2 = err(5e-3, true), c3 = err(2.5e-3, true);
        const double cen_dev =
            std::max(std::abs(c1 / c2 - 4.0), std::abs(c2 / c3 - 4.0));
        checks.push_back(make_check("stone_central", cen_dev, 0.8));
    }

    // --- Extended Schrodinger equation for the dressed solution. ---
    {
        const QuadraticHamiltonian H = QuadraticHamiltonian::scalar(1, 0, 1, "oscillator");
        const UnitaryFamily F = UnitaryFamily::from_quadratic(H, g256);
        const WaveFunction psi0 = coherent_state(g256, 1.0, 0.0);
        const double dt = 1e-3;
        std::vector<double> times;
        std::vector<WaveFunction> path;
        for (int i = 0; i <= 20; ++i) {
            times.push_back(i * dt);
            path.push_back(F(psi0, i * dt));
        }
        const GridOperator Hop = weyl_quantize_quadratic(H, g256);
        checks.push_back(make_check(
            "extended_schrodinger",
            extended_schrodinger_check(times, path, Hop, 3.7), 1e-4));
    }

    std::sort(checks.begin(), checks.end(),
              [](const VerifyCheck& a, const VerifyCheck& b) { return a.name < b.name; });
    return checks;
}

bool all_pass(const std::vector<VerifyCheck>& checks) {
    return std::all_of(checks.begin(), checks.end(),
                       [](const VerifyCheck& c) { return c.pass; });
}

nlohmann::json verification_report(const std::vector<VerifyCheck>& checks) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
        arr.push_back({{"name", c.name},
                       {"residual", c.residual},
                       {"tolerance", c.tolerance},
                       {"negative_control", c.negative_control},
                       {"pass", c.pass}});
    }
    return {{"checks", arr}, {"all_pass", all_pass(checks)}};
}

}  // namespace hamlift
