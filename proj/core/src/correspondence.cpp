#include "hamlift/correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace hamlift {

namespace {

const Complex kI(0.0, 1.0);

struct EigenPropagator {
    CMat V;
    Vec E;
    Grid grid;

    WaveFunction apply(const WaveFunction& psi, double t) const {
        CVec c = V.adjoint() * psi.values;
        for (Eigen::Index k = 0; k < E.size(); ++k)
            c(k) *= std::exp(-kI * (E(k) * t / grid.hbar));
        return {grid, V * c};
    }
};

std::shared_ptr<EigenPropagator> diagonalize(const QuadraticHamiltonian& H, const Grid& g) {
    CMat Hm = weyl_quantize_quadratic(H, g).matrix;
    Hm = 0.5 * (Hm + Hm.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<CMat> es(Hm);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("propagate_schrodinger: eigensolve failed");
    auto prop = std::make_shared<EigenPropagator>();
    prop->V = es.eigenvectors();
    prop->E = es.eigenvalues();
    prop->grid = g;
    return prop;
}

WaveFunction propagate_metaplectic(const QuadraticHamiltonian& H, const WaveFunction& psi0,
                                   double t) {
    const Grid& g = psi0.grid;
    const Mat M = H.M(0.0);
    const Mat JM = standard_symplectic(1).J * M;
    if (t == 0.0 || JM.lpNorm<Eigen::Infinity>() < 1e-14) return psi0;

    // Slice exp(t J M) and write each slice as S = (S J^{-1}) J: the right
    // factor is the plain Fourier element and for near-identity slices the
    // left factor S J^{-1} = [[b, -a], [d, -c]] is free with chirps of order
    // |b/a| and |c/a|, which stay inside the Nyquist band as the slices
    // shrink. The phase of <probe, U_slice probe> identifies the
    // metaplectic sign of the slice.
    const double x_big = std::max(std::abs(g.x_min), std::abs(g.x_max));
    const double band = 0.9 * M_PI / g.dx();
    const auto WJ = QuadraticGeneratingFunction::scalar(0.0, 1.0, 0.0);
    int nslices = std::max(1, static_cast<int>(std::ceil(std::abs(t) / 0.8)));
    QuadraticGeneratingFunction W1 = WJ;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 64)
            throw std::runtime_error("propagate_schrodinger: no admissible free slicing found");
        const Mat A = (t / nslices) * JM;
        const Mat S = A.exp();
        const double scale = std::max(1.0, S.lpNorm<Eigen::Infinity>());
        if (std::abs(S(0, 0)) < 1e-3 * scale) {  // S J^{-1} not safely free
            ++nslices;
            continue;
        }
        W1 = symplectic_to_generating(S * standard_symplectic(1).J.inverse());
        // chirp and output-band Nyquist margins for the left factor
        if (std::max({std::abs(W1.P(0, 0)), std::abs(W1.Q(0, 0)), std::abs(W1.L(0, 0))}) *
                x_big >
            band) {
            ++nslices;
            continue;
        }
        break;
    }

    const WaveFunction probe = coherent_state(g, 0.0, 0.0);
    const auto apply_slice = [&](const WaveFunction& v) {
        return apply_quadratic_fourier(W1, apply_quadratic_fourier(WJ, v));
    };
    const Complex overlap = inner(probe, apply_slice(probe));
    const double sign = (overlap.real() >= 0.0) ? 1.0 : -1.0;

    WaveFunction psi = psi0;
    for (int s = 0; s < nslices; ++s) {
        psi = apply_slice(psi);
        psi.values *= sign;
    }
    return psi;
}

}  // namespace

UnitaryFamily UnitaryFamily::identity(const Grid& g) {
    return {[](const WaveFunction& psi, double) { return psi; }, g, "identity"};
}

UnitaryFamily UnitaryFamily::from_quadratic(const QuadraticHamiltonian& H, const Grid& g,
                                            PropagationMethod method, int steps_per_unit) {
    if (method == PropagationMethod::eigensolve) {
        auto prop = diagonalize(H, g);
        return {[prop](const WaveFunction& psi, double t) { return prop->apply(psi, t); }, g,
                H.label};
    }
    return {[H, g, method, steps_per_unit](const WaveFunction& psi, double t) {
                const int steps =
                    std::max(1, static_cast<int>(std::ceil(std::abs(t) * steps_per_unit)));
                return propagate_schrodinger(H, psi, t, steps, method);
            },
            g, H.label};
}

WaveFunction propagate_split_step(const std::function<double(double)>& T,
                                  const std::function<double(double)>& V,
                                  const WaveFunction& psi0, double t, int steps) {
    if (steps < 1) throw std::invalid_argument("propagate_split_step: steps must be positive");
    const Grid& g = psi0.grid;
    const double dt = t / steps;
    CVec kick(g.N), drift(g.N);
    for (Eigen::Index i = 0; i < g.N; ++i)
        kick(i) = std::exp(-kI * (V(g.x_at(i)) * 0.5 * dt / g.hbar));
    for (Eigen::Index k = 0; k < g.N; ++k)
        drift(k) = std::exp(-kI * (T(g.p_at(k)) * dt / g.hbar));
    CVec v = psi0.values;
    for (int s = 0; s < steps; ++s) {
        v = v.cwiseProduct(kick);
        v = to_position(g, to_momentum(g, v).cwiseProduct(drift));
        v = v.cwiseProduct(kick);
    }
    if (!v.allFinite())
        throw std::runtime_error("propagate_split_step: non-finite amplitudes");
    return {g, std::move(v)};
}

WaveFunction propagate_schrodinger(const QuadraticHamiltonian& H, const WaveFunction& psi0,
                                   double t, int steps, PropagationMethod method) {
    if (H.time_dependent)
        throw std::invalid_argument("propagate_schrodinger: time-independent blocks required");
    switch (method) {
        case PropagationMethod::eigensolve:
            return diagonalize(H, psi0.grid)->apply(psi0, t);
        case PropagationMethod::split_step: {
            const Mat M = H.M(0.0);
            if (std::abs(M(0, 1)) > 1e-14)
                throw std::invalid_argument(
                    "propagate_schrodinger: split_step requires a vanishing cross block");
            const double A = M(0, 0), C = M(1, 1);
            return propagate_split_step([C](double p) { return 0.5 * C * p * p; },
                                        [A](double x) { return 0.5 * A * x * x; }, psi0, t,
                                        steps);
        }
        case PropagationMethod::metaplectic:
            return propagate_metaplectic(H, psi0, t);
    }
    throw std::invalid_argument("propagate_schrodinger: unknown method");
}

WaveFunction stone_generator_estimate(const UnitaryFamily& F, const WaveFunction& psi,
                                      double dt, bool central) {
    if (!(dt > 0)) throw std::invalid_argument("stone_generator_estimate: dt must be positive");
    const double hbar = psi.grid.hbar;
    if (central) {
        const WaveFunction fp = F(psi, dt), fm = F(psi, -dt);
        return {psi.grid, kI * hbar * (fp.values - fm.values) / (2.0 * dt)};
    }
    const WaveFunction fp = F(psi, dt);
    return {psi.grid, kI * hbar * (fp.values - psi.values) / dt};
}

CorrespondenceReport correspondence_roundtrip(const QuadraticHamiltonian& H, const Grid& g,
                                              double t,
                                              const std::vector<PhaseSpacePoint>& probe_centers,
                                              PropagationMethod method, int steps) {
    if (H.n != 1)
        throw std::invalid_argument("correspondence_roundtrip: n = 1 only");
    CorrespondenceReport rep;
    rep.hamiltonian_label = H.label;
    {
        std::ostringstream os;
        os << "N=" << g.N << ";x_min=" << g.x_min << ";x_max=" << g.x_max << ";t=" << t
           << ";steps=" << steps << ";method="
           << (method == PropagationMethod::eigensolve
                   ? "eigensolve"
                   : method == PropagationMethod::split_step ? "split_step" : "metaplectic");
        rep.parameters = os.str();
    }

    const HamiltonianSpec spec = H.to_spec();

    // Leg 1: classical flow and Jacobian.
    const PhaseSpacePoint origin(0.0, 0.0);
    const JacobianTrajectory jt = integrate_variational(spec, origin, 0.0, t, steps);
    const Mat St = jt.final_jacobian();
    rep.classical_residuals["jacobian_symplecticity"] = symplecticity_defect(St);

    // Legs 2-3: propagation, norm, Ehrenfest first and second moments.
    double norm_res = 0, center_res = 0, cov_res = 0;
    for (const auto& z0 : probe_centers) {
        const WaveFunction psi0 = coherent_state(g, z0.x(0), z0.p(0));
        const WaveFunction psit = propagate_schrodinger(H, psi0, t, steps, method);
        norm_res = std::max(norm_res, std::abs(psit.norm() - psi0.norm()));

        const PhaseSpacePoint zt = flow_point(spec, z0, 0.0, t, steps);
        const StateMoments m0 = state_moments(psi0);
        const StateMoments mt = state_moments(psit);
        center_res = std::max({center_res, std::abs(mt.mean_x - zt.x(0)),
                               std::abs(mt.mean_p - zt.p(0))});
        const Mat pred = St * m0.covariance * St.transpose();
        cov_res = std::max(cov_res, (mt.covariance - pred).lpNorm<Eigen::Infinity>());
    }
    rep.quantum_residuals["norm_conservation"] = norm_res;
    rep.quantum_residuals["ehrenfest_center"] = center_res;
    rep.quantum_residuals["ehrenfest_covariance"] = cov_res;

    // Leg 4: conjugation by the Fourier symplectic map along both routes.
    const QuadraticGeneratingFunction WJ = QuadraticGeneratingFunction::scalar(0.0, 1.0, 0.0);
    const Mat s = project_metaplectic(WJ);
    const Mat sinv = s.inverse();
    const Mat Mc = sinv.transpose() * H.M(0.0) * sinv;
    const QuadraticHamiltonian Hc = QuadraticHamiltonian::constant(Mc, H.label + "∘s⁻¹");
    const CMat S = quadratic_fourier_matrix(WJ, g).matrix;
    const CMat Sinv = quadratic_fourier_matrix(WJ.dual(), g).matrix;
    double conj_res = 0;
    for (const auto& z0 : probe_centers) {
        const WaveFunction psi0 = coherent_state(g, z0.x(0), z0.p(0));
        const WaveFunction lhs = propagate_schrodinger(Hc, psi0, t, steps, method);
        const WaveFunction inner_state{g, Sinv * psi0.values};
        const CVec rhs = S * propagate_schrodinger(H, inner_state, t, steps, method).values;
        conj_res = std::max(conj_res,
                            std::sqrt((lhs.values - rhs).squaredNorm() * g.dx()));
    }
    rep.quantum_residuals["conjugation"] = conj_res;

    double worst = 0;
    for (const auto& kv : rep.classical_residuals) worst = std::max(worst, kv.second);
    for (const auto& kv : rep.quantum_residuals) worst = std::max(worst, kv.second);
    rep.roundtrip_residual = worst;
    return rep;
}

double extended_schrodinger_check(const std::vector<double>& times,
                                  const std::vector<WaveFunction>& path,
                                  const GridOperator& Hop, double E,
                                  const std::vector<double>& tprime_samples, double dtp) {
    if (times.size() != path.size())
        throw std::invalid_argument("extended_schrodinger_check: sample count mismatch");
    if (times.size() < 3)
        throw std::invalid_argument("extended_schrodinger_check: need at least 3 time samples");
    const Grid& g = path.front().grid;
    const double hbar = g.hbar;
    const double dt = times[1] - times[0];
    const std::vector<double> tps =
        tprime_samples.empty() ? std::vector<double>{0.0, 0.1, 0.7} : tprime_samples;

    auto phase = [&](double t, double tp) {
        return std::exp(kI * (E * (t - tp) / hbar));
    };

    double worst = 0;
    for (std::size_t i = 1; i + 1 < times.size(); ++i) {
        for (double tp : tps) {
            const CVec Psi = path[i].values * phase(times[i], tp);
            const CVec dPsi_dt = (path[i + 1].values * phase(times[i + 1], tp) -
                                  path[i - 1].values * phase(times[i - 1], tp)) /
                                 (2.0 * dt);
            const Complex dphase_dtp =
                (phase(times[i], tp + dtp) - phase(times[i], tp - dtp)) / (2.0 * dtp);
            const CVec lhs = kI * hbar * dphase_dtp * path[i].values;
            const CVec rhs = Hop.matrix * Psi - kI * hbar * dPsi_dt;
            worst = std::max(worst, std::sqrt((lhs - rhs).squaredNorm() * g.dx()));
        }
    }
    return worst;
}

}  // namespace hamlift
