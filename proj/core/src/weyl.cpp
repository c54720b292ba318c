#include "hamlift/weyl.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <utility>

namespace hamlift {

namespace {

const Complex kI(0.0, 1.0);

Eigen::Index wrap(Eigen::Index i, Eigen::Index N) { return ((i % N) + N) % N; }

double parity(Eigen::Index d) { return (wrap(d, 2) == 0) ? 1.0 : -1.0; }

// Circular band-limited resampling: value of the trigonometric interpolant
// of h at the shifted points u + delta, u = 0..N-1.
CVec fractional_shift(const CVec& h, double delta) {
    const Eigen::Index N = h.size();
    CVec hat = fft_forward(h);
    for (Eigen::Index k = 0; k < N; ++k) {
        if (k == N / 2) {
            hat(k) *= std::cos(M_PI * delta);
        } else {
            const double f = (k < N / 2) ? static_cast<double>(k)
                                         : static_cast<double>(k - N);
            hat(k) *= std::exp(kI * (2.0 * M_PI * f * delta / static_cast<double>(N)));
        }
    }
    return fft_inverse(hat);
}

}  // namespace

CMat Symbol::sample(const Grid& g) const {
    CMat table(g.N, g.N);
    for (Eigen::Index i = 0; i < g.N; ++i)
        for (Eigen::Index k = 0; k < g.N; ++k) table(i, k) = f(g.x_at(i), g.p_at(k));
    return table;
}

Symbol Symbol::from_callable(std::function<Complex(double, double)> f, std::string label,
                             bool real_valued) {
    Symbol s;
    s.f = std::move(f);
    s.label = std::move(label);
    s.real_valued = real_valued;
    return s;
}

Symbol Symbol::from_table(CMat table, Grid g, std::string label) {
    Symbol s;
    s.label = std::move(label);
    auto tbl = std::make_shared<CMat>(std::move(table));
    s.f = [tbl, g](double x, double p) -> Complex {
        const Eigen::Index N = g.N;
        const double fi = (x - g.x_min) / g.dx();
        const double fk = p / g.dp() + static_cast<double>(N) / 2.0;
        const Eigen::Index i0 = static_cast<Eigen::Index>(std::floor(fi));
        const Eigen::Index k0 = static_cast<Eigen::Index>(std::floor(fk));
        const double wi = fi - std::floor(fi), wk = fk - std::floor(fk);
        const Complex v00 = (*tbl)(wrap(i0, N), wrap(k0, N));
        const Complex v01 = (*tbl)(wrap(i0, N), wrap(k0 + 1, N));
        const Complex v10 = (*tbl)(wrap(i0 + 1, N), wrap(k0, N));
        const Complex v11 = (*tbl)(wrap(i0 + 1, N), wrap(k0 + 1, N));
        return (1 - wi) * ((1 - wk) * v00 + wk * v01) + wi * ((1 - wk) * v10 + wk * v11);
    };
    return s;
}

Symbol Symbol::pullback_inverse(const Mat& s) const {
    if (s.rows() != 2 || s.cols() != 2)
        throw std::invalid_argument("Symbol::pullback_inverse: 2x2 matrix expected");
    if (!is_symplectic(s, 1e-8))
        throw std::invalid_argument("Symbol::pullback_inverse: matrix is not symplectic");
    const Mat sinv = s.inverse();
    auto base = f;
    return from_callable(
        [base, sinv](double x, double p) {
            return base(sinv(0, 0) * x + sinv(0, 1) * p, sinv(1, 0) * x + sinv(1, 1) * p);
        },
        label + "∘s⁻¹", real_valued);
}

namespace symbols {

Symbol one() {
    return Symbol::from_callable([](double, double) { return Complex(1.0, 0.0); }, "1", true);
}
Symbol x() {
    return Symbol::from_callable([](double x, double) { return Complex(x, 0.0); }, "x", true);
}
Symbol p() {
    return Symbol::from_callable([](double, double p) { return Complex(p, 0.0); }, "p", true);
}
Symbol xp() {
    return Symbol::from_callable([](double x, double p) { return Complex(x * p, 0.0); }, "xp",
                                 true);
}
Symbol p_squared() {
    return Symbol::from_callable([](double, double p) { return Complex(p * p, 0.0); }, "p2",
                                 true);
}
Symbol gaussian(double width) {
    const double w2 = width * width;
    return Symbol::from_callable(
        [w2](double x, double p) {
            return Complex(std::exp(-(x * x + p * p) / (2.0 * w2)), 0.0);
        },
        "gaussian", true);
}
Symbol by_name(const std::string& name) {
    if (name == "1" || name == "one") return one();
    if (name == "x") return x();
    if (name == "p") return p();
    if (name == "xp") return xp();
    if (name == "p2") return p_squared();
    if (name == "gaussian") return gaussian();
    throw std::invalid_argument("unknown symbol: " + name);
}

}  // namespace symbols

TauParameter::TauParameter(double t) : tau(t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("TauParameter: tau must lie in [0, 1]");
}

KernelMatrix symbol_to_kernel(const Symbol& a, TauParameter tau, const Grid& g) {
    const Eigen::Index N = g.N;
    const double t = tau.tau;
    const double scale = 1.0 / (static_cast<double>(N) * g.dx());  // dp / (2 pi hbar)

    // Midpoints depend on (i, j) only through s = (1-tau) i + tau j.
    // For the rational taus in practice there are O(N) distinct values,
    // each served by one length-N FFT over the momentum lattice.
    std::map<long long, Eigen::Index> s_index;
    auto s_key = [t, N](Eigen::Index i, Eigen::Index j) {
        const double s = (1.0 - t) * static_cast<double>(i) + t * static_cast<double>(j);
        (void)N;
        return std::llround(s * 1048576.0);
    };
    for (Eigen::Index i = 0; i < N && static_cast<Eigen::Index>(s_index.size()) <= 8 * N; ++i)
        for (Eigen::Index j = 0; j < N; ++j)
            s_index.emplace(s_key(i, j), 0);

    CMat K(N, N);
    if (static_cast<Eigen::Index>(s_index.size()) <= 8 * N) {
        Eigen::Index idx = 0;
        for (auto& kv : s_index) kv.second = idx++;
        CMat F(s_index.size(), N);
        for (const auto& [key, row] : s_index) {
            const double m = g.x_min + g.dx() * (static_cast<double>(key) / 1048576.0);
            CVec am(N);
            for (Eigen::Index k = 0; k < N; ++k) am(k) = a(m, g.p_at(k));
            F.row(row) = static_cast<double>(N) * fft_inverse(am);
        }
        for (Eigen::Index i = 0; i < N; ++i)
            for (Eigen::Index j = 0; j < N; ++j)
                K(i, j) = scale * parity(i - j) *
                          F(s_index.at(s_key(i, j)), wrap(i - j, N));
    } else {
        // Irrational tau: direct sum with a precomputed twiddle table.
        CVec tw(N);
        for (Eigen::Index u = 0; u < N; ++u)
            tw(u) = std::exp(kI * (2.0 * M_PI * static_cast<double>(u) / static_cast<double>(N)));
        for (Eigen::Index i = 0; i < N; ++i) {
            for (Eigen::Index j = 0; j < N; ++j) {
                const double m = g.x_min + g.dx() * ((1.0 - t) * i + t * j);
                const Eigen::Index d = wrap(i - j, N);
                Complex sum(0, 0);
                for (Eigen::Index k = 0; k < N; ++k) sum += a(m, g.p_at(k)) * tw((k * d) % N);
                K(i, j) = scale * parity(i - j) * sum;
            }
        }
    }
    return {std::move(K), g, t};
}

Symbol kernel_to_symbol(const KernelMatrix& km) {
    const Grid& g = km.grid;
    const Eigen::Index N = g.N;
    const double t = km.tau;

    // Resample the kernel on the sheared lattice: for each diagonal
    // u - v = d the needed points K(i + tau d, i - (1-tau) d) lie on that
    // diagonal at a uniform fractional offset tau*d, handled by band-limited
    // interpolation along the diagonal. For tau in {0, 1} the wrapped
    // entries K(u, u - d + N) carry the same midpoint slice modulo the
    // period, so circular interpolation is exact. For fractional tau the
    // wrapped entries sample midpoints displaced by tau*N*dx and must not
    // be mixed in; the unwrapped run is zero-extended to twice the length
    // and shifted non-circularly instead (kernels of symbols that decay
    // inside the domain vanish there anyway).
    const bool integer_branch = (t == 0.0) || (t == 1.0);
    CMat G(N, N);  // G(i, l): sheared kernel at x_i, y = dx (l - N/2)
    for (Eigen::Index l = 0; l < N; ++l) {
        const Eigen::Index d = l - N / 2;
        if (integer_branch) {
            CVec h(N);
            for (Eigen::Index u = 0; u < N; ++u) h(u) = km.K(u, wrap(u - d, N));
            G.col(l) = fractional_shift(h, t * static_cast<double>(d));
        } else {
            CVec h = CVec::Zero(2 * N);
            const Eigen::Index u_lo = std::max<Eigen::Index>(0, d);
            const Eigen::Index u_hi = std::min(N, N + d);
            for (Eigen::Index u = u_lo; u < u_hi; ++u) h(u) = km.K(u, u - d);
            G.col(l) = fractional_shift(h, t * static_cast<double>(d)).head(N);
        }
    }

    CMat table(N, N);
    for (Eigen::Index i = 0; i < N; ++i) {
        CVec row(N);
        for (Eigen::Index l = 0; l < N; ++l) row(l) = G(i, l) * parity(l);
        const CVec hat = fft_forward(row);
        for (Eigen::Index k = 0; k < N; ++k) table(i, k) = g.dx() * parity(k) * hat(k);
    }
    return Symbol::from_table(std::move(table), g, "a_tau");
}

GridOperator tau_operator_matrix(const Symbol& a, TauParameter tau, const Grid& g) {
    KernelMatrix km = symbol_to_kernel(a, tau, g);
    return {km.K * g.dx(), g};
}

WaveFunction apply_tau_operator(const Symbol& a, TauParameter tau, const WaveFunction& psi) {
    return tau_operator_matrix(a, tau, psi.grid).apply(psi);
}

GridOperator momentum_operator(const Grid& g) {
    const Eigen::Index N = g.N;
    CMat P(N, N);
    CVec e = CVec::Zero(N);
    for (Eigen::Index j = 0; j < N; ++j) {
        e(j) = 1.0;
        CVec phi = to_momentum(g, e);
        for (Eigen::Index k = 0; k < N; ++k) phi(k) *= g.p_at(k);
        P.col(j) = to_position(g, phi);
        e(j) = 0.0;
    }
    return {std::move(P), g};
}

GridOperator weyl_quantize_quadratic(const QuadraticHamiltonian& H, const Grid& g) {
    if (H.n != 1)
        throw std::invalid_argument("weyl_quantize_quadratic: n = 1 grids only");
    if (H.time_dependent)
        throw std::invalid_argument("weyl_quantize_quadratic: time-independent blocks required");
    const Mat M = H.M(0.0);
    const double A = M(0, 0), B = M(0, 1), C = M(1, 1);
    const Eigen::Index N = g.N;
    const CMat P = momentum_operator(g).matrix;
    CVec xdiag(N);
    for (Eigen::Index i = 0; i < N; ++i) xdiag(i) = g.x_at(i);
    const CMat X = xdiag.asDiagonal();
    CMat op = 0.5 * A * X * X + 0.5 * B * (X * P + P * X) + 0.5 * C * P * P;
    return {std::move(op), g};
}

WaveFunction heisenberg_weyl(const PhaseSpacePoint& zp, const WaveFunction& psi) {
    if (zp.dim() != 1)
        throw std::invalid_argument("heisenberg_weyl: 1-D states only");
    const Grid& g = psi.grid;
    const Eigen::Index N = g.N;
    const long k = std::lround(zp.x(0) / g.dx());
    const long kappa = std::lround(zp.p(0) / g.dp());
    const double xs = static_cast<double>(k) * g.dx();
    const double ps = static_cast<double>(kappa) * g.dp();
    if (std::abs(xs - zp.x(0)) > 1e-9 || std::abs(ps - zp.p(0)) > 1e-9)
        std::fprintf(stderr,
                     "hamlift: heisenberg_weyl displacement snapped to lattice "
                     "(%.3e, %.3e) -> (%.3e, %.3e)\n",
                     zp.x(0), zp.p(0), xs, ps);
    CVec out(N);
    for (Eigen::Index j = 0; j < N; ++j) {
        const double x = g.x_at(j);
        out(j) = std::exp(kI * ((ps * x - 0.5 * ps * xs) / g.hbar)) *
                 psi.values(wrap(j - k, N));
    }
    return {g, std::move(out)};
}

Symbol symplectic_fourier(const Symbol& a, const Grid& g) {
    const Eigen::Index N = g.N;
    const double hbar = g.hbar;
    const double cx = g.dx() / std::sqrt(2.0 * M_PI * hbar);
    const double cp = g.dp() / std::sqrt(2.0 * M_PI * hbar);
    CMat E1(N, N), E2(N, N);
    for (Eigen::Index k = 0; k < N; ++k)
        for (Eigen::Index i = 0; i < N; ++i)
            E1(k, i) = cx * std::exp(-kI * (g.p_at(k) * g.x_at(i) / hbar));
    for (Eigen::Index i = 0; i < N; ++i)
        for (Eigen::Index k = 0; k < N; ++k)
            E2(i, k) = cp * std::exp(kI * (g.x_at(i) * g.p_at(k) / hbar));
    const CMat A = a.sample(g);
    const CMat C = E1 * A;          // C(k, k'') = sum_i'' E1(k, i'') A(i'', k'')
    CMat out = E2 * C.transpose();  // out(i, k)
    return Symbol::from_table(std::move(out), g, a.label + "_sigma");
}

WaveFunction apply_weyl_via_hw(const Symbol& a, const WaveFunction& psi) {
    const Grid& g = psi.grid;
    if (std::abs(g.x_min + g.x_max) > 1e-9 * std::abs(g.x_max))
        throw std::invalid_argument("apply_weyl_via_hw: centered grid required");
    const Eigen::Index N = g.N;
    const Symbol asig = symplectic_fourier(a, g);
    const double weight = g.dx() * g.dp() / (2.0 * M_PI * g.hbar);
    CVec acc = CVec::Zero(N);
    for (Eigen::Index i = 0; i < N; ++i) {
        const double xshift = g.x_at(i);  // centered grid: x_i are the shifts
        const Eigen::Index sh = i - N / 2;
        for (Eigen::Index k = 0; k < N; ++k) {
            const Complex c = asig(g.x_at(i), g.p_at(k)) * weight;
            if (std::abs(c) < 1e-300) continue;
            const double pk = g.p_at(k);
            for (Eigen::Index j = 0; j < N; ++j) {
                const double x = g.x_at(j);
                acc(j) += c * std::exp(kI * ((pk * x - 0.5 * pk * xshift) / g.hbar)) *
                          psi.values(wrap(j - sh, N));
            }
        }
    }
    return {g, std::move(acc)};
}

std::vector<WaveFunction> default_probe_states(const Grid& g) {
    const double specs[10][3] = {
        {0.0, 0.0, 1.0},  {1.0, 0.0, 1.0},   {0.0, 1.0, 1.0},  {-1.0, 0.5, 1.0},
        {0.5, -1.0, 1.0}, {2.0, 0.0, 0.8},   {0.0, 2.0, 1.2},  {-1.5, -1.0, 1.0},
        {1.0, 1.0, 0.9},  {-0.5, 1.5, 1.1},
    };
    std::vector<WaveFunction> out;
    out.reserve(10);
    for (const auto& s : specs) out.push_back(coherent_state(g, s[0], s[1], s[2]));
    return out;
}

double covariance_residual(const Symbol& a, const QuadraticGeneratingFunction& W,
                           TauParameter tau, const Grid& g,
                           const std::vector<WaveFunction>& probes_in) {
    const Mat s = project_metaplectic(W);
    const GridOperator op_pull = tau_operator_matrix(a.pullback_inverse(s), tau, g);
    const GridOperator op = tau_operator_matrix(a, tau, g);
    const CMat S = quadratic_fourier_matrix(W, g).matrix;
    const CMat Sinv = quadratic_fourier_matrix(W.dual(), g).matrix;
    const CMat diff = op_pull.matrix - S * op.matrix * Sinv;
    const std::vector<WaveFunction> probes =
        probes_in.empty() ? default_probe_states(g) : probes_in;
    double worst = 0.0;
    for (const auto& psi : probes) {
        const double r = std::sqrt((diff * psi.values).squaredNorm() * g.dx());
        worst = std::max(worst, r);
    }
    return worst;
}

}  // namespace hamlift
