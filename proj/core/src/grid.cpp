#include "hamlift/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace hamlift {

namespace {

std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

CVec fft_exec(const CVec& in, int sign) {
    const int N = static_cast<int>(in.size());
    CVec out(N);
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fftw_plan plan = fftw_plan_dft_1d(
            N,
            reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data())),
            reinterpret_cast<fftw_complex*>(out.data()), sign,
            FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }
    return out;
}

}  // namespace

CVec fft_forward(const CVec& in) { return fft_exec(in, FFTW_FORWARD); }

CVec fft_inverse(const CVec& in) {
    CVec out = fft_exec(in, FFTW_BACKWARD);
    out /= static_cast<double>(in.size());
    return out;
}

CVec scaled_dft(const CVec& a, double alpha) {
    const Eigen::Index N = a.size();
    // Bluestein: jj' = (j^2 + j'^2 - (j - j')^2) / 2.
    Eigen::Index M = 1;
    while (M < 2 * N - 1) M *= 2;
    CVec b = CVec::Zero(M), c = CVec::Zero(M);
    const Complex I(0.0, 1.0);
    for (Eigen::Index k = 0; k < N; ++k)
        b(k) = a(k) * std::exp(-I * (alpha * 0.5 * static_cast<double>(k) * static_cast<double>(k)));
    for (Eigen::Index m = -(N - 1); m <= N - 1; ++m) {
        const Eigen::Index idx = (m + M) % M;
        c(idx) = std::exp(I * (alpha * 0.5 * static_cast<double>(m) * static_cast<double>(m)));
    }
    const CVec conv = fft_inverse(fft_forward(b).cwiseProduct(fft_forward(c)));
    CVec out(N);
    for (Eigen::Index j = 0; j < N; ++j)
        out(j) = conv(j) *
                 std::exp(-I * (alpha * 0.5 * static_cast<double>(j) * static_cast<double>(j)));
    return out;
}

Grid::Grid(Eigen::Index N_, double x_min_, double x_max_, double hbar_)
    : N(N_), x_min(x_min_), x_max(x_max_), hbar(hbar_) {
    if (N < 16 || (N & (N - 1)) != 0)
        throw std::invalid_argument("Grid: N must be a power of two >= 16");
    if (!(x_max > x_min)) throw std::invalid_argument("Grid: x_max must exceed x_min");
    if (!(hbar > 0)) throw std::invalid_argument("Grid: hbar must be positive");
}

double Grid::dp() const { return 2.0 * M_PI * hbar / (static_cast<double>(N) * dx()); }

Vec Grid::x_lattice() const {
    Vec x(N);
    for (Eigen::Index i = 0; i < N; ++i) x(i) = x_at(i);
    return x;
}

Vec Grid::p_lattice() const {
    Vec p(N);
    for (Eigen::Index k = 0; k < N; ++k) p(k) = p_at(k);
    return p;
}

WaveFunction::WaveFunction(Grid g, CVec v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.N)
        throw std::invalid_argument("WaveFunction: value count must match grid");
    if (!values.allFinite())
        throw std::invalid_argument("WaveFunction: entries must be finite");
}

double WaveFunction::norm() const {
    return std::sqrt(values.squaredNorm() * grid.dx());
}

WaveFunction WaveFunction::normalized() const {
    const double n = norm();
    if (n == 0.0) throw std::runtime_error("WaveFunction: cannot normalize the zero state");
    return {grid, values / n};
}

Complex inner(const WaveFunction& a, const WaveFunction& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("inner: grid mismatch");
    return a.values.dot(b.values) * a.grid.dx();
}

WaveFunction coherent_state(const Grid& g, double x0, double p0, double squeeze) {
    const double hbar = g.hbar;
    const double s2 = squeeze * squeeze;
    CVec v(g.N);
    const Complex I(0.0, 1.0);
    for (Eigen::Index i = 0; i < g.N; ++i) {
        const double x = g.x_at(i);
        v(i) = std::exp(-(x - x0) * (x - x0) / (2.0 * hbar * s2) +
                        I * (p0 * (x - 0.5 * x0) / hbar));
    }
    WaveFunction psi(g, std::move(v));
    return psi.normalized();
}

CVec to_momentum(const Grid& g, const CVec& psi) {
    // phi(p_k) = (2 pi hbar)^{-1/2} dx sum_j e^{-i p_k x_j / hbar} psi_j
    // with p_k = dp (k - N/2), x_j = x_min + j dx. The j-dependent part of
    // the phase splits into a DFT kernel times (-1)^j.
    const Eigen::Index N = g.N;
    const Complex I(0.0, 1.0);
    CVec tmp(N);
    for (Eigen::Index j = 0; j < N; ++j)
        tmp(j) = psi(j) * (j % 2 == 0 ? 1.0 : -1.0);
    CVec out = fft_forward(tmp);
    const double c = g.dx() / std::sqrt(2.0 * M_PI * g.hbar);
    for (Eigen::Index k = 0; k < N; ++k) {
        const double pk = g.p_at(k);
        out(k) *= c * std::exp(-I * (pk * g.x_min / g.hbar));
    }
    return out;
}

CVec to_position(const Grid& g, const CVec& phi) {
    const Eigen::Index N = g.N;
    const Complex I(0.0, 1.0);
    CVec tmp(N);
    for (Eigen::Index k = 0; k < N; ++k)
        tmp(k) = phi(k) * std::exp(I * (g.p_at(k) * g.x_min / g.hbar));
    CVec out = fft_inverse(tmp);
    const double c = static_cast<double>(N) * g.dp() / std::sqrt(2.0 * M_PI * g.hbar);
    for (Eigen::Index j = 0; j < N; ++j)
        out(j) *= c * (j % 2 == 0 ? 1.0 : -1.0);
    return out;
}

StateMoments state_moments(const WaveFunction& psi_in) {
    const WaveFunction psi = psi_in.normalized();
    const Grid& g = psi.grid;
    const Eigen::Index N = g.N;
    double mx = 0, mx2 = 0;
    for (Eigen::Index i = 0; i < N; ++i) {
        const double w = std::norm(psi.values(i)) * g.dx();
        mx += g.x_at(i) * w;
        mx2 += g.x_at(i) * g.x_at(i) * w;
    }
    const CVec phi = to_momentum(g, psi.values);
    double mp = 0, mp2 = 0;
    for (Eigen::Index k = 0; k < N; ++k) {
        const double w = std::norm(phi(k)) * g.dp();
        mp += g.p_at(k) * w;
        mp2 += g.p_at(k) * g.p_at(k) * w;
    }
    // Symmetrized cross moment <(x p + p x)/2> = Re <x psi, p psi>.
    CVec pphi = phi;
    for (Eigen::Index k = 0; k < N; ++k) pphi(k) *= g.p_at(k);
    const CVec ppsi = to_position(g, pphi);
    Complex cross(0, 0);
    for (Eigen::Index i = 0; i < N; ++i)
        cross += std::conj(psi.values(i) * g.x_at(i)) * ppsi(i) * g.dx();
    const double mxp = cross.real();

    StateMoments out;
    out.mean_x = mx;
    out.mean_p = mp;
    out.covariance = Mat(2, 2);
    out.covariance << mx2 - mx * mx, mxp - mx * mp, mxp - mx * mp, mp2 - mp * mp;
    return out;
}

}  // namespace hamlift
