#include "hamlift/phase_space.hpp"

#include <cmath>
#include <stdexcept>

namespace hamlift {

PhaseSpacePoint::PhaseSpacePoint(Vec x_, Vec p_) : x(std::move(x_)), p(std::move(p_)) {
    if (x.size() != p.size() || x.size() < 1)
        throw std::invalid_argument("PhaseSpacePoint: x and p must have equal length n >= 1");
    if (!x.allFinite() || !p.allFinite())
        throw std::invalid_argument("PhaseSpacePoint: entries must be finite");
}

PhaseSpacePoint::PhaseSpacePoint(double x1, double p1)
    : PhaseSpacePoint(Vec::Constant(1, x1), Vec::Constant(1, p1)) {}

Vec PhaseSpacePoint::to_vector() const {
    Vec z(2 * dim());
    z << x, p;
    return z;
}

PhaseSpacePoint PhaseSpacePoint::from_vector(const Vec& z) {
    if (z.size() % 2 != 0 || z.size() == 0)
        throw std::invalid_argument("PhaseSpacePoint: vector length must be even and positive");
    const Eigen::Index n = z.size() / 2;
    return {z.head(n), z.tail(n)};
}

SymplecticStructure standard_symplectic(Eigen::Index n) {
    if (n < 1) throw std::invalid_argument("standard_symplectic: n must be >= 1");
    Mat J = Mat::Zero(2 * n, 2 * n);
    J.topRightCorner(n, n) = Mat::Identity(n, n);
    J.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
    return {n, std::move(J)};
}

double symplectic_form(const Vec& z, const Vec& zp) {
    if (z.size() != zp.size() || z.size() % 2 != 0)
        throw std::invalid_argument("symplectic_form: dimension mismatch");
    const Eigen::Index n = z.size() / 2;
    // Jz . z' = p . x' - x . p'
    return z.tail(n).dot(zp.head(n)) - z.head(n).dot(zp.tail(n));
}

double symplectic_form(const PhaseSpacePoint& z, const PhaseSpacePoint& zp) {
    if (z.dim() != zp.dim())
        throw std::invalid_argument("symplectic_form: dimension mismatch");
    return z.p.dot(zp.x) - z.x.dot(zp.p);
}

double symplecticity_defect(const Mat& S) {
    if (S.rows() != S.cols() || S.rows() % 2 != 0 || S.rows() == 0)
        throw std::invalid_argument("symplecticity_defect: matrix must be square with even size");
    const Mat J = standard_symplectic(S.rows() / 2).J;
    return (S.transpose() * J * S - J).cwiseAbs().maxCoeff();
}

bool is_symplectic(const Mat& S, double tol) {
    return symplecticity_defect(S) <= tol;
}

QuadraticGeneratingFunction::QuadraticGeneratingFunction(Mat P_, Mat L_, Mat Q_, int maslov)
    : P(std::move(P_)), L(std::move(L_)), Q(std::move(Q_)) {
    const Eigen::Index n = L.rows();
    if (L.cols() != n || P.rows() != n || P.cols() != n || Q.rows() != n || Q.cols() != n)
        throw std::invalid_argument("QuadraticGeneratingFunction: P, L, Q must be n x n");
    if ((P - P.transpose()).cwiseAbs().maxCoeff() > 1e-12 ||
        (Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("QuadraticGeneratingFunction: P and Q must be symmetric");
    const double detL = L.determinant();
    if (detL == 0.0 || !std::isfinite(detL))
        throw std::invalid_argument("QuadraticGeneratingFunction: L must be invertible");
    if (maslov < 0) {
        m = detL > 0 ? 0 : 1;
    } else {
        m = maslov % 4;
    }
}

QuadraticGeneratingFunction QuadraticGeneratingFunction::scalar(double P, double L, double Q) {
    return {Mat::Constant(1, 1, P), Mat::Constant(1, 1, L), Mat::Constant(1, 1, Q)};
}

QuadraticGeneratingFunction QuadraticGeneratingFunction::dual() const {
    return {-Q, -L.transpose(), -P};
}

double QuadraticGeneratingFunction::operator()(const Vec& x, const Vec& xp) const {
    return 0.5 * x.dot(P * x) - x.dot(L * xp) + 0.5 * xp.dot(Q * xp);
}

Mat generating_to_symplectic(const QuadraticGeneratingFunction& W) {
    const Eigen::Index n = W.dim();
    const Mat Linv = W.L.inverse();
    Mat S(2 * n, 2 * n);
    S.topLeftCorner(n, n) = Linv * W.Q;
    S.topRightCorner(n, n) = Linv;
    S.bottomLeftCorner(n, n) = W.P * Linv * W.Q - W.L.transpose();
    S.bottomRightCorner(n, n) = Linv * W.P;
    return S;
}

QuadraticGeneratingFunction symplectic_to_generating(const Mat& S) {
    if (S.rows() != S.cols() || S.rows() % 2 != 0)
        throw std::invalid_argument("symplectic_to_generating: matrix must be square with even size");
    const Eigen::Index n = S.rows() / 2;
    const Mat B = S.topRightCorner(n, n);
    Eigen::FullPivLU<Mat> lu(B);
    if (!lu.isInvertible())
        throw std::invalid_argument("symplectic_to_generating: upper-right block is singular (S not free)");
    const Mat L = lu.inverse();
    Mat Q = L * S.topLeftCorner(n, n);
    Mat P = L * S.bottomRightCorner(n, n);
    // Symmetrize away roundoff; exact symmetry is implied by S^T J S = J.
    Q = 0.5 * (Q + Q.transpose()).eval();
    P = 0.5 * (P + P.transpose()).eval();
    return {P, L, Q};
}

std::pair<QuadraticGeneratingFunction, QuadraticGeneratingFunction>
free_factorization(const Mat& S, double tol) {
    if (!is_symplectic(S, std::max(tol, 1e-8)))
        throw std::invalid_argument("free_factorization: input is not symplectic");
    const Eigen::Index n = S.rows() / 2;
    const Mat I = Mat::Identity(n, n);

    // Pick W2 = (0, I, theta I) such that the remaining factor
    // S (s^{W2})^{-1} is free; det(theta B - A) vanishes for at most
    // 2n + 2 of the candidate values, so one of them works.
    double best_sv = -1.0;
    double best_theta = 0.0;
    for (int k = 0; k <= 2 * static_cast<int>(n) + 2; ++k) {
        const double theta = static_cast<double>(k);
        const QuadraticGeneratingFunction W2(Mat::Zero(n, n), I, theta * I);
        const Mat S1 = S * generating_to_symplectic(W2.dual());
        const Mat B1 = S1.topRightCorner(n, n);
        Eigen::JacobiSVD<Mat> svd(B1);
        const double sv = svd.singularValues()(n - 1);
        if (sv > best_sv) {
            best_sv = sv;
            best_theta = theta;
        }
    }
    if (best_sv <= 0.0)
        throw std::runtime_error("free_factorization: no free pre-factor found");
    const QuadraticGeneratingFunction W2(Mat::Zero(n, n), I, best_theta * I);
    const Mat S1 = S * generating_to_symplectic(W2.dual());
    return {symplectic_to_generating(S1), W2};
}

}  // namespace hamlift
