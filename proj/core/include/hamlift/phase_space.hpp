#pragma once

#include <Eigen/Dense>
#include <utility>

namespace hamlift {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// A point z = (x, p) of phase space R^{2n}.
struct PhaseSpacePoint {
    Vec x;
    Vec p;

    PhaseSpacePoint() = default;
    PhaseSpacePoint(Vec x_, Vec p_);
    /// 1-D convenience constructor.
    PhaseSpacePoint(double x1, double p1);

    Eigen::Index dim() const { return x.size(); }

    /// Flatten to the stacked vector (x, p) of length 2n.
    Vec to_vector() const;
    static PhaseSpacePoint from_vector(const Vec& z);
};

/// The standard symplectic structure on R^{2n}: J = [[0, I], [-I, 0]]
/// in (x, p) block order, so Hamilton's equations read zdot = J grad H.
struct SymplecticStructure {
    Eigen::Index n = 0;
    Mat J;
};

/// Returns the standard structure; rejects n = 0.
SymplecticStructure standard_symplectic(Eigen::Index n);

/// sigma(z, z') = Jz . z'. Antisymmetric and bilinear.
double symplectic_form(const PhaseSpacePoint& z, const PhaseSpacePoint& zp);
double symplectic_form(const Vec& z, const Vec& zp);

/// True iff ||S^T J S - J||_inf <= tol. S must be square with even size.
bool is_symplectic(const Mat& S, double tol = 1e-10);

/// ||S^T J S - J||_inf, the defect used by is_symplectic.
double symplecticity_defect(const Mat& S);

/// Quadratic generating function W(x, x') = 1/2 Px.x - Lx.x' + 1/2 Qx'.x'
/// with P, Q symmetric and L invertible, plus the Maslov index m (mod 4)
/// fixing the branch of arg det L.
struct QuadraticGeneratingFunction {
    Mat P;
    Mat L;
    Mat Q;
    int m = 0;

    QuadraticGeneratingFunction() = default;
    /// Validates symmetry of P, Q and invertibility of L. If maslov < 0
    /// the index is derived from the sign of det L (m = 0 for det L > 0,
    /// m = 1 for det L < 0, matching arg det L in [0, 2pi)).
    QuadraticGeneratingFunction(Mat P_, Mat L_, Mat Q_, int maslov = -1);

    Eigen::Index dim() const { return L.rows(); }

    /// 1-D convenience.
    static QuadraticGeneratingFunction scalar(double P, double L, double Q);

    /// W*(x, x') = -W(x', x): the triple (-Q, -L^T, -P). The projected
    /// matrix of the dual is the inverse of the projected matrix of W.
    QuadraticGeneratingFunction dual() const;

    /// Evaluate W(x, x').
    double operator()(const Vec& x, const Vec& xp) const;
};

/// The free symplectic matrix of W:
///   [[L^{-1}Q,          L^{-1}  ],
///    [P L^{-1} Q - L^T, L^{-1} P]]
Mat generating_to_symplectic(const QuadraticGeneratingFunction& W);

/// Inverse of generating_to_symplectic for a free S (upper-right n x n
/// block invertible). Throws if the block is singular.
QuadraticGeneratingFunction symplectic_to_generating(const Mat& S);

/// Writes S as a product s^{W1} s^{W2} of two free symplectic matrices.
/// Works for all of Sp(2n, R), including non-free S such as the identity.
std::pair<QuadraticGeneratingFunction, QuadraticGeneratingFunction>
free_factorization(const Mat& S, double tol = 1e-10);

}  // namespace hamlift
