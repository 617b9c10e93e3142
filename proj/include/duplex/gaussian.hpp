// gaussian.hpp — Covariance-matrix machinery for Gaussian states: symplectic
// spectra, von Neumann entropies, one-mode decompositions and purifications.
//
// Conventions: per-mode (x, p) ordering, vacuum covariance = I/2, symplectic
// form Omega = direct sum of [[0,1],[-1,0]], entropies in bits.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <vector>

#include "duplex/math.hpp"

namespace duplex {

using Mat2 = Eigen::Matrix2d;

inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kPhysicalTol = 1e-9;

// Phase rotation R(theta) = [[cos, -sin], [sin, cos]].
inline Mat2 rotation_block(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    Mat2 m;
    m << c, -s, s, c;
    return m;
}

// Single-mode squeeze S(r) = diag(e^-r, e^r).
inline Mat2 squeeze_block(double r) {
    Mat2 m;
    m << std::exp(-r), 0.0, 0.0, std::exp(r);
    return m;
}

inline Mat2 z_block() {
    Mat2 m;
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

// Real symmetric 2n x 2n covariance matrix. Symmetry is enforced on
// construction; physicality (nu >= 1/2) is checked where the spectrum is
// computed.
class CovarianceMatrix {
  public:
    explicit CovarianceMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols() || m_.rows() < 2 || m_.rows() % 2 != 0) {
            throw invalid_state_error("covariance matrix must be square with even dimension");
        }
        if ((m_ - m_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) {
            throw invalid_state_error("covariance matrix not symmetric within 1e-12");
        }
    }

    const Eigen::MatrixXd& matrix() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }
    int modes() const { return dim() / 2; }

    static CovarianceMatrix thermal(double n_mean) {
        return CovarianceMatrix((n_mean + 0.5) * Eigen::MatrixXd::Identity(2, 2));
    }
    static CovarianceMatrix vacuum(int modes) {
        return CovarianceMatrix(0.5 * Eigen::MatrixXd::Identity(2 * modes, 2 * modes));
    }

  private:
    Eigen::MatrixXd m_;
};

inline Eigen::MatrixXd symplectic_form(int modes) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
    for (int k = 0; k < modes; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

// Williamson spectrum: absolute values of the eigenvalues of i*Omega*V, one
// per mode, descending. Throws invalid_state_error for non-physical input.
inline std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& v) {
    const int n = v.modes();
    Eigen::MatrixXcd iov = std::complex<double>(0.0, 1.0) * symplectic_form(n) * v.matrix();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(iov, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw numerical_error("symplectic_eigenvalues: eigensolver failed");
    }
    std::vector<double> abs_all(2 * n);
    for (int k = 0; k < 2 * n; ++k) abs_all[k] = std::abs(solver.eigenvalues()(k));
    std::sort(abs_all.begin(), abs_all.end(), std::greater<double>());
    std::vector<double> nus(n);
    for (int k = 0; k < n; ++k) nus[k] = 0.5 * (abs_all[2 * k] + abs_all[2 * k + 1]);
    if (nus.back() < 0.5 - kPhysicalTol) {
        throw invalid_state_error("covariance matrix not physical: nu_min = " +
                                  std::to_string(nus.back()));
    }
    return nus;
}

// H(V) = sum_k h(nu_k - 1/2). Pure-state eigenvalues that dip below 1/2 by
// roundoff are clamped before the entropy is taken.
inline double gaussian_entropy(const CovarianceMatrix& v) {
    double total = 0.0;
    for (double nu : symplectic_eigenvalues(v)) {
        total += bosonic_entropy_h(std::max(nu, 0.5) - 0.5);
    }
    return total;
}

// One-mode normal form V = (N + 1/2) R(theta) S(2r) R(theta)^T with the
// canonical branch r >= 0, theta in [0, pi).
struct OneModeDecomposition {
    double n_mean = 0.0;
    double r = 0.0;
    double theta = 0.0;
};

inline CovarianceMatrix reconstruct_one_mode(const OneModeDecomposition& d) {
    const Mat2 rot = rotation_block(d.theta);
    return CovarianceMatrix((d.n_mean + 0.5) * rot * squeeze_block(2.0 * d.r) * rot.transpose());
}

inline OneModeDecomposition decompose_one_mode(const CovarianceMatrix& v) {
    if (v.dim() != 2) throw invalid_state_error("decompose_one_mode expects a one-mode matrix");
    const Mat2 m = v.matrix();
    const double det = m.determinant();
    if (det <= 0.0) throw invalid_state_error("decompose_one_mode: non-positive determinant");
    const double nu = std::sqrt(det);
    if (nu < 0.5 - kPhysicalTol) {
        throw invalid_state_error("decompose_one_mode: non-physical state");
    }
    Eigen::SelfAdjointEigenSolver<Mat2> solver(m);
    const double lo = solver.eigenvalues()(0), hi = solver.eigenvalues()(1);
    OneModeDecomposition d;
    d.n_mean = std::max(nu - 0.5, 0.0);
    d.r = 0.25 * std::log(hi / lo);
    if (d.r < 1e-12) {
        d.r = std::max(d.r, 0.0);
        d.theta = 0.0;
        return d;
    }
    // The minor axis (e^{-2r} eigenvalue) sits at angle theta.
    const Eigen::Vector2d axis = solver.eigenvectors().col(0);
    double theta = std::atan2(axis(1), axis(0));
    if (theta < 0.0) theta += M_PI;
    if (theta >= M_PI) theta -= M_PI;
    d.theta = theta;
    return d;
}

// Reference block and cross-correlation of the two-mode purification
// [[V_ref, C^T], [C, V]]: V_ref = (N + 1/2) I, C = sqrt(N(N+1)) R(theta) S(r) Z.
struct PurificationBlocks {
    Mat2 v_ref;
    Mat2 c;
};

inline PurificationBlocks purification_blocks(const OneModeDecomposition& d) {
    PurificationBlocks out;
    out.v_ref = (d.n_mean + 0.5) * Mat2::Identity();
    out.c = std::sqrt(d.n_mean * (d.n_mean + 1.0)) * rotation_block(d.theta) *
            squeeze_block(d.r) * z_block();
    return out;
}

}  // namespace duplex
