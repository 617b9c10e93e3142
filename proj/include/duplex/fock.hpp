// fock.hpp — {|0>, |1>} encodings on the lossless beam splitter by direct
// truncated-Fock-space density matrices. A per-mode cutoff of 2 is exact for
// single-photon inputs because the total photon number (<= 2) is conserved.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <vector>

#include "duplex/geometry.hpp"
#include "duplex/math.hpp"
#include "duplex/rates.hpp"
#include "duplex/region.hpp"

namespace duplex {

// Density matrix on span{|0>, |1>}.
struct QubitDensity {
    Eigen::Matrix2cd rho;

    void validate() const {
        if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
            throw invalid_state_error("QubitDensity: not hermitian");
        }
        if (std::abs(rho.trace().real() - 1.0) > 1e-12 || std::abs(rho.trace().imag()) > 1e-12) {
            throw invalid_state_error("QubitDensity: trace != 1");
        }
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho);
        if (es.eigenvalues()(0) < -1e-12) {
            throw invalid_state_error("QubitDensity: negative eigenvalue");
        }
    }

    static QubitDensity diagonal(double p_one) {
        QubitDensity q;
        q.rho << 1.0 - p_one, 0.0, 0.0, p_one;
        return q;
    }

    static QubitDensity with_coherence(double p_one, std::complex<double> c) {
        QubitDensity q;
        q.rho << 1.0 - p_one, std::conj(c), c, p_one;
        return q;
    }
};

// Two-mode operator on the truncated Fock space, basis |n1, n2> lexicographic
// with per-mode cutoff n_max.
struct FockOperator {
    Eigen::MatrixXcd matrix;
    int n_max = 0;

    int mode_dim() const { return n_max + 1; }
    int dim() const { return mode_dim() * mode_dim(); }
};

namespace detail {

inline Eigen::MatrixXd annihilation(int n_max) {
    const int d = n_max + 1;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
    for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

inline Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace detail

// Fock-space unitary implementing
//   a2_out = sqrt(T) a1_in + sqrt(1-T) a2_in,
//   a1_out = sqrt(T) a2_in - sqrt(1-T) a1_in,
// built as exp(-i sum H_ij a_i^dag a_j) with exp(-iH) equal to the mode map.
// Photon-number conserving, hence block-unitary on every total-n <= n_max
// subspace.
inline FockOperator beam_splitter_unitary(double t, int n_max = 2) {
    if (n_max < 2) throw std::invalid_argument("beam_splitter_unitary: cutoff n_max must be >= 2");
    if (!(t > 0.0 && t <= 1.0)) throw std::domain_error("beam_splitter_unitary: T outside (0,1]");

    Eigen::Matrix2d b;
    b << -std::sqrt(1.0 - t), std::sqrt(t), std::sqrt(t), std::sqrt(1.0 - t);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eb(b);
    Eigen::Matrix2d h_mode = Eigen::Matrix2d::Zero();
    for (int k = 0; k < 2; ++k) {
        const double phase = std::arg(std::complex<double>(eb.eigenvalues()(k), 0.0));
        h_mode -= phase * eb.eigenvectors().col(k) * eb.eigenvectors().col(k).transpose();
    }

    const int d = n_max + 1;
    const Eigen::MatrixXd a1 = detail::kron(detail::annihilation(n_max),
                                            Eigen::MatrixXd::Identity(d, d));
    const Eigen::MatrixXd a2 = detail::kron(Eigen::MatrixXd::Identity(d, d),
                                            detail::annihilation(n_max));
    const Eigen::MatrixXd h_fock = h_mode(0, 0) * a1.transpose() * a1 +
                                   h_mode(0, 1) * a1.transpose() * a2 +
                                   h_mode(1, 0) * a2.transpose() * a1 +
                                   h_mode(1, 1) * a2.transpose() * a2;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eh(h_fock);
    Eigen::VectorXcd phases(eh.eigenvalues().size());
    for (int k = 0; k < phases.size(); ++k) {
        phases(k) = std::exp(std::complex<double>(0.0, -eh.eigenvalues()(k)));
    }
    FockOperator op;
    op.n_max = n_max;
    op.matrix = eh.eigenvectors().cast<std::complex<double>>() * phases.asDiagonal() *
                eh.eigenvectors().transpose().cast<std::complex<double>>();
    return op;
}

namespace detail {

inline double entropy_bits(const Eigen::MatrixXcd& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    double s = 0.0;
    for (int k = 0; k < es.eigenvalues().size(); ++k) {
        const double lam = es.eigenvalues()(k);
        if (lam > 1e-14) s -= lam * std::log2(lam);
    }
    return s;
}

// Pure state of (reference, mode): |psi> = sum_i sqrt(lambda_i) |i>|e_i>,
// mode component embedded into the truncated Fock space.
inline Eigen::MatrixXcd purified(const QubitDensity& q, int mode_dim) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(q.rho);
    Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(2, mode_dim);  // (ref index, mode index)
    for (int i = 0; i < 2; ++i) {
        const double lam = std::max(es.eigenvalues()(i), 0.0);
        if (lam > 0.0) {
            psi.row(i).head<2>() += std::sqrt(lam) * es.eigenvectors().col(i).transpose();
        }
    }
    return psi;
}

}  // namespace detail

// Coherent-information pair for {|0>,|1>} inputs through the lossless beam
// splitter: purify each input, apply the Fock unitary, and take the entropy
// differences S(out) - S(ref, out) for each direction.
inline RatePair fock_coherent_rates(double t, const QubitDensity& rho1, const QubitDensity& rho2,
                                    int n_max = 2) {
    rho1.validate();
    rho2.validate();
    const FockOperator bs = beam_splitter_unitary(t, n_max);
    const int d = bs.mode_dim();

    const Eigen::MatrixXcd psi1 = detail::purified(rho1, d);  // (r1, m1)
    const Eigen::MatrixXcd psi2 = detail::purified(rho2, d);  // (r2, m2)

    // Joint pure state indexed (r1, r2, m1, m2); the beam splitter acts on the
    // flattened (m1, m2) index.
    std::vector<Eigen::VectorXcd> joint(4, Eigen::VectorXcd::Zero(d * d));
    for (int r1 = 0; r1 < 2; ++r1) {
        for (int r2 = 0; r2 < 2; ++r2) {
            Eigen::VectorXcd block(d * d);
            for (int m1 = 0; m1 < d; ++m1) {
                for (int m2 = 0; m2 < d; ++m2) block(m1 * d + m2) = psi1(r1, m1) * psi2(r2, m2);
            }
            joint[r1 * 2 + r2] = bs.matrix * block;
        }
    }

    auto amp = [&](int r1, int r2, int m1, int m2) { return joint[r1 * 2 + r2](m1 * d + m2); };

    // rho_{R1, m2}: trace over r2 and m1.
    Eigen::MatrixXcd rho_r1_m2 = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
    // rho_{R2, m1}: trace over r1 and m2.
    Eigen::MatrixXcd rho_r2_m1 = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
    Eigen::MatrixXcd rho_out2 = Eigen::MatrixXcd::Zero(d, d);
    Eigen::MatrixXcd rho_out1 = Eigen::MatrixXcd::Zero(d, d);
    for (int ra = 0; ra < 2; ++ra) {
        for (int rb = 0; rb < 2; ++rb) {
            for (int ma = 0; ma < d; ++ma) {
                for (int mb = 0; mb < d; ++mb) {
                    std::complex<double> acc12(0.0, 0.0), acc21(0.0, 0.0);
                    for (int k = 0; k < 2; ++k) {
                        for (int tr = 0; tr < d; ++tr) {
                            acc12 += amp(ra, k, tr, ma) * std::conj(amp(rb, k, tr, mb));
                            acc21 += amp(k, ra, ma, tr) * std::conj(amp(k, rb, mb, tr));
                        }
                    }
                    rho_r1_m2(ra * d + ma, rb * d + mb) = acc12;
                    rho_r2_m1(ra * d + ma, rb * d + mb) = acc21;
                    if (ra == rb) {
                        rho_out2(ma, mb) += acc12;
                        rho_out1(ma, mb) += acc21;
                    }
                }
            }
        }
    }

    // Direction 1: input 1 -> mode-2 output, reference R1. Direction 2:
    // input 2 -> mode-1 output, reference R2.
    const double i1 = detail::entropy_bits(rho_out2) - detail::entropy_bits(rho_r1_m2);
    const double i2 = detail::entropy_bits(rho_out1) - detail::entropy_bits(rho_r2_m1);
    return {std::max(i1, 0.0), std::max(i2, 0.0)};
}

struct FockRegionOptions {
    int p_points = 101;                          // diagonal mixtures p in {0, ..., 1}
    std::vector<double> coherence_fractions;     // off-diagonal sweep, fraction of sqrt(p(1-p))
    int coherence_p_points = 26;                 // coarser p grid for the coherence sweep
    unsigned threads = 1;
};

struct FockRegionResult {
    RateRegion region;
    double max_sum = 0.0;        // best simultaneous I1 + I2
    double max_axis = 0.0;       // best single-direction rate
    bool duplex_advantage = false;
};

// Region of the {|0>,|1>} encoding family: diagonal mixtures on a fine grid
// plus an optional coarse coherence sweep.
inline FockRegionResult fock_rate_region(double t, const FockRegionOptions& opt = {}) {
    struct Job {
        double p1, p2, c1, c2;
    };
    std::vector<Job> jobs;
    for (int i = 0; i < opt.p_points; ++i) {
        for (int j = 0; j < opt.p_points; ++j) {
            jobs.push_back({i / (opt.p_points - 1.0), j / (opt.p_points - 1.0), 0.0, 0.0});
        }
    }
    for (double f1 : opt.coherence_fractions) {
        for (double f2 : opt.coherence_fractions) {
            if (f1 == 0.0 && f2 == 0.0) continue;
            for (int i = 0; i < opt.coherence_p_points; ++i) {
                for (int j = 0; j < opt.coherence_p_points; ++j) {
                    jobs.push_back({i / (opt.coherence_p_points - 1.0),
                                    j / (opt.coherence_p_points - 1.0), f1, f2});
                }
            }
        }
    }

    FockRegionResult out;
    out.region.points.resize(jobs.size() + 1);
    parallel_for_index(jobs.size(), opt.threads, [&](std::size_t k) {
        const Job& jb = jobs[k];
        const QubitDensity r1 =
            QubitDensity::with_coherence(jb.p1, jb.c1 * std::sqrt(jb.p1 * (1.0 - jb.p1)));
        const QubitDensity r2 =
            QubitDensity::with_coherence(jb.p2, jb.c2 * std::sqrt(jb.p2 * (1.0 - jb.p2)));
        const RatePair rate = fock_coherent_rates(t, r1, r2);
        out.region.points[k] =
            SamplePoint{rate, {{"p1", jb.p1}, {"p2", jb.p2}, {"c1", jb.c1}, {"c2", jb.c2}}};
    });
    out.region.points[jobs.size()] =
        SamplePoint{RatePair{0.0, 0.0}, {{"p1", 0.0}, {"p2", 0.0}, {"c1", 0.0}, {"c2", 0.0}}};

    std::vector<Vec2> coords(out.region.points.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
        coords[i] = {out.region.points[i].rate.i1, out.region.points[i].rate.i2};
        out.max_sum = std::max(out.max_sum, coords[i].x + coords[i].y);
        out.max_axis = std::max({out.max_axis, coords[i].x, coords[i].y});
    }
    std::vector<int> hull_idx = convex_hull_indices(coords);
    hull_idx = detail::rotate_hull_to_origin(coords, hull_idx);
    std::vector<Vec2> hull_pts;
    for (int idx : hull_idx) {
        const SamplePoint& sp = out.region.points[idx];
        BoundaryPoint bp{sp.rate, ProtocolLabel::low_rank_jacobian, sp.params};
        if (sp.rate.i1 <= 1e-12 && sp.rate.i2 <= 1e-12) {
            bp.label = ProtocolLabel::time_sharing;
            bp.rate = {0.0, 0.0};
            bp.params = {{"p1", 0.0}, {"p2", 0.0}, {"c1", 0.0}, {"c2", 0.0}};
        }
        out.region.boundary.push_back(std::move(bp));
        hull_pts.push_back(coords[idx]);
    }
    out.region.hull = ConvexRegion(std::move(hull_pts));
    out.duplex_advantage = out.max_sum > out.max_axis + 1e-9;
    return out;
}

}  // namespace duplex
