// rates.hpp — Achievable rate pairs for the duplex interference channel:
// thermal and general Gaussian encodings, LOCC-assisted rates, capacity
// formulas and bounds. Rates are in qubits per channel use and negative
// coherent information clamps to zero.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>

#include "duplex/device.hpp"
#include "duplex/gaussian.hpp"
#include "duplex/math.hpp"

namespace duplex {

struct RatePair {
    double i1 = 0.0;
    double i2 = 0.0;
};

// Mean photon numbers per signal port; kInfinitePhotons marks the asymptotic
// encoding.
struct ThermalEncoding {
    double n1 = 0.0;
    double n2 = 0.0;
};

struct GaussianPort {
    double n = 0.0;      // thermal occupation >= 0
    double r = 0.0;      // squeezing parameter
    double theta = 0.0;  // squeezing-axis angle
};

struct GaussianEncoding {
    GaussianPort port1;
    GaussianPort port2;
};

inline double pure_loss_capacity(double t) {
    if (t < 0.0 || t > 1.0) throw std::domain_error("pure_loss_capacity: T outside [0,1]");
    if (t == 1.0) return std::numeric_limits<double>::infinity();
    return std::max(std::log2(t / (1.0 - t)), 0.0);
}

// Upper bound on the capacity of a thermal-loss channel with noise photon
// number n_bar.
inline double thermal_loss_upper_bound(double t, double n_bar) {
    if (!(t > 0.0 && t < 1.0)) throw std::domain_error("thermal_loss_upper_bound: T outside (0,1)");
    const double num = t - (1.0 - t) * n_bar;
    if (num <= 0.0) return 0.0;
    return std::max(std::log2(num / ((1.0 - t) * (n_bar + 1.0))), 0.0);
}

namespace detail {

// Cross-channel noise photon number entering one direction: the opposite
// port's reflection plus the environment's thermal occupation. Guards the
// 0 * infinity case of a reflectionless opposite port.
inline double cross_noise(double r_opp, double n_opp, double t, double n_th) {
    double c = (n_opp == 0.0 || r_opp == 0.0) ? 0.0 : r_opp * n_opp;
    c += std::max(1.0 - t - r_opp, 0.0) * n_th;
    return c;
}

// D = sqrt((N + N' + 1)^2 - 4 T N (N+1)) rewritten with N' = T N + c as
// D^2 = (1-T)^2 N^2 + 2((1+T)(c+1) - 2T) N + (c+1)^2, which is a sum of
// non-negative terms, and the two h-arguments
//   a = (D + N' - N - 1)/2 = 2c(N+1) / (D + (1-T)N - c + 1)
//   b = (D - N' + N - 1)/2
// in cancellation-free form. Valid at any N.
struct EntropyTerms {
    double n_out;  // N'
    double a;
    double b;
};

inline EntropyTerms entropy_terms(double t, double c, double n) {
    const double radicand = (1.0 - t) * (1.0 - t) * n * n +
                            2.0 * ((1.0 + t) * (c + 1.0) - 2.0 * t) * n + (c + 1.0) * (c + 1.0);
    if (radicand < -1e-9) throw numerical_error("thermal rate: negative discriminant");
    const double d = std::sqrt(std::max(radicand, 0.0));
    EntropyTerms e;
    e.n_out = t * n + c;
    e.a = 2.0 * c * (n + 1.0) / (d + (1.0 - t) * n - c + 1.0);
    e.b = 0.5 * std::max(d + (1.0 - t) * n - c - 1.0, 0.0);
    return e;
}

}  // namespace detail

// Coherent information of one transduction direction with input photon
// number n and cross noise c (see detail::cross_noise). n = infinity uses the
// analytic limit log2(T/(1-T)) - h(c/(1-T)).
inline double thermal_direction_rate(double t, double c, double n) {
    if (std::isinf(c) || n <= 0.0) return 0.0;
    if (std::isinf(n)) {
        if (t <= 0.5) return 0.0;
        if (t >= 1.0) return std::numeric_limits<double>::infinity();
        return std::max(std::log2(t / (1.0 - t)) - bosonic_entropy_h(c / (1.0 - t)), 0.0);
    }
    const auto e = detail::entropy_terms(t, c, n);
    return std::max(bosonic_entropy_h(e.n_out) - bosonic_entropy_h(e.a) - bosonic_entropy_h(e.b),
                    0.0);
}

// Reverse coherent information of one direction (LOCC-assisted lower bound):
// leading term h(N) instead of h(N'). The n = infinity limit is
// -log2(1-T) - h(c/(1-T)).
inline double locc_direction_rate(double t, double c, double n) {
    if (std::isinf(c) || n <= 0.0) return 0.0;
    if (std::isinf(n)) {
        if (t >= 1.0) return std::numeric_limits<double>::infinity();
        return std::max(-std::log2(1.0 - t) - bosonic_entropy_h(c / (1.0 - t)), 0.0);
    }
    const auto e = detail::entropy_terms(t, c, n);
    return std::max(bosonic_entropy_h(n) - bosonic_entropy_h(e.a) - bosonic_entropy_h(e.b), 0.0);
}

inline RatePair thermal_rates(const EffectiveChannel& ch, const ThermalEncoding& enc) {
    RatePair out;
    out.i1 = thermal_direction_rate(ch.t21, detail::cross_noise(ch.r2, enc.n2, ch.t21, ch.n_th),
                                    enc.n1);
    out.i2 = thermal_direction_rate(ch.t12, detail::cross_noise(ch.r1, enc.n1, ch.t12, ch.n_th),
                                    enc.n2);
    return out;
}

inline RatePair locc_rates(const EffectiveChannel& ch, const ThermalEncoding& enc) {
    RatePair out;
    out.i1 =
        locc_direction_rate(ch.t21, detail::cross_noise(ch.r2, enc.n2, ch.t21, ch.n_th), enc.n1);
    out.i2 =
        locc_direction_rate(ch.t12, detail::cross_noise(ch.r1, enc.n1, ch.t12, ch.n_th), enc.n2);
    return out;
}

// Canonical 2x2 signal block of a channel with parameters (T, R1, R2, theta):
// [[sqrt(R1), sqrt(T)], [sqrt(T), sqrt(R2) e^{i theta}]].
inline Eigen::Matrix2cd signal_block(double t, double r1, double r2, double theta) {
    Eigen::Matrix2cd s;
    s(0, 0) = std::sqrt(r1);
    s(0, 1) = std::sqrt(t);
    s(1, 0) = std::sqrt(t);
    s(1, 1) = std::sqrt(r2) * std::exp(std::complex<double>(0.0, theta));
    return s;
}

namespace detail {

inline Mat2 bold_block(std::complex<double> s) {
    return std::abs(s) * rotation_block(std::arg(s));
}

// One direction of the general Gaussian pipeline: output covariance
// V' = B_t V_in B_t^T + B_r V_opp B_r^T + (1/2 + n_th)(1 - |t|^2 - |r|^2) I
// and joint (reference, output) covariance for the entropy difference.
inline double gaussian_direction_rate(std::complex<double> s_trans, std::complex<double> s_refl,
                                      const GaussianPort& in, const GaussianPort& opp,
                                      double n_th) {
    if (std::isinf(in.n) || std::isinf(opp.n)) {
        throw std::invalid_argument("gaussian rates require finite photon numbers");
    }
    const Mat2 bt = bold_block(s_trans);
    const Mat2 br = bold_block(s_refl);
    const OneModeDecomposition din{in.n, in.r, in.theta};
    const OneModeDecomposition dopp{opp.n, opp.r, opp.theta};
    const Mat2 v_in = reconstruct_one_mode(din).matrix();
    const Mat2 v_opp = reconstruct_one_mode(dopp).matrix();
    const double env = std::max(1.0 - std::norm(s_trans) - std::norm(s_refl), 0.0);
    Mat2 v_out = bt * v_in * bt.transpose() + br * v_opp * br.transpose() +
                 (0.5 + n_th) * env * Mat2::Identity();
    v_out = 0.5 * (v_out + v_out.transpose()).eval();

    const PurificationBlocks pur = purification_blocks(din);
    const Mat2 cross = bt * pur.c;
    Eigen::Matrix4d joint;
    joint.topLeftCorner<2, 2>() = pur.v_ref;
    joint.topRightCorner<2, 2>() = cross.transpose();
    joint.bottomLeftCorner<2, 2>() = cross;
    joint.bottomRightCorner<2, 2>() = v_out;

    const double h_out = gaussian_entropy(CovarianceMatrix(v_out));
    const double h_joint = gaussian_entropy(CovarianceMatrix(joint));
    return std::max(h_out - h_joint, 0.0);
}

}  // namespace detail

// General Gaussian encodings through the signal block of a scattering matrix;
// remaining ports are environment modes at occupation n_th. Reduces to
// thermal_rates when r1 = r2 = 0.
inline RatePair gaussian_rates(const Eigen::Matrix2cd& blk, const GaussianEncoding& enc,
                               double n_th = 0.0) {
    for (int row = 0; row < 2; ++row) {
        const double power = std::norm(blk(row, 0)) + std::norm(blk(row, 1));
        if (power > 1.0 + 1e-10) {
            throw invalid_state_error("gaussian_rates: signal block row exceeds unit power");
        }
    }
    RatePair out;
    out.i1 = detail::gaussian_direction_rate(blk(1, 0), blk(1, 1), enc.port1, enc.port2, n_th);
    out.i2 = detail::gaussian_direction_rate(blk(0, 1), blk(0, 0), enc.port2, enc.port1, n_th);
    return out;
}

inline RatePair gaussian_rates(const ScatteringMatrix& s, const GaussianEncoding& enc,
                               double n_th = 0.0) {
    return gaussian_rates(s.matrix().topLeftCorner<2, 2>(), enc, n_th);
}

// Achievable rates on the one-side reflectionless branch (R1 = 0) in the
// limit N1 -> infinity, as a function of the opposite encoding N2:
//   I1 = log2(T/(1-T)) - h(R2 N2 (1+T) / (2(1-T))),
//   I2 = h(T N2) - h((1-T) N2).
inline RatePair reflectionless_asymptotic_rates(double t, double r2, double n2) {
    RatePair out;
    if (std::isinf(n2)) {
        out.i1 = (r2 == 0.0 && t > 0.5) ? std::log2(t / (1.0 - t)) : 0.0;
        out.i2 = pure_loss_capacity(t);
        return out;
    }
    if (t > 0.5 && t < 1.0) {
        const double noise = (r2 == 0.0) ? 0.0 : r2 * n2 * (1.0 + t) / (2.0 * (1.0 - t));
        out.i1 = std::max(std::log2(t / (1.0 - t)) - bosonic_entropy_h(noise), 0.0);
    }
    out.i2 = std::max(bosonic_entropy_h(t * n2) - bosonic_entropy_h((1.0 - t) * n2), 0.0);
    return out;
}

}  // namespace duplex
