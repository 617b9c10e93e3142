// device.hpp — Linear transducer model: scattering matrices from device
// parameters, effective two-port channels, reflectionless analytics and the
// transmission gradient identities.

#pragma once

#include <Eigen/Dense>
#include <Eigen/LU>

#include <cmath>
#include <complex>
#include <optional>
#include <utility>

#include "duplex/math.hpp"

namespace duplex {

// N coupled bosonic modes with Hamiltonian matrix G (diagonal = detunings,
// off-diagonal = couplings), external loss rates kappa_e and internal loss
// rates kappa_i. All rates in units of a common reference.
struct DeviceParams {
    Eigen::MatrixXcd g_matrix;   // hermitian n x n
    Eigen::VectorXd kappa_e;     // > 0
    Eigen::VectorXd kappa_i;     // >= 0

    int modes() const { return static_cast<int>(g_matrix.rows()); }

    void validate() const {
        const int n = modes();
        if (n < 1 || g_matrix.cols() != n) {
            throw std::invalid_argument("DeviceParams: G must be square");
        }
        if (kappa_e.size() != n || kappa_i.size() != n) {
            throw std::invalid_argument("DeviceParams: loss-rate size mismatch");
        }
        if ((g_matrix - g_matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
            throw std::invalid_argument("DeviceParams: G not hermitian within 1e-12");
        }
        for (int k = 0; k < n; ++k) {
            if (!(kappa_e(k) > 0.0)) throw std::invalid_argument("DeviceParams: kappa_e must be > 0");
            if (kappa_i(k) < 0.0) throw std::invalid_argument("DeviceParams: kappa_i must be >= 0");
        }
    }

    static DeviceParams two_mode(double g, double kappa_1e, double kappa_2e, double kappa_1i,
                                 double kappa_2i, double delta_1, double delta_2) {
        DeviceParams d;
        d.g_matrix = Eigen::MatrixXcd::Zero(2, 2);
        d.g_matrix(0, 0) = delta_1;
        d.g_matrix(1, 1) = delta_2;
        d.g_matrix(0, 1) = g;
        d.g_matrix(1, 0) = g;
        d.kappa_e = Eigen::Vector2d(kappa_1e, kappa_2e);
        d.kappa_i = Eigen::Vector2d(kappa_1i, kappa_2i);
        return d;
    }

    static DeviceParams symmetric_two_mode(double g, double kappa_e, double kappa_i,
                                           double delta_1, double delta_2) {
        return two_mode(g, kappa_e, kappa_e, kappa_i, kappa_i, delta_1, delta_2);
    }
};

inline constexpr double kUnitarityTol = 1e-10;

// Unitary 2n x 2n scattering matrix ordered (external ports 1..n, internal
// ports 1..n). Also accepts lossless external-only matrices (e.g. a bare beam
// splitter); the only invariant is unitarity.
class ScatteringMatrix {
  public:
    explicit ScatteringMatrix(Eigen::MatrixXcd s) : s_(std::move(s)) {
        const auto n = s_.rows();
        if (n < 2 || s_.cols() != n) {
            throw std::invalid_argument("ScatteringMatrix: must be square, dim >= 2");
        }
        const double defect =
            (s_.adjoint() * s_ - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
        if (defect > kUnitarityTol) {
            throw invalid_state_error("ScatteringMatrix: unitarity defect " + std::to_string(defect));
        }
    }

    const Eigen::MatrixXcd& matrix() const { return s_; }
    std::complex<double> operator()(int i, int j) const { return s_(i, j); }
    int dim() const { return static_cast<int>(s_.rows()); }

  private:
    Eigen::MatrixXcd s_;
};

// S = [[I + sqrt(Ke) M sqrt(Ke), sqrt(Ke) M sqrt(Ki)],
//      [sqrt(Ki) M sqrt(Ke),     I + sqrt(Ki) M sqrt(Ki)]]
// with M = -(iG + (Ke + Ki)/2)^{-1}.
inline ScatteringMatrix build_scattering(const DeviceParams& d) {
    d.validate();
    const int n = d.modes();
    const std::complex<double> im(0.0, 1.0);
    Eigen::MatrixXcd a = im * d.g_matrix;
    for (int k = 0; k < n; ++k) a(k, k) += 0.5 * (d.kappa_e(k) + d.kappa_i(k));
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(a);
    if (!lu.isInvertible()) {
        throw numerical_error("build_scattering: singular linear system");
    }
    const Eigen::MatrixXcd m = -lu.inverse();
    const Eigen::VectorXd se = d.kappa_e.cwiseSqrt();
    const Eigen::VectorXd si = d.kappa_i.cwiseSqrt();
    Eigen::MatrixXcd s(2 * n, 2 * n);
    s.setZero();
    s.topLeftCorner(n, n) = Eigen::MatrixXcd::Identity(n, n) +
                            se.asDiagonal() * m * se.asDiagonal();
    s.topRightCorner(n, n) = se.asDiagonal() * m * si.asDiagonal();
    s.bottomLeftCorner(n, n) = si.asDiagonal() * m * se.asDiagonal();
    s.bottomRightCorner(n, n) = Eigen::MatrixXcd::Identity(n, n) +
                                si.asDiagonal() * m * si.asDiagonal();
    return ScatteringMatrix(std::move(s));
}

// Reduced two-port channel: power coefficients of the signal block plus the
// phase invariant theta = theta11 + theta22 - theta12 - theta21.
struct EffectiveChannel {
    double t12 = 0.0;
    double t21 = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
    double theta = 0.0;
    double n_th = 0.0;

    // Reciprocal devices have T12 = T21; kept separate for diagnostics.
    double t() const { return t21; }

    void validate() const {
        if (t21 + r1 > 1.0 + 1e-12 || t12 + r2 > 1.0 + 1e-12) {
            throw invalid_state_error("EffectiveChannel: power coefficients exceed unitarity");
        }
        if (t12 < 0.0 || t21 < 0.0 || r1 < 0.0 || r2 < 0.0 || n_th < 0.0) {
            throw invalid_state_error("EffectiveChannel: negative coefficient");
        }
    }
};

inline EffectiveChannel effective_channel(const ScatteringMatrix& s, double n_th = 0.0) {
    EffectiveChannel ch;
    ch.t12 = std::norm(s(0, 1));
    ch.t21 = std::norm(s(1, 0));
    ch.r1 = std::norm(s(0, 0));
    ch.r2 = std::norm(s(1, 1));
    ch.theta = std::arg(s(0, 0)) + std::arg(s(1, 1)) - std::arg(s(0, 1)) - std::arg(s(1, 0));
    ch.n_th = n_th;
    ch.validate();
    return ch;
}

inline EffectiveChannel make_channel(double t, double r1, double r2, double theta = 0.0,
                                     double n_th = 0.0) {
    EffectiveChannel ch;
    ch.t12 = ch.t21 = t;
    ch.r1 = r1;
    ch.r2 = r2;
    ch.theta = theta;
    ch.n_th = n_th;
    ch.validate();
    return ch;
}

// Detunings that cancel the port-1 reflection of the symmetric two-mode
// transducer:
//   Delta2 = sqrt((ke + ki)(4g^2 - ke^2 + ki^2) / (4(ke - ki))),
//   Delta1 = (ke - ki)/(ke + ki) * Delta2.
// Returns nullopt when the radicand is negative or ke == ki.
inline std::optional<std::pair<double, double>> reflectionless_detunings(double g, double kappa_e,
                                                                         double kappa_i) {
    if (kappa_e == kappa_i) return std::nullopt;
    const double radicand =
        (kappa_e + kappa_i) * (4.0 * g * g - kappa_e * kappa_e + kappa_i * kappa_i) /
        (4.0 * (kappa_e - kappa_i));
    if (radicand < 0.0) return std::nullopt;
    const double delta_2 = std::sqrt(radicand);
    const double delta_1 = (kappa_e - kappa_i) / (kappa_e + kappa_i) * delta_2;
    return std::make_pair(delta_1, delta_2);
}

// External couplings that make both ports reflectionless at zero detuning:
//   kappa_ke^2 = (kappa_ki / kappa_ji) (4g^2 + kappa_1i kappa_2i).
inline std::pair<double, double> optimal_couplings(double g, double kappa_1i, double kappa_2i) {
    const double common = 4.0 * g * g + kappa_1i * kappa_2i;
    return {std::sqrt(kappa_1i / kappa_2i * common), std::sqrt(kappa_2i / kappa_1i * common)};
}

// Analytic gradients of T_mn = |S_mn|^2:
//   dT/dkappa_ke = (T/kappa_ke) Re S_kk,   dT/dDelta_k = -(2T/kappa_ke) Im S_kk
// for k in {m, n}.
struct TransmissionGradients {
    double d_delta_m = 0.0;
    double d_delta_n = 0.0;
    double d_kappa_me = 0.0;
    double d_kappa_ne = 0.0;
};

inline TransmissionGradients transmission_gradients(const DeviceParams& d, int m, int n) {
    if (m == n) throw std::invalid_argument("transmission_gradients: m and n must differ");
    const ScatteringMatrix s = build_scattering(d);
    const double t_mn = std::norm(s(m, n));
    TransmissionGradients out;
    out.d_kappa_me = t_mn / d.kappa_e(m) * s(m, m).real();
    out.d_kappa_ne = t_mn / d.kappa_e(n) * s(n, n).real();
    out.d_delta_m = -2.0 * t_mn / d.kappa_e(m) * s(m, m).imag();
    out.d_delta_n = -2.0 * t_mn / d.kappa_e(n) * s(n, n).imag();
    return out;
}

// Normalizes the device to unit internal loss: kappa_i -> 1,
// kappa_e -> kappa_e/kappa_i, G -> Ki^{-1/2} G Ki^{-1/2}. The scattering
// matrix is invariant under this rescaling.
inline DeviceParams rescale_device(const DeviceParams& d) {
    d.validate();
    const int n = d.modes();
    for (int k = 0; k < n; ++k) {
        if (!(d.kappa_i(k) > 0.0)) {
            throw std::invalid_argument("rescale_device: requires kappa_i > 0 for every mode");
        }
    }
    DeviceParams out;
    const Eigen::VectorXd inv_sqrt = d.kappa_i.cwiseSqrt().cwiseInverse();
    out.g_matrix = inv_sqrt.asDiagonal() * d.g_matrix * inv_sqrt.asDiagonal();
    out.kappa_e = d.kappa_e.cwiseQuotient(d.kappa_i);
    out.kappa_i = Eigen::VectorXd::Ones(n);
    return out;
}

// Highest transmission of the symmetric two-mode transducer over all
// detunings. For g > (ke + ki)/2 the optimum sits at
// Delta1 = Delta2 = +-sqrt(g^2 - ((ke+ki)/2)^2), otherwise at zero detuning.
struct MaxTransmission {
    double t = 0.0;
    double delta = 0.0;  // optimal Delta1 = Delta2 (one of the +- pair)
};

inline MaxTransmission max_transmission(double g, double kappa_e, double kappa_i) {
    const double kbar = 0.5 * (kappa_e + kappa_i);
    MaxTransmission out;
    if (g > kbar) {
        out.delta = std::sqrt(g * g - kbar * kbar);
        out.t = kappa_e * kappa_e / ((kappa_e + kappa_i) * (kappa_e + kappa_i));
    } else {
        out.delta = 0.0;
        const double den = kbar * kbar + g * g;
        out.t = kappa_e * kappa_e * g * g / (den * den);
    }
    return out;
}

}  // namespace duplex
