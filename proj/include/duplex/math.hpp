// math.hpp — Bosonic entropy function, error types, and small numeric helpers.

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace duplex {

// Raised when a covariance matrix or density matrix fails a physicality check.
struct invalid_state_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a computation degrades numerically (singular solve, bad radicand).
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr double kInfinitePhotons = std::numeric_limits<double>::infinity();

inline bool is_infinite(double x) { return std::isinf(x); }

// h(x) = (x+1) log2(x+1) - x log2(x), continuously extended with h(0) = 0.
// Evaluated as log2(x+1) + x*log1p(1/x)/ln2, which is exact algebraically and
// avoids cancellation for large x.
inline double bosonic_entropy_h(double x) {
    if (x < -1e-12) {
        throw std::domain_error("bosonic_entropy_h: negative argument " + std::to_string(x));
    }
    if (x <= 0.0) return 0.0;
    if (std::isinf(x)) return std::numeric_limits<double>::infinity();
    return std::log2(x + 1.0) + x * std::log1p(1.0 / x) / M_LN2;
}

// Shannon entropy of {p, 1-p} in bits; zero eigenvalues contribute 0.
inline double binary_entropy(double p) {
    double s = 0.0;
    if (p > 0.0) s -= p * std::log2(p);
    if (p < 1.0) s -= (1.0 - p) * std::log2(1.0 - p);
    return s;
}

inline bool nearly_equal(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace duplex
