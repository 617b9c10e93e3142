// optimize.hpp — Small deterministic optimizers used for boundary sharpening:
// Nelder-Mead simplex ascent and golden-section line search.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace duplex {

struct NelderMeadOptions {
    int max_iters = 400;
    double x_tol = 1e-10;
    double f_tol = 1e-12;
    double init_step = 0.25;
};

// Maximizes f over R^k from x0 with a fixed deterministic initial simplex.
// Box constraints are handled by clamping inside the caller's objective.
template <typename F>
std::pair<Eigen::VectorXd, double> nelder_mead_max(const F& f, Eigen::VectorXd x0,
                                                   const NelderMeadOptions& opt = {}) {
    const int k = static_cast<int>(x0.size());
    std::vector<Eigen::VectorXd> xs(k + 1, x0);
    std::vector<double> fs(k + 1);
    for (int i = 0; i < k; ++i) xs[i + 1](i) += opt.init_step;
    for (int i = 0; i <= k; ++i) fs[i] = f(xs[i]);

    auto order = [&]() {
        std::vector<int> idx(k + 1);
        for (int i = 0; i <= k; ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return fs[a] > fs[b]; });
        std::vector<Eigen::VectorXd> xs2(k + 1);
        std::vector<double> fs2(k + 1);
        for (int i = 0; i <= k; ++i) {
            xs2[i] = xs[idx[i]];
            fs2[i] = fs[idx[i]];
        }
        xs.swap(xs2);
        fs.swap(fs2);
    };

    order();
    for (int iter = 0; iter < opt.max_iters; ++iter) {
        double spread = 0.0;
        for (int i = 1; i <= k; ++i) spread = std::max(spread, (xs[i] - xs[0]).norm());
        if (spread < opt.x_tol && std::abs(fs[0] - fs[k]) < opt.f_tol) break;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(k);
        for (int i = 0; i < k; ++i) centroid += xs[i];
        centroid /= k;

        const Eigen::VectorXd refl = centroid + (centroid - xs[k]);
        const double f_refl = f(refl);
        if (f_refl > fs[0]) {
            const Eigen::VectorXd expd = centroid + 2.0 * (centroid - xs[k]);
            const double f_expd = f(expd);
            if (f_expd > f_refl) {
                xs[k] = expd;
                fs[k] = f_expd;
            } else {
                xs[k] = refl;
                fs[k] = f_refl;
            }
        } else if (f_refl > fs[k - 1]) {
            xs[k] = refl;
            fs[k] = f_refl;
        } else {
            const Eigen::VectorXd contr = centroid + 0.5 * (xs[k] - centroid);
            const double f_contr = f(contr);
            if (f_contr > fs[k]) {
                xs[k] = contr;
                fs[k] = f_contr;
            } else {
                for (int i = 1; i <= k; ++i) {
                    xs[i] = xs[0] + 0.5 * (xs[i] - xs[0]);
                    fs[i] = f(xs[i]);
                }
            }
        }
        order();
    }
    return {xs[0], fs[0]};
}

// Golden-section maximization of a unimodal function on [lo, hi].
template <typename F>
std::pair<double, double> golden_section_max(const F& f, double lo, double hi, int iters = 120) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
    double f1 = f(c1), f2 = f(c2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = c1;
            c1 = c2;
            f1 = f2;
            c2 = a + gr * (b - a);
            f2 = f(c2);
        } else {
            b = c2;
            c2 = c1;
            f2 = f1;
            c1 = b - gr * (b - a);
            f1 = f(c1);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

}  // namespace duplex
