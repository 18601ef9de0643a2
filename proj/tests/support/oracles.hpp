// oracles.hpp — test-only reference implementations, kept independent of the
// code paths they certify
#pragma once

#include "uscqed/gme.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <vector>

namespace uscqed::testing {

// Time-domain quantum-regression spectrum: propagate rho_ss X- with exp(L dt)
// steps and Fourier-transform the correlation by the trapezoid rule. This is
// the ordering oracle for the resolvent evaluator.
inline Eigen::VectorXd spectrum_time_domain(const Liouvillian& liouvillian, const Matrix& rho_ss,
                                            const TransitionSet& cav,
                                            const Eigen::VectorXd& omega_grid, double t_max,
                                            int n_steps) {
    const int m = liouvillian.m;
    const Matrix x_plus = cav.x_plus_total();
    const Matrix seed = rho_ss * x_plus.adjoint();
    Vector v = Eigen::Map<const Vector>(seed.data(), m * m);

    const double dt = t_max / n_steps;
    const Matrix u = (liouvillian.mat * dt).exp();
    std::vector<Complex> corr(n_steps + 1);
    for (int i = 0; i <= n_steps; ++i) {
        const Matrix rho_t = Eigen::Map<const Matrix>(v.data(), m, m);
        corr[i] = (x_plus * rho_t).trace();
        if (i < n_steps) v = u * v;
    }
    Eigen::VectorXd out(omega_grid.size());
    for (Eigen::Index w = 0; w < omega_grid.size(); ++w) {
        Complex acc = 0.0;
        for (int i = 0; i <= n_steps; ++i) {
            const double weight = (i == 0 || i == n_steps) ? 0.5 : 1.0;
            acc += weight * std::exp(Complex(0.0, omega_grid(w) * i * dt)) * corr[i];
        }
        out(w) = (acc * dt).real();
    }
    return out;
}

struct Peak {
    double omega;
    double height;
};

// Local maxima above `floor` times the global maximum, largest first.
inline std::vector<Peak> find_peaks(const Eigen::VectorXd& omega, const Eigen::VectorXd& s,
                                    double floor = 0.02) {
    double smax = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (std::isfinite(s(i))) smax = std::max(smax, s(i));
    std::vector<Peak> peaks;
    for (Eigen::Index i = 1; i + 1 < s.size(); ++i)
        if (s(i) > s(i - 1) && s(i) > s(i + 1) && s(i) >= floor * smax)
            peaks.push_back({omega(i), s(i)});
    std::sort(peaks.begin(), peaks.end(),
              [](const Peak& a, const Peak& b) { return a.height > b.height; });
    return peaks;
}

// The grid argmax inside [lo, hi].
inline Eigen::Index window_argmax(const Eigen::VectorXd& omega, const Eigen::VectorXd& s,
                                  double lo, double hi) {
    Eigen::Index best = -1;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (omega(i) < lo || omega(i) > hi || !std::isfinite(s(i))) continue;
        if (best < 0 || s(i) > s(best)) best = i;
    }
    return best;
}

}  // namespace uscqed::testing
