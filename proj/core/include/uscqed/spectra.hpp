// spectra.hpp — Cavity-emitted spectra via the quantum regression theorem and via
// a frequency-swept sensing atom
#pragma once

#include "uscqed/gme.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace uscqed {

struct SpectrumResult {
    Eigen::VectorXd omega;      // units of omega_c
    Eigen::VectorXd intensity;  // >= 0 after clipping; NaN marks failed grid points
    std::string method;         // "qrt" | "saa"
    std::string gauge;
    std::uint64_t config_hash = 0;
    int clipped = 0;            // tiny negatives clipped to zero
    std::vector<int> failed;    // grid indices whose solve failed (saa)

    void normalize();  // scale max intensity to 1 (no-op on an all-zero result)
};

Eigen::VectorXd default_omega_grid();  // 400 points over [0.05, 2.2]

// S(omega) = Re Tr{ X+_cav [-(L + i omega)]^-1 (rho_ss X-_cav) }, one dense solve
// per frequency. Throws NumericalError naming the frequency if the resolvent is
// singular (an undamped eigenvalue on the grid).
SpectrumResult spectrum_qrt(const Liouvillian& liouvillian, const Matrix& rho_ss,
                            const TransitionSet& cav, const Eigen::VectorXd& omega_grid);

struct SaaOptions {
    int workers = 1;
    int m_dressed = 0;      // 0: config.m_dressed
    bool warn_invasive = true;
};

// For each omega_s: rebuild the sensor model at that frequency, assemble the GME,
// solve the steady state and record <X-_sen X+_sen>. Failed points become NaN with
// their indices listed in `failed`.
SpectrumResult spectrum_saa(const ModelConfig& base, const Eigen::VectorXd& omega_s_grid,
                            const SaaOptions& opts = {});

// Noninvasiveness figure of merit g_s / sqrt(gamma_s R / 2) with R the smallest
// significant cavity transition rate; values near or above 1 mean the sensor
// perturbs the system.
double saa_invasiveness(const ModelConfig& cfg);

// quadrature_rates re-exported with the configured cavity bath weighting, for
// spectrum annotation.
std::vector<FluxEntry> photon_flux_table(const DressedBasis& basis, const GaugeModel& model);

}  // namespace uscqed
