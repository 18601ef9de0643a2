// hamiltonian.hpp — Gauge-fixed system Hamiltonians and corrected field operators
//
// Dipole-gauge models carry the corrected cavity operator a' = a + i sum_k eta_k sigma_x,k;
// the field coupling operator is Pi^D = i(a'^dag - a'). Coulomb-gauge models use the
// bare a and Pi^C = i(a^dag - a), with the light-matter interaction folded into
// operator-valued cos/sin of the quadrature. The two builds of the same config have
// identical eigenvalues and identical |<j|Pi|k>| (the sign convention for a' is the
// unique one consistent with that).
#pragma once

#include "uscqed/config.hpp"
#include "uscqed/hilbert.hpp"

namespace uscqed {

struct GaugeModel {
    SpaceLayout layout;
    ModelConfig config;
    Operator H;            // Hermitian
    Operator Pi;           // electric-field-like coupling operator for baths/observables
    Operator a_corrected;  // a' in the dipole gauge, bare a otherwise
};

// cos(2 eta (a+a^dag)) and sin(...) on the cavity factor, by eigendecomposition
// of the quadrature. Exact within the Fock truncation.
std::pair<Matrix, Matrix> quadrature_trig(double eta, int n_fock);

GaugeModel build_qrm_dipole(const ModelConfig& cfg);
GaugeModel build_jcm(const ModelConfig& cfg);
GaugeModel build_qrm_coulomb(const ModelConfig& cfg, bool gauge_fixed);
GaugeModel build_saa(const ModelConfig& cfg, Gauge gauge, bool rwa);
GaugeModel build_gdm(const ModelConfig& cfg, Gauge gauge, bool rwa);

// Dispatch on cfg.model / cfg.gauge / cfg.gauge_corrected.
GaugeModel build_model(const ModelConfig& cfg);

// Max over the first m ground-aligned levels of |E_j^D - E_j^C|.
// Requires the two models to share every parameter except the gauge.
double gauge_transform_check(const GaugeModel& dipole_model, const GaugeModel& coulomb_model,
                             int m);

// Bare excitation number a^dag a + sum_k sigma^+_k sigma^-_k (conserved by RWA builds).
Operator bare_excitation_number(const SpaceLayout& layout);

}  // namespace uscqed
