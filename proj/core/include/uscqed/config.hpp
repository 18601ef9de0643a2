// config.hpp — Physical parameter set shared by every model builder
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace uscqed {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

enum class BathKind { Flat, Ohmic };
enum class Gauge { Dipole, Coulomb };
enum class ModelKind { Qrm, Jcm, QrmNaiveCoulomb, Saa, SaaRwa, Gdm, GdmRwa };

const char* to_string(BathKind k);
const char* to_string(Gauge g);
const char* to_string(ModelKind m);
BathKind bath_kind_from_string(const std::string& s);
Gauge gauge_from_string(const std::string& s);
ModelKind model_kind_from_string(const std::string& s);

// All frequencies, couplings and rates in units of omega_c (i.e. omega_c = 1
// is the conventional choice). Couplings are dipole-gauge magnitudes g^D; the
// second atom's coupling acquires the phase  g_b_complex = g_b * exp(i pi phi_b).
struct ModelConfig {
    double omega_c = 1.0;
    double omega_a = 1.0;
    double omega_b = 1.0;
    double omega_s = 1.0;

    double g_a = 0.5;
    double g_b = 0.0;
    double g_s = 0.0;
    double phi_b = 0.0;  // units of pi

    double kappa = 0.125;    // 0.25 g at eta = 0.5
    double gamma_a = 0.0025; // 0.005 g
    double gamma_b = 0.0;
    double gamma_s = 0.0;
    double p_inc = 0.005;    // 0.01 g

    BathKind bath_cav = BathKind::Ohmic;
    BathKind bath_atom = BathKind::Ohmic;
    BathKind bath_sensor = BathKind::Ohmic;

    Gauge gauge = Gauge::Dipole;
    ModelKind model = ModelKind::Qrm;

    // When false, the cavity field operator (and the Coulomb Hamiltonian) are
    // the naive uncorrected ones, for corrected-vs-naive comparison runs.
    bool gauge_corrected = true;

    int n_fock = 200;
    int m_dressed = 12;

    // GME assembly knobs (see gme.hpp). cross_window_factor <= 0 disables the
    // |w - w'| truncation of the non-secular double sum.
    double cross_window_factor = 10.0;
    double omega_min_cutoff_factor = 1e-9;  // in units of omega_c

    double eta_a() const { return g_a / omega_c; }
    double eta_b() const { return g_b / omega_c; }
    double eta_s() const { return g_s / omega_c; }
    std::complex<double> g_b_complex() const;
    std::complex<double> eta_b_complex() const { return g_b_complex() / omega_c; }

    bool two_atom() const { return model == ModelKind::Gdm || model == ModelKind::GdmRwa; }
    bool has_sensor() const { return model == ModelKind::Saa || model == ModelKind::SaaRwa; }

    void validate() const;  // throws ConfigError with the offending field named
};

}  // namespace uscqed
