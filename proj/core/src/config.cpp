#include "uscqed/config.hpp"

#include <cmath>

namespace uscqed {

const char* to_string(BathKind k) {
    return k == BathKind::Flat ? "flat" : "ohmic";
}
const char* to_string(Gauge g) {
    return g == Gauge::Dipole ? "dipole" : "coulomb";
}
const char* to_string(ModelKind m) {
    switch (m) {
        case ModelKind::Qrm: return "qrm";
        case ModelKind::Jcm: return "jcm";
        case ModelKind::QrmNaiveCoulomb: return "qrm_naive_coulomb";
        case ModelKind::Saa: return "saa";
        case ModelKind::SaaRwa: return "saa_rwa";
        case ModelKind::Gdm: return "gdm";
        case ModelKind::GdmRwa: return "gdm_rwa";
    }
    return "?";
}

BathKind bath_kind_from_string(const std::string& s) {
    if (s == "flat") return BathKind::Flat;
    if (s == "ohmic") return BathKind::Ohmic;
    throw ConfigError("unknown bath kind '" + s + "' (expected flat|ohmic)");
}
Gauge gauge_from_string(const std::string& s) {
    if (s == "dipole") return Gauge::Dipole;
    if (s == "coulomb") return Gauge::Coulomb;
    throw ConfigError("unknown gauge '" + s + "' (expected dipole|coulomb)");
}
ModelKind model_kind_from_string(const std::string& s) {
    for (ModelKind m : {ModelKind::Qrm, ModelKind::Jcm, ModelKind::QrmNaiveCoulomb,
                        ModelKind::Saa, ModelKind::SaaRwa, ModelKind::Gdm, ModelKind::GdmRwa})
        if (s == to_string(m)) return m;
    throw ConfigError("unknown model '" + s + "'");
}

std::complex<double> ModelConfig::g_b_complex() const {
    return std::polar(g_b, M_PI * phi_b);
}

namespace {
void require(bool ok, const std::string& field, const std::string& why) {
    if (!ok) throw ConfigError("config." + field + ": " + why);
}
}  // namespace

void ModelConfig::validate() const {
    require(std::isfinite(omega_c) && omega_c > 0, "omega_c", "must be > 0");
    require(std::isfinite(omega_a) && omega_a > 0, "omega_a", "must be > 0");
    require(std::isfinite(omega_b) && omega_b > 0, "omega_b", "must be > 0");
    require(std::isfinite(omega_s) && omega_s > 0, "omega_s", "must be > 0");
    require(std::isfinite(g_a) && g_a >= 0, "g_a", "must be >= 0");
    require(std::isfinite(g_b) && g_b >= 0, "g_b", "must be >= 0 (phase lives in phi_b)");
    require(std::isfinite(g_s) && g_s >= 0, "g_s", "must be >= 0");
    require(std::isfinite(phi_b), "phi_b", "must be finite");
    require(std::isfinite(kappa) && kappa >= 0, "kappa", "must be >= 0");
    require(std::isfinite(gamma_a) && gamma_a >= 0, "gamma_a", "must be >= 0");
    require(std::isfinite(gamma_b) && gamma_b >= 0, "gamma_b", "must be >= 0");
    require(std::isfinite(gamma_s) && gamma_s >= 0, "gamma_s", "must be >= 0");
    require(std::isfinite(p_inc) && p_inc >= 0, "p_inc", "must be >= 0");
    require(n_fock >= 2, "n_fock", "must be >= 2");
    require(m_dressed >= 2, "m_dressed", "must be >= 2");

    const long total = static_cast<long>(n_fock) * (two_atom() || has_sensor() ? 4 : 2);
    require(m_dressed <= total, "m_dressed", "exceeds the total Hilbert-space dimension");

    if ((model == ModelKind::SaaRwa || model == ModelKind::GdmRwa) && gauge == Gauge::Coulomb)
        throw ConfigError("config.model: RWA variants are defined in the dipole gauge only");
    if (model == ModelKind::QrmNaiveCoulomb && gauge == Gauge::Dipole)
        throw ConfigError("config.model: qrm_naive_coulomb is a Coulomb-gauge model");
}

}  // namespace uscqed
