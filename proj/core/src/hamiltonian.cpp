#include "uscqed/hamiltonian.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace uscqed {

namespace {

const Complex kI{0.0, 1.0};

Matrix hermitize(Matrix m) { return 0.5 * (m + m.adjoint()); }

void check_hermitian(const Matrix& h, const char* who) {
    if (!is_hermitian(h))
        throw NumericalError(std::string(who) + ": built Hamiltonian is not Hermitian");
}

// Rotated sigma_y for a complex coupling phase theta: the local frame in which
// the |g_b| Coulomb trig form lives.
Matrix sigma_y_rotated(double theta) {
    return std::cos(theta) * sigma_y2() - std::sin(theta) * sigma_x2();
}

struct Parts {
    SpaceLayout lay;
    Matrix a, ad, n;
    Parts(const SpaceLayout& l)
        : lay(l),
          a(annihilation(l).mat),
          ad(creation(l).mat),
          n(number(l).mat) {}
    Matrix sx(Factor f) const { return pauli(lay, Pauli::X, f).mat; }
    Matrix sz(Factor f) const { return pauli(lay, Pauli::Z, f).mat; }
    Matrix sp(Factor f) const { return pauli(lay, Pauli::Plus, f).mat; }
    Matrix sm(Factor f) const { return pauli(lay, Pauli::Minus, f).mat; }
};

Operator corrected_annihilation(const SpaceLayout& lay, const ModelConfig& cfg) {
    Matrix ap = annihilation(lay).mat;
    ap += kI * cfg.eta_a() * pauli(lay, Pauli::X, Factor::AtomA).mat;
    if (lay.has(Factor::AtomB))
        ap += kI * cfg.eta_b_complex() * pauli(lay, Pauli::X, Factor::AtomB).mat;
    if (lay.has(Factor::Sensor))
        ap += kI * cfg.eta_s() * pauli(lay, Pauli::X, Factor::Sensor).mat;
    return {lay, std::move(ap)};
}

GaugeModel finish(const SpaceLayout& lay, const ModelConfig& cfg, Matrix H, bool corrected) {
    GaugeModel m;
    m.layout = lay;
    m.config = cfg;
    check_hermitian(H, to_string(cfg.model));
    m.H = {lay, std::move(H)};
    if (cfg.gauge == Gauge::Dipole && corrected)
        m.a_corrected = corrected_annihilation(lay, cfg);
    else
        m.a_corrected = annihilation(lay);
    m.Pi = {lay, Matrix(kI * (m.a_corrected.mat.adjoint() - m.a_corrected.mat))};
    return m;
}

}  // namespace

std::pair<Matrix, Matrix> quadrature_trig(double eta, int n_fock) {
    const Matrix a = annihilation_local(n_fock);
    Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(a + a.adjoint()));
    if (es.info() != Eigen::Success)
        throw NumericalError("quadrature_trig: eigendecomposition failed");
    const Eigen::VectorXd w = es.eigenvalues();
    const Matrix& v = es.eigenvectors();
    Eigen::VectorXd c(w.size()), s(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        c(i) = std::cos(2.0 * eta * w(i));
        s(i) = std::sin(2.0 * eta * w(i));
    }
    Matrix cosm = hermitize(v * c.asDiagonal() * v.adjoint());
    Matrix sinm = hermitize(v * s.asDiagonal() * v.adjoint());
    return {std::move(cosm), std::move(sinm)};
}

GaugeModel build_qrm_dipole(const ModelConfig& cfg) {
    const auto lay = SpaceLayout::single_atom(cfg.n_fock);
    Parts p(lay);
    Matrix H = cfg.omega_c * p.n + 0.5 * cfg.omega_a * p.sz(Factor::AtomA) +
               kI * cfg.g_a * (p.ad - p.a) * p.sx(Factor::AtomA);
    return finish(lay, cfg, std::move(H), cfg.gauge_corrected);
}

GaugeModel build_jcm(const ModelConfig& cfg) {
    const auto lay = SpaceLayout::single_atom(cfg.n_fock);
    Parts p(lay);
    Matrix H = cfg.omega_c * p.n + 0.5 * cfg.omega_a * p.sz(Factor::AtomA) +
               kI * cfg.g_a * (p.ad * p.sm(Factor::AtomA) - p.a * p.sp(Factor::AtomA));
    return finish(lay, cfg, std::move(H), false);
}

GaugeModel build_qrm_coulomb(const ModelConfig& cfg, bool gauge_fixed) {
    const auto lay = SpaceLayout::single_atom(cfg.n_fock);
    Parts p(lay);
    Matrix H;
    if (gauge_fixed) {
        auto [cosm, sinm] = quadrature_trig(cfg.eta_a(), cfg.n_fock);
        H = cfg.omega_c * p.n +
            0.5 * cfg.omega_a *
                (embed_product(lay, {{Factor::Cavity, cosm}, {Factor::AtomA, sigma_z2()}}).mat +
                 embed_product(lay, {{Factor::Cavity, sinm}, {Factor::AtomA, sigma_y2()}}).mat);
    } else {
        const double g_c = cfg.g_a * cfg.omega_a / cfg.omega_c;
        const double d_pond = g_c * g_c / cfg.omega_a;
        const Matrix x = p.a + p.ad;
        H = cfg.omega_c * p.n + 0.5 * cfg.omega_a * p.sz(Factor::AtomA) +
            g_c * x * pauli(lay, Pauli::Y, Factor::AtomA).mat + d_pond * x * x;
    }
    return finish(lay, cfg, std::move(H), false);
}

GaugeModel build_saa(const ModelConfig& cfg, Gauge gauge, bool rwa) {
    const auto lay = SpaceLayout::with_sensor(cfg.n_fock);
    Parts p(lay);
    ModelConfig c = cfg;
    c.gauge = gauge;
    Matrix H;
    if (gauge == Gauge::Dipole) {
        if (rwa) {
            H = cfg.omega_c * p.n + 0.5 * cfg.omega_a * p.sz(Factor::AtomA) +
                kI * cfg.g_a * (p.ad * p.sm(Factor::AtomA) - p.a * p.sp(Factor::AtomA)) +
                0.5 * cfg.omega_s * p.sz(Factor::Sensor) +
                cfg.g_s * (kI * (p.ad * p.sm(Factor::Sensor) - p.a * p.sp(Factor::Sensor)) +
                           2.0 * cfg.eta_a() *
                               (p.sp(Factor::AtomA) * p.sm(Factor::Sensor) +
                                p.sm(Factor::AtomA) * p.sp(Factor::Sensor)));
        } else {
            Matrix sen_coupling = kI * (p.ad - p.a);
            if (cfg.gauge_corrected) sen_coupling += 2.0 * cfg.eta_a() * p.sx(Factor::AtomA);
            H = cfg.omega_c * p.n + 0.5 * cfg.omega_a * p.sz(Factor::AtomA) +
                kI * cfg.g_a * (p.ad - p.a) * p.sx(Factor::AtomA) +
                0.5 * cfg.omega_s * p.sz(Factor::Sensor) +
                cfg.g_s * sen_coupling * p.sx(Factor::Sensor);
        }
    } else {
        auto [cos_a, sin_a] = quadrature_trig(cfg.eta_a(), cfg.n_fock);
        auto [cos_s, sin_s] = quadrature_trig(cfg.eta_s(), cfg.n_fock);
        if (cfg.gauge_corrected) {
            H = cfg.omega_c * p.n +
                0.5 * cfg.omega_a *
                    (embed_product(lay, {{Factor::Cavity, cos_a}, {Factor::AtomA, sigma_z2()}}).mat +
                     embed_product(lay, {{Factor::Cavity, sin_a}, {Factor::AtomA, sigma_y2()}}).mat) +
                0.5 * cfg.omega_s *
                    (embed_product(lay, {{Factor::Cavity, cos_s}, {Factor::Sensor, sigma_z2()}}).mat +
                     embed_product(lay, {{Factor::Cavity, sin_s}, {Factor::Sensor, sigma_y2()}}).mat);
        } else {
            // naive: bare sensor term + linear sigma_y couplings, no trig resummation
            const double g_c = cfg.g_a * cfg.omega_a / cfg.omega_c;
            const double d_pond = g_c * g_c / cfg.omega_a;
            const Matrix x = p.a + p.ad;
            H = cfg.omega_c * p.n + 0.5 * cfg.omega_a * p.sz(Factor::AtomA) +
                g_c * x * pauli(lay, Pauli::Y, Factor::AtomA).mat + d_pond * x * x +
                0.5 * cfg.omega_s * p.sz(Factor::Sensor) +
                cfg.g_s * x * pauli(lay, Pauli::Y, Factor::Sensor).mat;
        }
    }
    return finish(lay, c, std::move(H), gauge == Gauge::Dipole && !rwa && cfg.gauge_corrected);
}

GaugeModel build_gdm(const ModelConfig& cfg, Gauge gauge, bool rwa) {
    const auto lay = SpaceLayout::two_atom(cfg.n_fock);
    Parts p(lay);
    ModelConfig c = cfg;
    c.gauge = gauge;
    const Complex gb = cfg.g_b_complex();
    const Complex eb = cfg.eta_b_complex();
    Matrix H;
    if (gauge == Gauge::Dipole) {
        if (rwa) {
            H = cfg.omega_c * p.n + 0.5 * cfg.omega_a * p.sz(Factor::AtomA) +
                kI * cfg.g_a * (p.ad * p.sm(Factor::AtomA) - p.a * p.sp(Factor::AtomA)) +
                0.5 * cfg.omega_b * p.sz(Factor::AtomB) +
                (kI * gb * p.ad * p.sm(Factor::AtomB) -
                 kI * std::conj(gb) * p.a * p.sp(Factor::AtomB)) +
                2.0 * cfg.omega_c * cfg.eta_a() * eb.real() *
                    (p.sp(Factor::AtomA) * p.sm(Factor::AtomB) +
                     p.sm(Factor::AtomA) * p.sp(Factor::AtomB));
        } else {
            H = cfg.omega_c * p.n + 0.5 * cfg.omega_a * p.sz(Factor::AtomA) +
                kI * cfg.g_a * (p.ad - p.a) * p.sx(Factor::AtomA) +
                0.5 * cfg.omega_b * p.sz(Factor::AtomB) +
                (kI * gb * p.ad - kI * std::conj(gb) * p.a) * p.sx(Factor::AtomB) +
                2.0 * cfg.omega_c * cfg.eta_a() * eb.real() * p.sx(Factor::AtomA) *
                    p.sx(Factor::AtomB);
        }
    } else {
        auto [cos_a, sin_a] = quadrature_trig(cfg.eta_a(), cfg.n_fock);
        auto [cos_b, sin_b] = quadrature_trig(std::abs(eb), cfg.n_fock);
        if (cfg.gauge_corrected) {
            // complex phase absorbed into a local rotation of the atom-b frame
            H = cfg.omega_c * p.n +
                0.5 * cfg.omega_a *
                    (embed_product(lay, {{Factor::Cavity, cos_a}, {Factor::AtomA, sigma_z2()}}).mat +
                     embed_product(lay, {{Factor::Cavity, sin_a}, {Factor::AtomA, sigma_y2()}}).mat) +
                0.5 * cfg.omega_b *
                    (embed_product(lay, {{Factor::Cavity, cos_b}, {Factor::AtomB, sigma_z2()}}).mat +
                     embed_product(lay, {{Factor::Cavity, sin_b},
                                         {Factor::AtomB, sigma_y_rotated(M_PI * cfg.phi_b)}}).mat);
        } else {
            const double g_ca = cfg.g_a * cfg.omega_a / cfg.omega_c;
            const double g_cb = std::abs(gb) * cfg.omega_b / cfg.omega_c;
            const double d_pond = g_ca * g_ca / cfg.omega_a + g_cb * g_cb / cfg.omega_b;
            const Matrix x = p.a + p.ad;
            H = cfg.omega_c * p.n + 0.5 * cfg.omega_a * p.sz(Factor::AtomA) +
                0.5 * cfg.omega_b * p.sz(Factor::AtomB) +
                g_ca * x * pauli(lay, Pauli::Y, Factor::AtomA).mat +
                g_cb * x *
                    embed(lay, Factor::AtomB, sigma_y_rotated(M_PI * cfg.phi_b)).mat +
                d_pond * x * x;
        }
    }
    return finish(lay, c, std::move(H), gauge == Gauge::Dipole && !rwa && cfg.gauge_corrected);
}

GaugeModel build_model(const ModelConfig& cfg) {
    cfg.validate();
    switch (cfg.model) {
        case ModelKind::Qrm:
            return cfg.gauge == Gauge::Dipole ? build_qrm_dipole(cfg)
                                              : build_qrm_coulomb(cfg, cfg.gauge_corrected);
        case ModelKind::Jcm:
            return build_jcm(cfg);
        case ModelKind::QrmNaiveCoulomb:
            return build_qrm_coulomb(cfg, false);
        case ModelKind::Saa:
            return build_saa(cfg, cfg.gauge, false);
        case ModelKind::SaaRwa:
            return build_saa(cfg, cfg.gauge, true);
        case ModelKind::Gdm:
            return build_gdm(cfg, cfg.gauge, false);
        case ModelKind::GdmRwa:
            return build_gdm(cfg, cfg.gauge, true);
    }
    throw ConfigError("build_model: unhandled model kind");
}

double gauge_transform_check(const GaugeModel& dipole_model, const GaugeModel& coulomb_model,
                             int m) {
    if (dipole_model.config.gauge != Gauge::Dipole || coulomb_model.config.gauge != Gauge::Coulomb)
        throw ConfigError("gauge_transform_check: expects one dipole and one coulomb model");
    ModelConfig a = dipole_model.config;
    ModelConfig b = coulomb_model.config;
    a.gauge = b.gauge = Gauge::Dipole;
    const bool same = a.omega_c == b.omega_c && a.omega_a == b.omega_a && a.omega_b == b.omega_b &&
                      a.omega_s == b.omega_s && a.g_a == b.g_a && a.g_b == b.g_b &&
                      a.g_s == b.g_s && a.phi_b == b.phi_b && a.n_fock == b.n_fock;
    if (!same)
        throw ConfigError("gauge_transform_check: configs differ beyond the gauge");

    Eigen::SelfAdjointEigenSolver<Matrix> esd(dipole_model.H.mat, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Matrix> esc(coulomb_model.H.mat, Eigen::EigenvaluesOnly);
    if (esd.info() != Eigen::Success || esc.info() != Eigen::Success)
        throw NumericalError("gauge_transform_check: eigensolver failed");
    const auto& ed = esd.eigenvalues();
    const auto& ec = esc.eigenvalues();
    double worst = 0.0;
    for (int j = 0; j < m && j < ed.size(); ++j)
        worst = std::max(worst, std::abs((ed(j) - ed(0)) - (ec(j) - ec(0))));
    return worst;
}

Operator bare_excitation_number(const SpaceLayout& layout) {
    Matrix n = number(layout).mat;
    for (Factor f : layout.atomic_factors())
        n += pauli(layout, Pauli::Plus, f).mat * pauli(layout, Pauli::Minus, f).mat;
    return {layout, std::move(n)};
}

}  // namespace uscqed
