#include "uscqed/spectra.hpp"

#include <Eigen/LU>

#include <atomic>
#include <cmath>
#include <iostream>
#include <limits>
#include <thread>

namespace uscqed {

void SpectrumResult::normalize() {
    double peak = 0.0;
    for (Eigen::Index i = 0; i < intensity.size(); ++i)
        if (std::isfinite(intensity(i))) peak = std::max(peak, intensity(i));
    if (peak > 0.0) intensity /= peak;
}

Eigen::VectorXd default_omega_grid() {
    return Eigen::VectorXd::LinSpaced(400, 0.05, 2.2);
}

SpectrumResult spectrum_qrt(const Liouvillian& liouvillian, const Matrix& rho_ss,
                            const TransitionSet& cav, const Eigen::VectorXd& omega_grid) {
    const int m = liouvillian.m;
    const Eigen::Index n = liouvillian.dim();
    const Matrix x_plus = cav.x_plus_total();
    const Matrix seed = rho_ss * x_plus.adjoint();  // rho_ss X-
    const Vector v = Eigen::Map<const Vector>(seed.data(), n);

    SpectrumResult out;
    out.method = "qrt";
    out.omega = omega_grid;
    out.intensity.resize(omega_grid.size());

    Matrix shifted(n, n);
    for (Eigen::Index i = 0; i < omega_grid.size(); ++i) {
        shifted = -liouvillian.mat;
        shifted.diagonal().array() -= Complex(0.0, omega_grid(i));
        Eigen::PartialPivLU<Matrix> lu(shifted);
        const Vector y = lu.solve(v);
        const double resid = (shifted * y - v).norm();
        if (!y.allFinite() || resid > 1e-6 * (1.0 + v.norm()))
            throw NumericalError("spectrum_qrt: singular resolvent at omega = " +
                                 std::to_string(omega_grid(i)));
        const Matrix rho_t = Eigen::Map<const Matrix>(y.data(), m, m);
        double s = (x_plus * rho_t).trace().real();
        if (s < 0.0 && s > -1e-10) {
            s = 0.0;
            ++out.clipped;
        }
        out.intensity(i) = s;
    }
    return out;
}

double saa_invasiveness(const ModelConfig& cfg) {
    ModelConfig probe = cfg;
    probe.model = ModelKind::Qrm;
    probe.gauge = Gauge::Dipole;
    const GaugeModel model = build_model(probe);
    const DressedBasis basis = diagonalize(model, probe.m_dressed);
    const auto flux = quadrature_rates(basis, model, cfg.bath_cav, cfg.kappa, cfg.omega_c);
    double r_min = 0.0;
    double r_max = 0.0;
    for (const auto& f : flux) r_max = std::max(r_max, f.rate);
    for (const auto& f : flux)
        if (f.rate > 1e-3 * r_max) r_min = (r_min == 0.0) ? f.rate : std::min(r_min, f.rate);
    if (r_min <= 0.0 || cfg.gamma_s <= 0.0) return std::numeric_limits<double>::infinity();
    return cfg.g_s / std::sqrt(cfg.gamma_s * r_min / 2.0);
}

SpectrumResult spectrum_saa(const ModelConfig& base, const Eigen::VectorXd& omega_s_grid,
                            const SaaOptions& opts) {
    ModelConfig cfg = base;
    cfg.model = ModelKind::Saa;
    if (opts.m_dressed > 0) cfg.m_dressed = opts.m_dressed;
    cfg.validate();

    if (opts.warn_invasive) {
        const double q = saa_invasiveness(cfg);
        if (!(q < 0.5))
            std::cerr << "[uscqed] warning: sensor coupling is not noninvasive "
                         "(g_s / sqrt(gamma_s R / 2) = "
                      << q << ")\n";
    }

    SpectrumResult out;
    out.method = "saa";
    out.gauge = to_string(cfg.gauge);
    out.omega = omega_s_grid;
    out.intensity.setConstant(omega_s_grid.size(),
                              std::numeric_limits<double>::quiet_NaN());

    std::vector<int> failed_flags(omega_s_grid.size(), 0);
    std::atomic<Eigen::Index> next{0};
    const int workers = std::max(1, opts.workers);

    auto work = [&]() {
        for (;;) {
            const Eigen::Index i = next.fetch_add(1);
            if (i >= omega_s_grid.size()) return;
            try {
                ModelConfig point = cfg;
                point.omega_s = omega_s_grid(i);
                const GaugeModel model = build_model(point);
                const DressedBasis basis = diagonalize(model, point.m_dressed);
                const AssembledGme gme = assemble_liouvillian(model, basis);
                const Matrix rho = steady_state(gme.liouvillian);
                const double cutoff = point.omega_min_cutoff_factor * point.omega_c;
                const TransitionSet sen = jump_operators(basis, model, Channel::Sensor, cutoff);
                const Matrix xp = sen.x_plus_total();
                out.intensity(i) = (rho * xp.adjoint() * xp).trace().real();
            } catch (const std::exception&) {
                failed_flags[i] = 1;
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    for (Eigen::Index i = 0; i < omega_s_grid.size(); ++i)
        if (failed_flags[i]) out.failed.push_back(static_cast<int>(i));
    return out;
}

std::vector<FluxEntry> photon_flux_table(const DressedBasis& basis, const GaugeModel& model) {
    const ModelConfig& cfg = model.config;
    return quadrature_rates(basis, model, cfg.bath_cav, cfg.kappa, cfg.omega_c);
}

}  // namespace uscqed
