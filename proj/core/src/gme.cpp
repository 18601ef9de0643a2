#include "uscqed/gme.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace uscqed {

Matrix spre(const Matrix& a) {
    return kron(Matrix::Identity(a.rows(), a.cols()), a);
}

Matrix spost(const Matrix& a) {
    return kron(a.transpose(), Matrix::Identity(a.rows(), a.cols()));
}

Matrix lindblad_dissipator(const Matrix& op) {
    const Matrix opd_op = op.adjoint() * op;
    return kron(op.conjugate(), op) - 0.5 * (spre(opd_op) + spost(opd_op));
}

Matrix build_dissipator(const TransitionSet& transitions, const BathSpec& bath,
                        double cross_window) {
    const int m = transitions.m;
    Matrix out = Matrix::Zero(m * m, m * m);
    const auto idx = [m](int r, int c) { return r + m * c; };
    for (const auto& p : transitions.list) {
        for (const auto& q : transitions.list) {
            if (cross_window >= 0.0) {
                const bool same = (p.j == q.j && p.k == q.k);
                if (!same && std::abs(p.omega - q.omega) > cross_window) continue;
            }
            const double gp = bath.rate(p.omega);
            const double gq = bath.rate(q.omega);
            const Complex coeff = p.amp * std::conj(q.amp);
            // X+_p rho X-_q : (j_p, j_q) <- rho(k_p, k_q)
            out(idx(p.j, q.j), idx(p.k, q.k)) += 0.5 * (gp + gq) * coeff;
            if (q.j == p.j) {
                // X-_q X+_p = conj(c_q) c_p |k_q><k_p|
                for (int b = 0; b < m; ++b) out(idx(q.k, b), idx(p.k, b)) -= 0.5 * gp * coeff;
                for (int a = 0; a < m; ++a) out(idx(a, p.k), idx(a, q.k)) -= 0.5 * gq * coeff;
            }
        }
    }
    return out;
}

Matrix build_pump(const TransitionSet& cav, double p_inc) {
    const int m = cav.m;
    if (p_inc <= 0.0) return Matrix::Zero(m * m, m * m);
    const Matrix x_minus = cav.x_plus_total().adjoint();
    return 0.5 * p_inc * 0.5 *
           (2.0 * kron(x_minus.conjugate(), x_minus) -
            spre(Matrix(x_minus.adjoint() * x_minus)) -
            spost(Matrix(x_minus.adjoint() * x_minus)));
}

Matrix coherent_superoperator(const Eigen::VectorXd& energies) {
    const int m = static_cast<int>(energies.size());
    Matrix out = Matrix::Zero(m * m, m * m);
    for (int c = 0; c < m; ++c)
        for (int r = 0; r < m; ++r)
            out(r + m * c, r + m * c) = Complex(0.0, -(energies(r) - energies(c)));
    return out;
}

namespace {

struct ChannelSpec {
    Channel channel;
    BathSpec bath;
};

std::vector<ChannelSpec> channel_specs(const GaugeModel& model) {
    const ModelConfig& cfg = model.config;
    std::vector<ChannelSpec> out;
    out.push_back({Channel::Cav, {cfg.bath_cav, cfg.kappa, cfg.omega_c}});
    out.push_back({Channel::AtomA, {cfg.bath_atom, cfg.gamma_a, cfg.omega_a}});
    if (model.layout.has(Factor::AtomB))
        out.push_back({Channel::AtomB, {cfg.bath_atom, cfg.gamma_b, cfg.omega_b}});
    if (model.layout.has(Factor::Sensor))
        // the sensor bath is referenced to the cavity frequency (its detection band)
        out.push_back({Channel::Sensor, {cfg.bath_sensor, cfg.gamma_s, cfg.omega_c}});
    return out;
}

}  // namespace

AssembledGme assemble_liouvillian(const GaugeModel& model, const DressedBasis& basis,
                                  const GmeOptions& opts) {
    const ModelConfig& cfg = model.config;
    if (basis.gauge != cfg.gauge || basis.model_kind != cfg.model)
        throw ConfigError("assemble_liouvillian: basis was diagonalized for a different "
                          "gauge or model");
    const double cutoff =
        opts.omega_cutoff > 0 ? opts.omega_cutoff : cfg.omega_min_cutoff_factor * cfg.omega_c;

    double max_rate = cfg.kappa;
    for (double g : {cfg.gamma_a, cfg.gamma_b, cfg.gamma_s}) max_rate = std::max(max_rate, g);
    const double factor = opts.cross_window_factor.value_or(cfg.cross_window_factor);
    const double window = factor > 0 ? factor * max_rate : -1.0;

    AssembledGme out;
    out.basis = basis;
    out.liouvillian.m = basis.m();
    out.liouvillian.mat = coherent_superoperator(basis.energies);
    for (const auto& [channel, bath] : channel_specs(model)) {
        TransitionSet set = jump_operators(basis, model, channel, cutoff);
        if (channel == Channel::Cav) out.cav = set;
        if (bath.base_rate > 0.0)
            out.liouvillian.mat += build_dissipator(set, bath, window);
    }
    out.liouvillian.mat += build_pump(out.cav, cfg.p_inc);
    return out;
}

AssembledGme assemble_liouvillian(const GaugeModel& model, const GmeOptions& opts) {
    return assemble_liouvillian(model, diagonalize(model, model.config.m_dressed), opts);
}

Matrix steady_state(const Liouvillian& liouvillian, const SteadyStateOptions& opts) {
    const int m = liouvillian.m;
    const Eigen::Index n = liouvillian.dim();

    if (opts.check_unique) {
        Eigen::BDCSVD<Matrix> svd(liouvillian.mat);
        const auto& sv = svd.singularValues();
        const double tol = opts.null_tol_rel * sv(0);
        int null_dim = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) < tol) ++null_dim;
        if (null_dim == 0)
            throw NumericalError("steady_state: Liouvillian has no null vector");
        if (null_dim > 1 && !opts.allow_degenerate) throw DegenerateSteadyState(null_dim);
    }

    Matrix a = liouvillian.mat;
    Vector b = Vector::Zero(n);
    a.row(0).setZero();  // replaced by the trace constraint
    for (int d = 0; d < m; ++d) a(0, d + m * d) = 1.0;
    b(0) = 1.0;
    Eigen::PartialPivLU<Matrix> lu(a);
    Vector x = lu.solve(b);

    Matrix rho = Eigen::Map<Matrix>(x.data(), m, m);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const Complex tr = rho.trace();
    if (std::abs(tr) < 1e-14)
        throw NumericalError("steady_state: traceless solution");
    rho /= tr;

    const double resid = (liouvillian.mat * Eigen::Map<const Vector>(rho.data(), n)).norm();
    if (resid > opts.residual_tol)
        throw NumericalError("steady_state: residual " + std::to_string(resid) +
                             " exceeds tolerance");
    return rho;
}

Matrix evolve(const Liouvillian& liouvillian, const Matrix& rho0, double t, EvolveMethod method) {
    if (t < 0) throw ConfigError("evolve: t must be >= 0");
    const int m = liouvillian.m;
    if (rho0.rows() != m || rho0.cols() != m)
        throw ConfigError("evolve: rho0 dimension mismatch");
    Vector v = Eigen::Map<const Vector>(rho0.data(), m * m);
    if (t == 0.0) return rho0;

    if (method == EvolveMethod::Expm) {
        const Matrix u = (liouvillian.mat * t).exp();
        v = u * v;
    } else {
        // fixed-step RK4; step from the Liouvillian scale
        const double scale = liouvillian.mat.cwiseAbs().rowwise().sum().maxCoeff();
        const int steps = std::max(64, static_cast<int>(std::ceil(t * scale * 2.0)));
        const double dt = t / steps;
        Vector k1(v.size()), k2(v.size()), k3(v.size()), k4(v.size());
        for (int s = 0; s < steps; ++s) {
            k1 = liouvillian.mat * v;
            k2 = liouvillian.mat * (v + 0.5 * dt * k1);
            k3 = liouvillian.mat * (v + 0.5 * dt * k2);
            k4 = liouvillian.mat * (v + dt * k3);
            v += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
    }
    Matrix rho = Eigen::Map<Matrix>(v.data(), m, m);
    return rho;
}

double trace_defect(const Liouvillian& liouvillian) {
    const int m = liouvillian.m;
    Eigen::RowVectorXcd tr = Eigen::RowVectorXcd::Zero(liouvillian.dim());
    for (int d = 0; d < m; ++d) tr(d + m * d) = 1.0;
    return (tr * liouvillian.mat).norm();
}

}  // namespace uscqed
