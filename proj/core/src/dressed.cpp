#include "uscqed/dressed.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace uscqed {

namespace {

void phase_fix_column(Eigen::Ref<Vector> v) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = std::abs(v(i));
        if (a > best) {
            best = a;
            imax = i;
        }
    }
    if (best <= 0) return;
    const Complex phase = v(imax) / best;
    v *= std::conj(phase);
}

Eigen::Index first_significant(const Vector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) > 1e-6) return i;
    return v.size();
}

}  // namespace

DressedBasis diagonalize(const GaugeModel& model, int m_dressed) {
    const Eigen::Index total = model.layout.total_dim();
    if (m_dressed < 1 || m_dressed > total)
        throw ConfigError("diagonalize: m_dressed out of range");
    Eigen::SelfAdjointEigenSolver<Matrix> es(model.H.mat);
    if (es.info() != Eigen::Success)
        throw NumericalError("diagonalize: eigensolver failed for model " +
                             std::string(to_string(model.config.model)));

    DressedBasis basis;
    basis.gauge = model.config.gauge;
    basis.model_kind = model.config.model;
    basis.energies = es.eigenvalues().head(m_dressed).array() - es.eigenvalues()(0);
    basis.states = es.eigenvectors().leftCols(m_dressed);

    // Reorder within near-degenerate groups: descending bare parity, then the
    // position of the first significant bare-basis component.
    const Eigen::VectorXd par_diag = bare_parity_diagonal(model.layout);
    const double tol_deg = 1e-10 * model.config.omega_c;
    std::vector<int> order(m_dressed);
    std::iota(order.begin(), order.end(), 0);
    int lo = 0;
    while (lo < m_dressed) {
        int hi = lo + 1;
        while (hi < m_dressed && basis.energies(hi) - basis.energies(hi - 1) <= tol_deg) ++hi;
        if (hi - lo > 1) {
            std::stable_sort(order.begin() + lo, order.begin() + hi, [&](int a, int b) {
                const double pa = (basis.states.col(a).cwiseAbs2().array() * par_diag.array()).sum();
                const double pb = (basis.states.col(b).cwiseAbs2().array() * par_diag.array()).sum();
                if (std::abs(pa - pb) > 1e-9) return pa > pb;
                return first_significant(basis.states.col(a)) <
                       first_significant(basis.states.col(b));
            });
        }
        lo = hi;
    }
    Matrix reordered(total, m_dressed);
    Eigen::VectorXd energies(m_dressed);
    for (int i = 0; i < m_dressed; ++i) {
        reordered.col(i) = basis.states.col(order[i]);
        energies(i) = basis.energies(order[i]);
    }
    basis.states = std::move(reordered);
    basis.energies = std::move(energies);

    for (int i = 0; i < m_dressed; ++i) phase_fix_column(basis.states.col(i));
    return basis;
}

Matrix dressed_matrix(const DressedBasis& basis, const Matrix& op) {
    return basis.states.adjoint() * op * basis.states;
}

const char* to_string(Channel c) {
    switch (c) {
        case Channel::Cav: return "cav";
        case Channel::AtomA: return "atom_a";
        case Channel::AtomB: return "atom_b";
        case Channel::Sensor: return "sensor";
    }
    return "?";
}

Operator channel_operator(const GaugeModel& model, Channel c) {
    switch (c) {
        case Channel::Cav: return model.Pi;
        case Channel::AtomA: return pauli(model.layout, Pauli::X, Factor::AtomA);
        case Channel::AtomB: return pauli(model.layout, Pauli::X, Factor::AtomB);
        case Channel::Sensor: return pauli(model.layout, Pauli::X, Factor::Sensor);
    }
    throw ConfigError("channel_operator: unknown channel");
}

Matrix TransitionSet::x_plus_total() const {
    Matrix x = Matrix::Zero(m, m);
    for (const auto& t : list) x(t.j, t.k) += t.amp;
    return x;
}

TransitionSet jump_operators(const DressedBasis& basis, const GaugeModel& model, Channel channel,
                             double omega_cutoff) {
    const Matrix elems = dressed_matrix(basis, channel_operator(model, channel).mat);
    TransitionSet set;
    set.channel = channel;
    set.m = basis.m();
    for (int k = 1; k < set.m; ++k)
        for (int j = 0; j < k; ++j) {
            const double w = basis.energies(k) - basis.energies(j);
            if (w <= omega_cutoff) continue;
            const Complex c = elems(j, k);
            if (std::abs(c) < 1e-14) continue;
            set.list.push_back({j, k, w, c});
        }
    return set;
}

namespace {

ParityTable parity_from_number_operator(const DressedBasis& basis, const Matrix& n_op) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(n_op);
    if (es.info() != Eigen::Success)
        throw NumericalError("parity_table: eigendecomposition of the number operator failed");
    const Eigen::VectorXd w = es.eigenvalues();
    Vector phases(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i)
        phases(i) = std::exp(Complex(0.0, M_PI * w(i)));
    // <j|P|j> = sum_m exp(i pi n_m) |<m|j>|^2
    const Matrix overlaps = es.eigenvectors().adjoint() * basis.states;  // D x M
    ParityTable table;
    const int m = basis.m();
    table.value.resize(m);
    table.label.resize(m);
    table.mixed.resize(m);
    for (int jj = 0; jj < m; ++jj) {
        Complex v = 0.0;
        for (Eigen::Index i = 0; i < w.size(); ++i)
            v += phases(i) * std::norm(overlaps(i, jj));
        table.value(jj) = v.real();
        table.label[jj] = v.real() >= 0.0 ? +1 : -1;
        table.mixed[jj] = std::abs(v.real()) < 0.99;
    }
    return table;
}

}  // namespace

ParityTable parity_table(const DressedBasis& basis, const GaugeModel& model) {
    const ModelKind kind = model.config.model;
    if (kind != ModelKind::Qrm && kind != ModelKind::Gdm && kind != ModelKind::QrmNaiveCoulomb)
        throw ConfigError("parity_table: defined for qrm/gdm models");
    Matrix n_op = model.a_corrected.mat.adjoint() * model.a_corrected.mat;
    for (Factor f : model.layout.atomic_factors())
        n_op += pauli(model.layout, Pauli::Plus, f).mat * pauli(model.layout, Pauli::Minus, f).mat;
    n_op = 0.5 * (n_op + n_op.adjoint()).eval();
    return parity_from_number_operator(basis, n_op);
}

ParityTable parity_table_bare(const DressedBasis& basis, const GaugeModel& model) {
    const Eigen::VectorXd par = bare_parity_diagonal(model.layout);
    ParityTable table;
    const int m = basis.m();
    table.value.resize(m);
    table.label.resize(m);
    table.mixed.resize(m);
    for (int jj = 0; jj < m; ++jj) {
        const double v = (basis.states.col(jj).cwiseAbs2().array() * par.array()).sum();
        table.value(jj) = v;
        table.label[jj] = v >= 0.0 ? +1 : -1;
        table.mixed[jj] = std::abs(v) < 0.99;
    }
    return table;
}

std::vector<FluxEntry> quadrature_rates(const DressedBasis& basis, const GaugeModel& model,
                                        BathKind bath, double base_rate, double reference) {
    const Matrix elems = dressed_matrix(basis, model.Pi.mat);
    std::vector<FluxEntry> out;
    for (int k = 1; k < basis.m(); ++k)
        for (int j = 0; j < k; ++j) {
            const double w = basis.energies(k) - basis.energies(j);
            if (w <= 0) continue;
            const double p2 = 0.5 * std::norm(elems(j, k));
            const double d2 = bath == BathKind::Flat ? base_rate : base_rate * w / reference;
            out.push_back({j, k, w, p2, 2.0 * M_PI * d2 * p2});
        }
    return out;
}

}  // namespace uscqed
