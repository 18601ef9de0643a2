#include "uscqed/hilbert.hpp"

#include <cmath>
#include <stdexcept>

namespace uscqed {

const char* to_string(Factor f) {
    switch (f) {
        case Factor::Cavity: return "cavity";
        case Factor::AtomA: return "atom_a";
        case Factor::AtomB: return "atom_b";
        case Factor::Sensor: return "sensor";
    }
    return "?";
}

SpaceLayout::SpaceLayout(std::initializer_list<std::pair<Factor, int>> fs)
    : factors(fs) {
    validate();
}

void SpaceLayout::validate() const {
    int prev = -1;
    int n_atoms = 0;
    int n_cavities = 0;
    for (const auto& [f, d] : factors) {
        const int rank = static_cast<int>(f);
        if (rank <= prev)
            throw std::invalid_argument(
                "SpaceLayout: factors must be unique and in canonical order "
                "(cavity, atom_a, atom_b, sensor)");
        prev = rank;
        if (f == Factor::Cavity) {
            ++n_cavities;
            if (d < 2) throw std::invalid_argument("SpaceLayout: cavity dim must be >= 2");
        } else {
            ++n_atoms;
            if (d != 2) throw std::invalid_argument("SpaceLayout: atomic factors must have dim 2");
        }
    }
    if (n_cavities > 1) throw std::invalid_argument("SpaceLayout: at most one cavity factor");
    if (n_atoms > 3) throw std::invalid_argument("SpaceLayout: at most three atomic factors");
}

Eigen::Index SpaceLayout::total_dim() const {
    Eigen::Index d = 1;
    for (const auto& [f, n] : factors) d *= n;
    return d;
}

bool SpaceLayout::has(Factor f) const {
    for (const auto& [g, d] : factors)
        if (g == f) return true;
    return false;
}

int SpaceLayout::dim_of(Factor f) const {
    for (const auto& [g, d] : factors)
        if (g == f) return d;
    throw std::invalid_argument(std::string("SpaceLayout: no factor ") + to_string(f));
}

int SpaceLayout::position_of(Factor f) const {
    for (std::size_t i = 0; i < factors.size(); ++i)
        if (factors[i].first == f) return static_cast<int>(i);
    throw std::invalid_argument(std::string("SpaceLayout: no factor ") + to_string(f));
}

std::vector<Factor> SpaceLayout::atomic_factors() const {
    std::vector<Factor> out;
    for (const auto& [f, d] : factors)
        if (f != Factor::Cavity) out.push_back(f);
    return out;
}

SpaceLayout SpaceLayout::cavity_only(int n_fock) {
    return SpaceLayout{{Factor::Cavity, n_fock}};
}
SpaceLayout SpaceLayout::single_atom(int n_fock) {
    return SpaceLayout{{Factor::Cavity, n_fock}, {Factor::AtomA, 2}};
}
SpaceLayout SpaceLayout::two_atom(int n_fock) {
    return SpaceLayout{{Factor::Cavity, n_fock}, {Factor::AtomA, 2}, {Factor::AtomB, 2}};
}
SpaceLayout SpaceLayout::with_sensor(int n_fock) {
    return SpaceLayout{{Factor::Cavity, n_fock}, {Factor::AtomA, 2}, {Factor::Sensor, 2}};
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

namespace {
const Complex kI{0.0, 1.0};
}

Matrix sigma_x2() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
Matrix sigma_y2() {
    Matrix m(2, 2);
    m << 0, -kI, kI, 0;
    return m;
}
Matrix sigma_z2() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}
Matrix sigma_plus2() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1;  // |e><g|
    return m;
}
Matrix sigma_minus2() {
    Matrix m = Matrix::Zero(2, 2);
    m(1, 0) = 1;  // |g><e|
    return m;
}

Matrix annihilation_local(int n_fock) {
    Matrix a = Matrix::Zero(n_fock, n_fock);
    for (int n = 1; n < n_fock; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Operator identity(const SpaceLayout& layout) {
    return {layout, Matrix::Identity(layout.total_dim(), layout.total_dim())};
}

Operator embed_product(const SpaceLayout& layout,
                       const std::vector<std::pair<Factor, Matrix>>& locals) {
    for (std::size_t i = 0; i < locals.size(); ++i)
        for (std::size_t j = i + 1; j < locals.size(); ++j)
            if (locals[i].first == locals[j].first)
                throw std::invalid_argument("embed_product: duplicate factor");
    Matrix out = Matrix::Identity(1, 1);
    for (const auto& [f, d] : layout.factors) {
        const Matrix* local = nullptr;
        for (const auto& [g, m] : locals)
            if (g == f) local = &m;
        if (local) {
            if (local->rows() != d || local->cols() != d)
                throw std::invalid_argument(
                    std::string("embed_product: local operator on ") + to_string(f) +
                    " has wrong dimension");
            out = kron(out, *local);
        } else {
            out = kron(out, Matrix::Identity(d, d));
        }
    }
    for (const auto& [f, m] : locals)
        if (!layout.has(f))
            throw std::invalid_argument(std::string("embed_product: layout has no factor ") +
                                        to_string(f));
    return {layout, std::move(out)};
}

Operator embed(const SpaceLayout& layout, Factor target, const Matrix& local) {
    return embed_product(layout, {{target, local}});
}

Operator annihilation(const SpaceLayout& layout) {
    if (!layout.has(Factor::Cavity))
        throw std::invalid_argument("annihilation: layout has no cavity factor");
    return embed(layout, Factor::Cavity, annihilation_local(layout.n_fock()));
}

Operator creation(const SpaceLayout& layout) {
    if (!layout.has(Factor::Cavity))
        throw std::invalid_argument("creation: layout has no cavity factor");
    return embed(layout, Factor::Cavity,
                 Matrix(annihilation_local(layout.n_fock()).adjoint()));
}

Operator number(const SpaceLayout& layout) {
    const Matrix a = annihilation_local(layout.n_fock());
    return embed(layout, Factor::Cavity, Matrix(a.adjoint() * a));
}

Operator pauli(const SpaceLayout& layout, Pauli which, Factor target) {
    if (target == Factor::Cavity)
        throw std::invalid_argument("pauli: target must be an atomic factor");
    Matrix local;
    switch (which) {
        case Pauli::X: local = sigma_x2(); break;
        case Pauli::Y: local = sigma_y2(); break;
        case Pauli::Z: local = sigma_z2(); break;
        case Pauli::Plus: local = sigma_plus2(); break;
        case Pauli::Minus: local = sigma_minus2(); break;
    }
    return embed(layout, target, local);
}

bool is_hermitian(const Matrix& a, double tol_rel) {
    const double scale = a.norm();
    const double dev = (a - a.adjoint()).cwiseAbs().maxCoeff();
    return dev <= tol_rel * (scale > 0 ? scale : 1.0);
}

Eigen::VectorXd bare_parity_diagonal(const SpaceLayout& layout) {
    const Eigen::Index d = layout.total_dim();
    Eigen::VectorXd par(d);
    // Product-basis index decomposes most-significant-first in layout order.
    std::vector<int> dims;
    for (const auto& [f, n] : layout.factors) dims.push_back(n);
    for (Eigen::Index idx = 0; idx < d; ++idx) {
        Eigen::Index rem = idx;
        long excitations = 0;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            Eigen::Index stride = 1;
            for (std::size_t l = k + 1; l < dims.size(); ++l) stride *= dims[l];
            const long q = static_cast<long>(rem / stride);
            rem %= stride;
            // atomic factors: index 0 = |e> (one excitation), 1 = |g>
            if (layout.factors[k].first == Factor::Cavity)
                excitations += q;
            else
                excitations += (q == 0) ? 1 : 0;
        }
        par(idx) = (excitations % 2 == 0) ? 1.0 : -1.0;
    }
    return par;
}

}  // namespace uscqed
