// hilbert.hpp — Composite Hilbert-space layouts and embedded bosonic/two-level operators
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace uscqed {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Complex = std::complex<double>;

// Subsystem labels. The factor order in any layout is fixed to this canonical
// order (cavity, atom_a, atom_b, sensor); all basis-dependent outputs rely on it.
enum class Factor { Cavity, AtomA, AtomB, Sensor };

const char* to_string(Factor f);

struct SpaceLayout {
    std::vector<std::pair<Factor, int>> factors;

    SpaceLayout() = default;
    SpaceLayout(std::initializer_list<std::pair<Factor, int>> fs);

    Eigen::Index total_dim() const;
    bool has(Factor f) const;
    int dim_of(Factor f) const;
    int position_of(Factor f) const;  // index into `factors`; throws if absent
    int n_fock() const { return dim_of(Factor::Cavity); }

    // Atom factors present, in canonical order (excludes the cavity).
    std::vector<Factor> atomic_factors() const;

    static SpaceLayout cavity_only(int n_fock);
    static SpaceLayout single_atom(int n_fock);
    static SpaceLayout two_atom(int n_fock);
    static SpaceLayout with_sensor(int n_fock);  // cavity + atom_a + sensor

    bool operator==(const SpaceLayout&) const = default;

private:
    void validate() const;
};

// A square complex matrix tagged with the layout it acts on.
struct Operator {
    SpaceLayout layout;
    Matrix mat;

    Eigen::Index dim() const { return mat.rows(); }
    Operator adjoint() const { return {layout, mat.adjoint()}; }
};

Matrix kron(const Matrix& a, const Matrix& b);

// 2x2 blocks in the (|e>, |g>) ordering: sigma_z = diag(+1, -1).
Matrix sigma_x2();
Matrix sigma_y2();
Matrix sigma_z2();
Matrix sigma_plus2();
Matrix sigma_minus2();

// Local Fock-space ladder, <n-1|a|n> = sqrt(n).
Matrix annihilation_local(int n_fock);

Operator identity(const SpaceLayout& layout);

// a embedded into the full space; requires a cavity factor.
Operator annihilation(const SpaceLayout& layout);
Operator creation(const SpaceLayout& layout);
Operator number(const SpaceLayout& layout);

enum class Pauli { X, Y, Z, Plus, Minus };
Operator pauli(const SpaceLayout& layout, Pauli which, Factor target);

// Kronecker product in layout order with identities on unlisted factors.
// Each listed factor may appear at most once.
Operator embed_product(const SpaceLayout& layout,
                       const std::vector<std::pair<Factor, Matrix>>& locals);
Operator embed(const SpaceLayout& layout, Factor target, const Matrix& local);

// max|A - A^dag| <= tol_rel * ||A||_F
bool is_hermitian(const Matrix& a, double tol_rel = 1e-12);

// Diagonal of the bare-excitation parity exp[i pi (a^dag a + sum sigma^+ sigma^-)]
// in the product basis: +-1 per basis state. Exactly conserved by every
// gauge-fixed Hamiltonian built here.
Eigen::VectorXd bare_parity_diagonal(const SpaceLayout& layout);

}  // namespace uscqed
