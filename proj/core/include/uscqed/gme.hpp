// gme.hpp — Generalized master equation: non-secular dissipators, incoherent pump,
// steady state and propagation in the truncated dressed basis
//
// Superoperators act on column-stacked density matrices: vec index of rho(r, c)
// is r + M*c, and vec(A rho B) = (B^T (x) A) vec(rho).
#pragma once

#include "uscqed/dressed.hpp"

#include <optional>

namespace uscqed {

struct BathSpec {
    BathKind kind = BathKind::Flat;
    double base_rate = 0.0;
    double reference = 1.0;  // omega_c for cavity/sensor, the atom frequency otherwise

    // Gamma(omega), evaluated only at omega > 0.
    double rate(double omega) const {
        return kind == BathKind::Flat ? base_rate : base_rate * omega / reference;
    }
};

struct Liouvillian {
    Matrix mat;  // M^2 x M^2
    int m = 0;
    Eigen::Index dim() const { return mat.rows(); }
};

Matrix spre(const Matrix& a);   // rho -> A rho
Matrix spost(const Matrix& a);  // rho -> rho A
Matrix lindblad_dissipator(const Matrix& op);  // D[O]: O rho O^dag - 1/2 {O^dag O, rho}

// The literal non-secular double sum over transition pairs (w from p, w' from q):
//   1/2 Gamma(w_p) [X+_p rho X-_q - X-_q X+_p rho]
// + 1/2 Gamma(w_q) [X+_p rho X-_q - rho X-_q X+_p].
// cross_window > 0 drops pairs with |w_p - w_q| > cross_window; pass 0 for the
// secular (p == q) restriction and a negative value for the full sum.
Matrix build_dissipator(const TransitionSet& transitions, const BathSpec& bath,
                        double cross_window = -1.0);

// Incoherent pump  1/2 P_inc D[X-_cav]  with X-_cav the total energy-raising operator.
Matrix build_pump(const TransitionSet& cav, double p_inc);

Matrix coherent_superoperator(const Eigen::VectorXd& energies);

struct GmeOptions {
    // |w_p - w_q| window as a multiple of max(kappa, gamma_*); <= 0 keeps every
    // cross term (validation mode). Unset: the config's cross_window_factor.
    std::optional<double> cross_window_factor;
    double omega_cutoff = 0.0;  // derived from the config when 0
};

struct AssembledGme {
    DressedBasis basis;
    Liouvillian liouvillian;
    TransitionSet cav;  // cavity transitions, reused for pump and spectra
};

// Coherent part from the dressed energies plus cavity/atom/sensor dissipators and
// the pump, with baths taken from the config.
AssembledGme assemble_liouvillian(const GaugeModel& model, const DressedBasis& basis,
                                  const GmeOptions& opts = {});
AssembledGme assemble_liouvillian(const GaugeModel& model, const GmeOptions& opts = {});

struct SteadyStateOptions {
    bool check_unique = true;        // SVD-based null-space dimension check
    bool allow_degenerate = false;   // return a particular solution instead of throwing
    double null_tol_rel = 1e-9;      // singular values below tol*max count as null
    double residual_tol = 1e-8;      // ||L vec(rho)||
};

struct DegenerateSteadyState : NumericalError {
    int null_dimension;
    explicit DegenerateSteadyState(int dim)
        : NumericalError("steady_state: null space has dimension " + std::to_string(dim) +
                         " (no unique steady state)"),
          null_dimension(dim) {}
};

// L rho = 0 with Tr rho = 1, by a trace-normalization row replacing one equation.
// The result is exactly Hermitian (symmetrized) with unit trace.
Matrix steady_state(const Liouvillian& liouvillian, const SteadyStateOptions& opts = {});

enum class EvolveMethod { Expm, Rk4 };

// rho(t) = exp(L t) rho0.
Matrix evolve(const Liouvillian& liouvillian, const Matrix& rho0, double t,
              EvolveMethod method = EvolveMethod::Expm);

// ||1^T L|| for the trace-preservation invariant.
double trace_defect(const Liouvillian& liouvillian);

}  // namespace uscqed
