// dressed.hpp — Dressed eigenbasis, frequency-resolved jump operators, parity and
// quadrature tables
#pragma once

#include "uscqed/hamiltonian.hpp"

#include <cstdint>
#include <vector>

namespace uscqed {

// M lowest eigenpairs of a GaugeModel, ground energy aligned to zero.
// States are phase-fixed (largest-|component| entry real positive) and
// near-degenerate groups are ordered by descending bare parity, so repeated
// runs produce bit-identical bases.
struct DressedBasis {
    Eigen::VectorXd energies;  // ascending, energies(0) == 0
    Matrix states;             // total_dim x M, orthonormal columns
    Gauge gauge = Gauge::Dipole;       // provenance, checked on GME assembly
    ModelKind model_kind = ModelKind::Qrm;
    int m() const { return static_cast<int>(energies.size()); }
};

DressedBasis diagonalize(const GaugeModel& model, int m_dressed);

// <j|O|k> for all dressed pairs, as an M x M matrix.
Matrix dressed_matrix(const DressedBasis& basis, const Matrix& op);

enum class Channel { Cav, AtomA, AtomB, Sensor };
const char* to_string(Channel c);

// The bath-coupling operator of a channel: Pi for the cavity (gauge-appropriate),
// sigma_x on the respective atom otherwise.
Operator channel_operator(const GaugeModel& model, Channel c);

// One energy-lowering transition |j><k| (E_k > E_j) with amplitude <j|O|k>.
struct Transition {
    int j, k;
    double omega;
    Complex amp;
};

struct TransitionSet {
    Channel channel{Channel::Cav};
    int m = 0;
    std::vector<Transition> list;

    // Sum of all X+(omega): the total lowering operator of the channel, M x M.
    Matrix x_plus_total() const;
};

// All ordered pairs j < k with omega = E_k - E_j above the cutoff and a
// nonzero matrix element. omega_cutoff excludes degenerate (zero-frequency) pairs.
TransitionSet jump_operators(const DressedBasis& basis, const GaugeModel& model, Channel channel,
                             double omega_cutoff);

struct ParityTable {
    Eigen::VectorXd value;       // Re <j|exp(i pi N)|j>
    std::vector<int> label;      // +1 even / -1 odd, by sign of value
    std::vector<bool> mixed;     // |value| < 0.99
};

// Parity against the gauge-corrected number operator: sum_k sigma^+_k sigma^-_k plus
// a'^dag a' in the dipole gauge or a^dag a in the Coulomb gauge. Off resonance
// this operator is only approximately conserved; the sign labels are the
// physically meaningful output (the even/odd classification of the eigenstate fans).
ParityTable parity_table(const DressedBasis& basis, const GaugeModel& model);

// Parity against the bare excitation number: an exact symmetry of every
// gauge-fixed Hamiltonian here, identical in both gauges. Values are +-1 up
// to degeneracy mixing. Used for selection rules and state ordering.
ParityTable parity_table_bare(const DressedBasis& basis, const GaugeModel& model);

struct FluxEntry {
    int j, k;
    double omega;
    double p2;    // |P_jk|^2 = |<j|Pi|k>|^2 / 2
    double rate;  // T_jk = 2 pi D^2(omega) |P_jk|^2, D^2 in units of the base rate
};

// Quadrature matrix elements squared and bath-weighted transition rates for the
// cavity channel. base_rate is kappa; reference is omega_c for the Ohmic weight.
std::vector<FluxEntry> quadrature_rates(const DressedBasis& basis, const GaugeModel& model,
                                        BathKind bath, double base_rate, double reference);

}  // namespace uscqed
