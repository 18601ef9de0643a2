#include "uscqed/gme.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

using namespace uscqed;

namespace {

ModelConfig paper_qrm(double eta = 0.5, int n_fock = 60) {
    ModelConfig cfg;  // defaults: kappa = 0.25 g, gamma = 0.005 g, P = 0.01 g at eta = 0.5
    cfg.model = ModelKind::Qrm;
    cfg.g_a = eta;
    cfg.n_fock = n_fock;
    cfg.m_dressed = 12;
    cfg.bath_cav = cfg.bath_atom = BathKind::Flat;
    return cfg;
}

double trace_of(const Matrix& rho) { return rho.trace().real(); }

}  // namespace

TEST_CASE("single nondegenerate transition reduces to the standard Lindblad form") {
    TransitionSet set;
    set.m = 3;
    set.channel = Channel::Cav;
    set.list.push_back({0, 1, 1.0, Complex(0.7, 0.2)});
    BathSpec bath{BathKind::Flat, 0.3, 1.0};
    const Matrix gme = build_dissipator(set, bath);
    const Matrix lind = 0.3 * lindblad_dissipator(set.x_plus_total());
    CHECK((gme - lind).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("flat-bath GME equals the plain Lindblad of the total jump operator") {
    const auto model = build_model(paper_qrm());
    const auto basis = diagonalize(model, 10);
    const auto set = jump_operators(basis, model, Channel::Cav, 1e-9);
    const Matrix gme = build_dissipator(set, {BathKind::Flat, 0.125, 1.0}, -1.0);
    const Matrix lind = 0.125 * lindblad_dissipator(set.x_plus_total());
    CHECK((gme - lind).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("every assembled piece preserves the trace") {
    const auto model = build_model(paper_qrm());
    const auto basis = diagonalize(model, 12);
    const auto set = jump_operators(basis, model, Channel::Cav, 1e-9);
    const int m = basis.m();
    Eigen::RowVectorXcd tr = Eigen::RowVectorXcd::Zero(m * m);
    for (int d = 0; d < m; ++d) tr(d + m * d) = 1.0;

    for (const Matrix& l : {build_dissipator(set, {BathKind::Ohmic, 0.125, 1.0}),
                            build_dissipator(set, {BathKind::Flat, 0.125, 1.0}, 0.0),
                            build_pump(set, 0.005)})
        CHECK((tr * l).norm() < 1e-12 * std::max(1.0, l.norm()));

    const auto gme = assemble_liouvillian(model, basis);
    CHECK(trace_defect(gme.liouvillian) < 1e-10 * gme.liouvillian.mat.norm());
}

TEST_CASE("pump: zero at P=0, populations flow strictly upward") {
    const auto model = build_model(paper_qrm());
    const auto basis = diagonalize(model, 8);
    const auto set = jump_operators(basis, model, Channel::Cav, 1e-9);
    CHECK(build_pump(set, 0.0).norm() == 0.0);

    // pump only, no decay: evolve the dressed ground state
    Liouvillian pump_only;
    pump_only.m = 8;
    pump_only.mat = coherent_superoperator(basis.energies) + build_pump(set, 0.01);
    Matrix rho0 = Matrix::Zero(8, 8);
    rho0(0, 0) = 1.0;
    const Matrix rho_t = evolve(pump_only, rho0, 50.0);
    CHECK(rho_t(0, 0).real() < 1.0 - 1e-4);
    double excited = 0.0;
    for (int j = 1; j < 8; ++j) excited += rho_t(j, j).real();
    CHECK(excited > 1e-4);
    CHECK(trace_of(rho_t) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("steady excited population grows monotonically with the pump") {
    ModelConfig cfg = paper_qrm();
    double prev = -1.0;
    for (double p : {0.0005, 0.0015, 0.0025}) {
        cfg.p_inc = p;
        const auto model = build_model(cfg);
        const auto gme = assemble_liouvillian(model);
        const Matrix rho = steady_state(gme.liouvillian);
        const double excited = 1.0 - rho(0, 0).real();
        CHECK(excited > prev);
        prev = excited;
    }
}

TEST_CASE("all rates zero gives the bare coherent Liouvillian") {
    ModelConfig cfg = paper_qrm();
    cfg.kappa = cfg.gamma_a = cfg.p_inc = 0.0;
    const auto model = build_model(cfg);
    const auto gme = assemble_liouvillian(model);
    Eigen::ComplexEigenSolver<Matrix> es(gme.liouvillian.mat);
    CHECK(es.eigenvalues().real().cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("steady state: decay only lands in the dressed ground state") {
    ModelConfig cfg = paper_qrm();
    cfg.p_inc = 0.0;
    const auto model = build_model(cfg);
    const auto gme = assemble_liouvillian(model);
    const Matrix rho = steady_state(gme.liouvillian);
    CHECK(rho(0, 0).real() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("steady state at the production configuration") {
    const auto model = build_model(paper_qrm());
    const auto gme = assemble_liouvillian(model);
    const Matrix rho = steady_state(gme.liouvillian);
    const int m = gme.liouvillian.m;

    CHECK(trace_of(rho) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK((rho - rho.adjoint()).norm() < 1e-12);
    const double resid =
        (gme.liouvillian.mat * Eigen::Map<const Vector>(rho.data(), m * m)).norm();
    CHECK(resid < 1e-10);

    // positivity monitor
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    CHECK(es.eigenvalues().minCoeff() > -1e-8);

    // stability: no eigenvalue in the right half plane
    Eigen::ComplexEigenSolver<Matrix> les(gme.liouvillian.mat);
    CHECK(les.eigenvalues().real().maxCoeff() < 1e-9);
}

TEST_CASE("steady-state populations agree between the gauges") {
    ModelConfig cfg = paper_qrm(0.5, 80);
    const auto gme_d = assemble_liouvillian(build_model(cfg));
    ModelConfig cc = cfg;
    cc.gauge = Gauge::Coulomb;
    const auto gme_c = assemble_liouvillian(build_model(cc));
    const Matrix rd = steady_state(gme_d.liouvillian);
    const Matrix rc = steady_state(gme_c.liouvillian);
    CHECK((rd.diagonal() - rc.diagonal()).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("degenerate null space is flagged, not silently averaged") {
    // detached second atom inside the dressed window: two conserved sectors
    ModelConfig cfg;
    cfg.model = ModelKind::Gdm;
    cfg.g_a = 0.5;
    cfg.g_b = 0.0;
    cfg.gamma_b = 0.0;
    cfg.omega_b = 2.0;
    cfg.n_fock = 50;
    cfg.m_dressed = 12;
    cfg.bath_cav = cfg.bath_atom = BathKind::Flat;
    const auto gme = assemble_liouvillian(build_model(cfg));
    CHECK_THROWS_AS(steady_state(gme.liouvillian), DegenerateSteadyState);

    SteadyStateOptions opts;
    opts.allow_degenerate = true;
    const Matrix rho = steady_state(gme.liouvillian, opts);
    CHECK(trace_of(rho) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gauge-mismatched basis is rejected") {
    ModelConfig cfg = paper_qrm();
    const auto dip = build_model(cfg);
    ModelConfig cc = cfg;
    cc.gauge = Gauge::Coulomb;
    const auto cou = build_model(cc);
    const auto basis_c = diagonalize(cou, 12);
    CHECK_THROWS_AS(assemble_liouvillian(dip, basis_c), ConfigError);
}

TEST_CASE("evolve: identity at t=0, trace and hermiticity preserved, methods agree") {
    const auto model = build_model(paper_qrm());
    const auto gme = assemble_liouvillian(model);
    const int m = gme.liouvillian.m;
    Matrix rho0 = Matrix::Zero(m, m);
    rho0(0, 0) = 0.7;
    rho0(1, 1) = 0.3;
    rho0(0, 1) = rho0(1, 0) = 0.2;

    CHECK((evolve(gme.liouvillian, rho0, 0.0) - rho0).norm() == 0.0);

    const Matrix r1 = evolve(gme.liouvillian, rho0, 3.0, EvolveMethod::Expm);
    const Matrix r2 = evolve(gme.liouvillian, rho0, 3.0, EvolveMethod::Rk4);
    CHECK((r1 - r2).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(trace_of(r1) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK((r1 - r1.adjoint()).norm() < 1e-10);

    CHECK_THROWS_AS(evolve(gme.liouvillian, rho0, -1.0), ConfigError);
}

TEST_CASE("long-time evolution reaches the steady state") {
    // the slowest GME mode at these rates is pump/atom limited (~0.009), so
    // convergence to 1e-8 needs t ~ 200/kappa rather than 50/kappa
    const auto model = build_model(paper_qrm());
    const auto gme = assemble_liouvillian(model);
    const Matrix rho_ss = steady_state(gme.liouvillian);
    Matrix rho0 = Matrix::Zero(gme.liouvillian.m, gme.liouvillian.m);
    rho0(0, 0) = 1.0;
    const double t = 200.0 / 0.125;
    const Matrix rho_t = evolve(gme.liouvillian, rho0, t);
    CHECK((rho_t - rho_ss).norm() < 1e-8);
}
