#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "corrperf/channel.hpp"
#include "corrperf/evaluator.hpp"
#include "corrperf/models.hpp"

using namespace corrperf;
using cd = std::complex<double>;

namespace {

constexpr double kPi = 3.14159265358979323846;

NoiseModel build_model(Topology topology, int n, int N, double beta_omega,
                       double gprime = 0.0, double g = 1.0, double omega = 1.0) {
    BathSpec bath;
    bath.topology = topology;
    bath.N = N;
    bath.omega = omega;
    bath.beta = omega == 0.0 ? beta_omega : beta_omega / omega;
    bath.g = g;
    const CodeParams code = CodeParams::make(n, n > 1 ? 1 : 0, n >= 3 ? 3 : 1);
    return make_noise_model(code, bath, gprime);
}

double dense_at(const NoiseModel& model, double tau, WeightMode mode) {
    const Eigen::VectorXd h = hamiltonian_diagonal(model);
    const auto weights = per_state_bath_weights(
        total_bath_spins(model), model.bath.beta * model.bath.omega);
    return performance_direct_diagonal(propagator_diagonal(h, tau), weights,
                                       model.code, mode);
}

}  // namespace

TEST_CASE("grid: linear spacing, pinned endpoints, degenerate cases") {
    const Grid g{0.25, 1.75, 7};
    const auto v = g.values();
    REQUIRE(v.size() == 7);
    CHECK(v.front() == 0.25);
    CHECK(v.back() == 1.75);
    for (size_t i = 1; i < v.size(); ++i)
        CHECK(v[i] - v[i - 1] == doctest::Approx(0.25).epsilon(1e-14));

    const Grid single{2.0, 2.0, 1};
    CHECK(single.values() == std::vector<double>{2.0});
    const Grid no_points{0.0, 1.0, 0};
    CHECK_THROWS_AS((void)no_points.values(), std::invalid_argument);
    const Grid reversed{1.0, 0.5, 4};
    CHECK_THROWS_AS((void)reversed.values(), std::invalid_argument);

    const Grid d = default_grid();
    CHECK(d.start == 0.0);
    CHECK(d.stop == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(d.points == 512);
}

TEST_CASE("propagator: identity at tau = 0, phases on diagonals, unitarity") {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(4, 4);
    h.diagonal() << 1.0, -2.0, 0.5, 0.0;
    CHECK((propagator(h, 0.0) - Eigen::MatrixXcd::Identity(4, 4))
              .cwiseAbs()
              .maxCoeff() < 1e-14);
    const double tau = 0.8;
    const Eigen::MatrixXcd u = propagator(h, tau);
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(u(i, i) - std::polar(1.0, -tau * h(i, i).real())) < 1e-14);

    // Random Hermitian: the result must still be unitary.
    std::mt19937 rng(99);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd a(16, 16);
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c) a(r, c) = cd(gauss(rng), gauss(rng));
    const Eigen::MatrixXcd herm = 0.5 * (a + a.adjoint());
    const Eigen::MatrixXcd v = propagator(herm, 1.37);
    CHECK((v * v.adjoint() - Eigen::MatrixXcd::Identity(16, 16))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    CHECK_THROWS_AS(propagator(a, 1.0), std::invalid_argument);  // not Hermitian

    // Diagonal fast path agrees with the dense propagator.
    Eigen::VectorXd diag(4);
    diag << 1.0, -2.0, 0.5, 0.0;
    const Eigen::VectorXcd fast = propagator_diagonal(diag, tau);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(fast[i] - u(i, i)) < 1e-14);
}

TEST_CASE("kraus extraction: tau = 0 structure and trace preservation") {
    const NoiseModel model = build_model(Topology::SharedNonlocal, 1, 3, 0.5);
    const auto weights = per_state_bath_weights(3, 0.5);
    const Eigen::VectorXd h = hamiltonian_diagonal(model);

    // At tau = 0 the joint propagator is the identity: E_{i,j} = sqrt(l_i) d_ij I.
    const Eigen::MatrixXcd u0 = Eigen::MatrixXcd::Identity(16, 16);
    const KrausSet at0 = kraus_from_propagator(u0, 1, weights);
    REQUIRE(at0.operators.size() == 64);  // 8 bath states, all weights > 0
    CHECK(at0.completeness_defect() < 1e-13);
    // First bath state i = 0: block j = 0 is sqrt(l_0) I, the rest vanish.
    CHECK((at0.operators[0] -
           std::sqrt(weights[0]) * Eigen::MatrixXcd::Identity(2, 2))
              .cwiseAbs()
              .maxCoeff() < 1e-14);
    CHECK(at0.operators[1].cwiseAbs().maxCoeff() < 1e-14);

    // At generic tau the set still resolves the identity.
    const Eigen::MatrixXcd u =
        Eigen::MatrixXcd(propagator_diagonal(h, 0.9).asDiagonal());
    const KrausSet set = kraus_from_propagator(u, 1, weights);
    CHECK(set.completeness_defect() < 1e-12);

    CHECK_THROWS_AS(kraus_from_propagator(u, 1, std::vector<double>{0.3, 0.7}),
                    std::invalid_argument);  // 2 weights vs 8 bath states
}

TEST_CASE("single qubit, single bath spin: p = cos^2(g tau) exactly") {
    NoiseModel model = build_model(Topology::SharedNonlocal, 1, 1, 0.0, 0.0, 0.9);
    model.bath.omega = 0.0;
    const Eigen::VectorXd h = hamiltonian_diagonal(model);
    const std::vector<double> up_only = {1.0, 0.0};  // bath prepared spin-up
    for (const double tau : {0.0, 0.2, 0.7, 1.3, kPi}) {
        const double expected = std::pow(std::cos(0.9 * tau), 2);
        CHECK(performance_direct_diagonal(propagator_diagonal(h, tau), up_only,
                                          model.code, WeightMode::TotalWeight) ==
              doctest::Approx(expected).epsilon(1e-13));
        // Thermal mixing cannot matter here: both bath states dephase at
        // conjugate phases with the same |cos|.
        CHECK(performance_sector_at(model, WeightMode::TotalWeight, tau) ==
              doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("direct evaluation: dense matrix and diagonal fast path agree") {
    for (const double gprime : {0.0, 0.15}) {
        const NoiseModel model =
            build_model(Topology::SharedNonlocal, 2, 3, 0.4, gprime);
        const Eigen::VectorXd h = hamiltonian_diagonal(model);
        const auto weights = per_state_bath_weights(3, 0.4);
        for (const double tau : {0.0, 0.45, 2.2}) {
            const Eigen::VectorXcd ud = propagator_diagonal(h, tau);
            const Eigen::MatrixXcd u = Eigen::MatrixXcd(ud.asDiagonal());
            const double full = performance_direct(u, weights, model.code,
                                                   WeightMode::TotalWeight);
            const double fast = performance_direct_diagonal(
                ud, weights, model.code, WeightMode::TotalWeight);
            CHECK(full == doctest::Approx(fast).epsilon(1e-12));
        }
    }
}

TEST_CASE("strings with X/Y content contribute nothing under dephasing") {
    const NoiseModel model = build_model(Topology::SharedNonlocal, 3, 2, 0.3);
    const Eigen::VectorXd h = hamiltonian_diagonal(model);
    const auto weights = per_state_bath_weights(2, 0.3);
    const Eigen::MatrixXcd u =
        Eigen::MatrixXcd(propagator_diagonal(h, 0.6).asDiagonal());
    const auto terms = performance_direct_terms(u, weights, model.code,
                                                WeightMode::TotalWeight);
    const auto strings = enumerate_correctable(model.code, WeightMode::TotalWeight);
    REQUIRE(terms.size() == strings.size());
    bool saw_xy = false;
    for (size_t i = 0; i < terms.size(); ++i) {
        if (strings[i].x_mask != 0) {
            saw_xy = true;
            CHECK(std::abs(terms[i]) < 1e-13);
        }
    }
    CHECK(saw_xy);  // the correctable set genuinely contains X/Y strings
}

TEST_CASE("chi route through Kraus extraction reproduces the direct value") {
    const NoiseModel model = build_model(Topology::SharedNonlocal, 1, 3, 0.5);
    const Eigen::VectorXd h = hamiltonian_diagonal(model);
    const auto weights = per_state_bath_weights(3, 0.5);
    for (const double tau : {0.3, 1.0, 2.6}) {
        const Eigen::MatrixXcd u =
            Eigen::MatrixXcd(propagator_diagonal(h, tau).asDiagonal());
        const KrausSet kraus = kraus_from_propagator(u, 1, weights);
        const ChiMatrix chi = chi_from_kraus(kraus);
        const double via_chi =
            performance_from_chi(chi, model.code, WeightMode::TotalWeight);
        const double direct =
            performance_direct(u, weights, model.code, WeightMode::TotalWeight);
        CHECK(via_chi == doctest::Approx(direct).epsilon(1e-10));
    }
}

TEST_CASE("bath level splitting cancels from the performance measure") {
    // The omega sum_i Z_i term adds a phase per bath state that is common to
    // every system block, so it drops out of p_N once the initial weights are
    // held fixed.
    NoiseModel model = build_model(Topology::SharedNonlocal, 2, 3, 0.25, 0.1);
    const auto weights = per_state_bath_weights(3, 0.25);
    model.bath.omega = 0.0;
    const Eigen::VectorXd h0 = hamiltonian_diagonal(model);
    model.bath.omega = 1.7;
    const Eigen::VectorXd h1 = hamiltonian_diagonal(model);
    for (const double tau : {0.35, 1.1, 2.9}) {
        const double p0 = performance_direct_diagonal(
            propagator_diagonal(h0, tau), weights, model.code,
            WeightMode::TotalWeight);
        const double p1 = performance_direct_diagonal(
            propagator_diagonal(h1, tau), weights, model.code,
            WeightMode::TotalWeight);
        CHECK(p0 == doctest::Approx(p1).epsilon(1e-12));
    }
}

TEST_CASE("sector kernels match the literal partial-trace oracle") {
    struct Case {
        Topology topology;
        int n, N;
        double gprime;
    };
    const Case cases[] = {
        {Topology::SharedNonlocal, 2, 4, 0.0},
        {Topology::SharedNonlocal, 3, 3, 0.0},
        {Topology::SharedNonlocal, 3, 3, 0.1},
        {Topology::PerQubitLocal, 2, 3, 0.0},
        {Topology::PerQubitLocal, 2, 2, 0.12},
        {Topology::PerQubitLocal, 3, 2, 0.2},
        {Topology::LocalSplit, 2, 4, 0.0},
        {Topology::LocalSplit, 3, 6, 0.15},
        {Topology::LocalSplit, 3, 3, 0.0},
    };
    for (const Case& c : cases) {
        CAPTURE(static_cast<int>(c.topology));
        CAPTURE(c.n);
        CAPTURE(c.gprime);
        const NoiseModel model =
            build_model(c.topology, c.n, c.N, 0.3, c.gprime, 0.8);
        for (const double tau : {0.0, 0.3, 1.1, kPi}) {
            const double sector =
                performance_sector_at(model, WeightMode::TotalWeight, tau);
            CHECK(sector == doctest::Approx(dense_at(model, tau,
                                                     WeightMode::TotalWeight))
                                .epsilon(1e-10));
        }
    }
}

TEST_CASE("both weight modes agree for every cataloged (dephasing) model") {
    const NoiseModel model = build_model(Topology::SharedNonlocal, 3, 3, 0.3, 0.1);
    for (const double tau : {0.4, 1.7}) {
        CHECK(dense_at(model, tau, WeightMode::TotalWeight) ==
              doctest::Approx(dense_at(model, tau, WeightMode::CssSplit))
                  .epsilon(1e-12));
        CHECK(performance_sector_at(model, WeightMode::TotalWeight, tau) ==
              doctest::Approx(performance_sector_at(model, WeightMode::CssSplit, tau))
                  .epsilon(1e-14));
    }
}

TEST_CASE("a split bath of K spins per qubit equals K-spin per-qubit baths") {
    const NoiseModel split = build_model(Topology::LocalSplit, 2, 6, 0.2, 0.0);
    const NoiseModel local = build_model(Topology::PerQubitLocal, 2, 3, 0.2, 0.0);
    for (const double tau : {0.0, 0.5, 1.9, 3.0}) {
        CHECK(performance_sector_at(split, WeightMode::TotalWeight, tau) ==
              performance_sector_at(local, WeightMode::TotalWeight, tau));
        CHECK(dense_at(split, tau, WeightMode::TotalWeight) ==
              doctest::Approx(dense_at(local, tau, WeightMode::TotalWeight))
                  .epsilon(1e-14));
    }
}

TEST_CASE("infinite-temperature curves are even in tau and in the coupling sign") {
    const NoiseModel model = build_model(Topology::SharedNonlocal, 2, 4, 0.0, 0.1);
    NoiseModel flipped = model;
    flipped.bath.g = -model.bath.g;
    for (const double tau : {0.3, 0.9, 2.2}) {
        CHECK(performance_sector_at(model, WeightMode::TotalWeight, tau) ==
              doctest::Approx(performance_sector_at(model, WeightMode::TotalWeight,
                                                    -tau))
                  .epsilon(1e-13));
        CHECK(performance_sector_at(model, WeightMode::TotalWeight, tau) ==
              doctest::Approx(performance_sector_at(flipped,
                                                    WeightMode::TotalWeight, tau))
                  .epsilon(1e-13));
    }
}

TEST_CASE("permuting bath spins in a coupling table leaves p_N unchanged") {
    NoiseModel model = build_model(Topology::SharedNonlocal, 2, 3, 0.3);
    Eigen::MatrixXd table(2, 3);
    table << 0.3, 0.7, -0.2,
             0.5, 0.1, 0.4;
    model.bath.coupling_table = table;
    NoiseModel permuted = model;
    Eigen::MatrixXd rolled(2, 3);
    rolled.col(0) = table.col(1);
    rolled.col(1) = table.col(2);
    rolled.col(2) = table.col(0);
    permuted.bath.coupling_table = rolled;
    for (const double tau : {0.4, 1.3, 2.8})
        CHECK(dense_at(model, tau, WeightMode::TotalWeight) ==
              doctest::Approx(dense_at(permuted, tau, WeightMode::TotalWeight))
                  .epsilon(1e-12));
}

TEST_CASE("three-body kernels degrade to the two-body kernels at gprime = 0") {
    // Constructed directly: the factory derives the family from gprime, so a
    // three-body model with gprime = 0 needs explicit field surgery.
    NoiseModel shared = build_model(Topology::SharedNonlocal, 7, 7, 0.01);
    shared.family = InteractionFamily::Dephasing3Body;
    NoiseModel shared2 = build_model(Topology::SharedNonlocal, 7, 7, 0.01);
    for (const double tau : {0.2, 0.9, 2.5})
        CHECK(performance_sector_at(shared, WeightMode::TotalWeight, tau) ==
              doctest::Approx(performance_sector_at(shared2, WeightMode::TotalWeight,
                                                    tau))
                  .epsilon(1e-13));

    NoiseModel local = build_model(Topology::PerQubitLocal, 3, 2, 0.3);
    local.family = InteractionFamily::Dephasing3Body;
    NoiseModel local2 = build_model(Topology::PerQubitLocal, 3, 2, 0.3);
    for (const double tau : {0.2, 0.9, 2.5})
        CHECK(performance_sector_at(local, WeightMode::TotalWeight, tau) ==
              doctest::Approx(performance_sector_at(local2, WeightMode::TotalWeight,
                                                    tau))
                  .epsilon(1e-12));
}

TEST_CASE("three-body pair kernel rejects oversized systems") {
    const NoiseModel model =
        build_model(Topology::PerQubitLocal, 7, 1, 0.01, 0.1);
    CHECK_THROWS_AS(performance_sector_at(model, WeightMode::TotalWeight, 0.5),
                    InfeasibleError);
}

TEST_CASE("sweep picks the right path per model") {
    const Grid grid{0.0, 1.0, 5};
    // Huge shared bath: only the sector path is feasible.
    const NoiseModel big = build_model(Topology::SharedNonlocal, 7, 196, 0.01);
    // Coupling table: only the dense path applies.
    NoiseModel table_model = build_model(Topology::SharedNonlocal, 2, 3, 0.3);
    table_model.bath.coupling_table = Eigen::MatrixXd::Constant(2, 3, 0.4);
    // Three-body above the pair cap with a small bath: dense fallback.
    const NoiseModel fallback =
        build_model(Topology::PerQubitLocal, 5, 1, 0.1, 0.1);

    const auto curves =
        sweep({big, table_model, fallback}, WeightMode::TotalWeight, grid);
    REQUIRE(curves.size() == 3);
    CHECK(curves[0].method == "sector");
    CHECK(curves[1].method == "dense");
    CHECK(curves[2].method == "dense");
    for (const auto& curve : curves) {
        REQUIRE(curve.grid.size() == 5);
        REQUIRE(curve.values.size() == 5);
    }

    // Three-body, independent baths, large system AND large bath: nothing fits.
    const NoiseModel impossible =
        build_model(Topology::PerQubitLocal, 7, 4, 0.01, 0.1);
    CHECK_THROWS_AS(sweep({impossible}, WeightMode::TotalWeight, grid),
                    InfeasibleError);

    CHECK(sweep({}, WeightMode::TotalWeight, grid).empty());
}

TEST_CASE("p_N starts at one and stays within [0, 1] across the catalog") {
    const Grid grid{0.0, kPi, 48};
    const std::vector<NoiseModel> models = {
        build_model(Topology::SharedNonlocal, 7, 7, 0.01),
        build_model(Topology::SharedNonlocal, 7, 196, 0.01),
        build_model(Topology::PerQubitLocal, 7, 7, 0.01),
        build_model(Topology::SharedNonlocal, 7, 7, 0.01, 0.1),
        build_model(Topology::LocalSplit, 7, 196, 0.01),
        build_model(Topology::PerQubitLocal, 3, 2, 0.3, 0.2),
    };
    for (const auto& curve : sweep(models, WeightMode::TotalWeight, grid)) {
        CAPTURE(curve.model_tag);
        CHECK(curve.values.front() == doctest::Approx(1.0).epsilon(1e-12));
        for (const double v : curve.values) {
            CHECK(v >= -1e-12);
            CHECK(v <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("local and nonlocal baths trade places as tau grows") {
    // The difference p_local - p_shared starts at zero, and changes sign on
    // the default window for both the small and the large bath.
    for (const int N : {7, 196}) {
        CAPTURE(N);
        const NoiseModel local = build_model(Topology::PerQubitLocal, 7, N, 0.01);
        const NoiseModel shared = build_model(Topology::SharedNonlocal, 7, N, 0.01);
        const Grid grid = default_grid();
        const auto curves = sweep({local, shared}, WeightMode::TotalWeight, grid);
        bool saw_positive = false, saw_negative = false;
        for (size_t i = 0; i < curves[0].values.size(); ++i) {
            const double diff = curves[0].values[i] - curves[1].values[i];
            if (diff > 1e-9) saw_positive = true;
            if (diff < -1e-9) saw_negative = true;
        }
        CHECK(saw_positive);
        CHECK(saw_negative);
    }
}

TEST_CASE("many-body coupling separates from two-body quadratically, then widely") {
    // Two-body vs three-body on the shared topology: the difference grows as
    // (g' tau)^2 from the start -- small early, then much larger at late
    // times.  The early-window bound here is a property of the curves, not a
    // graphical-equivalence gate.
    const NoiseModel two = build_model(Topology::SharedNonlocal, 7, 7, 0.01);
    const NoiseModel three = build_model(Topology::SharedNonlocal, 7, 7, 0.01, 0.1);
    const Grid grid = default_grid();
    const auto curves = sweep({two, three}, WeightMode::TotalWeight, grid);
    const size_t early = curves[0].values.size() / 20;  // first 5%
    double early_max = 0.0, full_max = 0.0;
    for (size_t i = 0; i < curves[0].values.size(); ++i) {
        const double diff = std::abs(curves[0].values[i] - curves[1].values[i]);
        if (i < early) early_max = std::max(early_max, diff);
        full_max = std::max(full_max, diff);
    }
    CHECK(early_max < 0.02);
    CHECK(full_max > 10.0 * early_max);
    CHECK(full_max > 0.1);
}

TEST_CASE("sector path rejects coupling-table models") {
    NoiseModel model = build_model(Topology::SharedNonlocal, 2, 3, 0.3);
    model.bath.coupling_table = Eigen::MatrixXd::Constant(2, 3, 1.0);
    CHECK_THROWS_AS(performance_sector_at(model, WeightMode::TotalWeight, 0.4),
                    std::invalid_argument);
}
