#include <doctest.h>

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "corrperf/models.hpp"

using namespace corrperf;

namespace {

NoiseModel simple_model(Topology topology, int n, int N, double beta_omega,
                        double gprime = 0.0) {
    BathSpec bath;
    bath.topology = topology;
    bath.N = N;
    bath.omega = 1.0;
    bath.beta = beta_omega;
    bath.g = 1.0;
    return make_noise_model(CodeParams::make(n, n > 1 ? 1 : 0, 1), bath, gprime);
}

}  // namespace

TEST_CASE("infinite-temperature sectors carry pure binomial weights") {
    const ThermalState state = thermal_state(6, 0.0);
    REQUIRE(state.weights.size() == 7);
    const double norm = 1.0 / 64.0;
    const double expected[] = {1, 6, 15, 20, 15, 6, 1};
    for (int k = 0; k <= 6; ++k)
        CHECK(state.weights[k] == doctest::Approx(expected[k] * norm).epsilon(1e-14));
    CHECK(state.magnetization(0) == 6);
    CHECK(state.magnetization(6) == -6);
    CHECK(state.magnetization(3) == 0);
}

TEST_CASE("zero-size and zero-temperature limits of the thermal state") {
    const ThermalState empty = thermal_state(0, 0.7);
    REQUIRE(empty.weights.size() == 1);
    CHECK(empty.weights[0] == doctest::Approx(1.0).epsilon(1e-15));

    // beta*omega >> 1 concentrates all weight in the lowest-energy sector,
    // which is all spins down (k = N, energy -omega*N).
    const ThermalState cold = thermal_state(4, 50.0);
    CHECK(cold.weights[4] == doctest::Approx(1.0).epsilon(1e-12));
    for (int k = 0; k < 4; ++k) CHECK(cold.weights[k] < 1e-12);
}

TEST_CASE("sector weights stay normalized at bath sizes of hundreds of spins") {
    for (const double bw : {0.0, 0.01, 0.3, 2.0}) {
        const ThermalState state = thermal_state(196, bw);
        const double sum =
            std::accumulate(state.weights.begin(), state.weights.end(), 0.0);
        CHECK(std::abs(sum - 1.0) < 1e-12);
        for (const double w : state.weights) CHECK(w >= 0.0);
    }
}

TEST_CASE("per-state weights group into the sector weights") {
    const int N = 10;
    const double bw = 0.3;
    const std::vector<double> per_state = per_state_bath_weights(N, bw);
    REQUIRE(per_state.size() == 1024);
    const ThermalState sectors = thermal_state(N, bw);
    std::vector<double> grouped(static_cast<size_t>(N) + 1, 0.0);
    for (std::uint32_t b = 0; b < 1024; ++b)
        grouped[static_cast<size_t>(std::popcount(b))] += per_state[b];
    for (int k = 0; k <= N; ++k)
        CHECK(grouped[k] == doctest::Approx(sectors.weights[k]).epsilon(1e-13));
}

TEST_CASE("model validation: sizes, divisibility, and coupling-table shape") {
    BathSpec bath;
    bath.topology = Topology::LocalSplit;
    bath.N = 5;
    const CodeParams code = CodeParams::make(3, 1, 3);
    CHECK_THROWS_AS(make_noise_model(code, bath, 0.0), std::invalid_argument);
    bath.N = 6;
    CHECK(make_noise_model(code, bath, 0.0).family ==
          InteractionFamily::Dephasing2Body);
    CHECK(make_noise_model(code, bath, 0.2).family ==
          InteractionFamily::Dephasing3Body);

    bath.N = -1;
    CHECK_THROWS_AS(make_noise_model(code, bath, 0.0), std::invalid_argument);
    bath.N = 6;
    bath.beta = -0.5;
    CHECK_THROWS_AS(make_noise_model(code, bath, 0.0), std::invalid_argument);
    bath.beta = 0.0;

    bath.coupling_table = Eigen::MatrixXd::Ones(3, 5);  // needs 3 x 6
    CHECK_THROWS_AS(make_noise_model(code, bath, 0.0), std::invalid_argument);
    bath.coupling_table = Eigen::MatrixXd::Ones(3, 6);
    CHECK_NOTHROW(make_noise_model(code, bath, 0.0));
}

TEST_CASE("bath accounting per topology") {
    CHECK(total_bath_spins(Topology::SharedNonlocal, 3, 5) == 5);
    CHECK(total_bath_spins(Topology::PerQubitLocal, 3, 5) == 15);
    CHECK(total_bath_spins(Topology::LocalSplit, 3, 6) == 6);

    const NoiseModel shared = simple_model(Topology::SharedNonlocal, 3, 5, 0.0);
    for (int m = 0; m < 3; ++m)
        CHECK(bath_range(shared, m) == std::pair<int, int>{0, 5});

    const NoiseModel local = simple_model(Topology::PerQubitLocal, 3, 2, 0.0);
    CHECK(bath_range(local, 0) == std::pair<int, int>{0, 2});
    CHECK(bath_range(local, 2) == std::pair<int, int>{4, 6});

    const NoiseModel split = simple_model(Topology::LocalSplit, 3, 6, 0.0);
    CHECK(bath_range(split, 1) == std::pair<int, int>{2, 4});
    CHECK_THROWS_AS(bath_range(split, 3), std::invalid_argument);
}

TEST_CASE("fast diagonal equals the literal Kronecker-sum Hamiltonian") {
    struct Case {
        Topology topology;
        int n, N;
        double gprime;
    };
    const Case cases[] = {
        {Topology::SharedNonlocal, 2, 3, 0.0},
        {Topology::SharedNonlocal, 3, 2, 0.15},
        {Topology::PerQubitLocal, 2, 2, 0.0},
        {Topology::PerQubitLocal, 2, 2, 0.1},
        {Topology::LocalSplit, 2, 4, 0.0},
        {Topology::LocalSplit, 3, 3, 0.2},
    };
    for (const Case& c : cases) {
        CAPTURE(static_cast<int>(c.topology));
        CAPTURE(c.n);
        NoiseModel model = simple_model(c.topology, c.n, c.N, 0.2, c.gprime);
        model.bath.omega = 0.7;
        model.bath.g = 0.9;
        const Eigen::VectorXd diag = hamiltonian_diagonal(model);
        const Eigen::MatrixXcd dense = dense_hamiltonian(model);
        REQUIRE(diag.size() == dense.rows());
        double max_offdiag = 0.0, max_diag_err = 0.0;
        for (Eigen::Index r = 0; r < dense.rows(); ++r)
            for (Eigen::Index c2 = 0; c2 < dense.cols(); ++c2) {
                if (r == c2)
                    max_diag_err =
                        std::max(max_diag_err, std::abs(dense(r, c2) - diag[r]));
                else
                    max_offdiag = std::max(max_offdiag, std::abs(dense(r, c2)));
            }
        CHECK(max_offdiag == 0.0);        // every term is diagonal, exactly
        CHECK(max_diag_err < 1e-12);
    }
}

TEST_CASE("single qubit, single bath spin: H = g sz Z + omega Z") {
    NoiseModel model = simple_model(Topology::SharedNonlocal, 1, 1, 0.0);
    model.bath.omega = 0.0;
    model.bath.g = 0.8;
    const Eigen::VectorXd diag = hamiltonian_diagonal(model);
    REQUIRE(diag.size() == 4);
    // Joint index s*2 + b, z = 1 - 2*bit: energies g * z_s * z_b.
    CHECK(diag[0] == doctest::Approx(0.8).epsilon(1e-15));   // up, up
    CHECK(diag[1] == doctest::Approx(-0.8).epsilon(1e-15));  // up, down
    CHECK(diag[2] == doctest::Approx(-0.8).epsilon(1e-15));
    CHECK(diag[3] == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("three-body term adds gprime (M^2 - n)/2 times the bath magnetization") {
    const int n = 3, N = 2;
    const double gprime = 0.37;
    const NoiseModel two = simple_model(Topology::SharedNonlocal, n, N, 0.1);
    const NoiseModel three = simple_model(Topology::SharedNonlocal, n, N, 0.1, gprime);
    const Eigen::VectorXd d2 = hamiltonian_diagonal(two);
    const Eigen::VectorXd d3 = hamiltonian_diagonal(three);
    for (std::uint32_t s = 0; s < 8; ++s) {
        int msys = 0;
        for (int j = 0; j < n; ++j) msys += 1 - 2 * ((s >> j) & 1u);
        for (std::uint32_t b = 0; b < 4; ++b) {
            int mbath = 0;
            for (int i = 0; i < N; ++i) mbath += 1 - 2 * ((b >> i) & 1u);
            const double expected = gprime * 0.5 * (msys * msys - n) * mbath;
            CHECK(d3[s * 4 + b] - d2[s * 4 + b] ==
                  doctest::Approx(expected).epsilon(1e-14));
        }
    }
}

TEST_CASE("local-split equals per-qubit-local at the same per-qubit bath size") {
    // n qubits, K bath spins each: the two layouts index spins identically.
    const NoiseModel split = simple_model(Topology::LocalSplit, 2, 4, 0.25);
    const NoiseModel local = simple_model(Topology::PerQubitLocal, 2, 2, 0.25);
    const Eigen::VectorXd a = hamiltonian_diagonal(split);
    const Eigen::VectorXd b = hamiltonian_diagonal(local);
    REQUIRE(a.size() == b.size());
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("coupling table overrides the symmetric coupling") {
    NoiseModel model = simple_model(Topology::SharedNonlocal, 1, 2, 0.0);
    model.bath.omega = 0.0;
    Eigen::MatrixXd table(1, 2);
    table << 0.5, -1.25;
    model.bath.coupling_table = table;
    const Eigen::VectorXd diag = hamiltonian_diagonal(model);
    // s = 0 (z_s = +1): energies 0.5 z_0 - 1.25 z_1.
    CHECK(diag[0] == doctest::Approx(0.5 - 1.25).epsilon(1e-15));
    CHECK(diag[1] == doctest::Approx(-0.5 - 1.25).epsilon(1e-15));  // b = 1: spin 0 down
    CHECK(diag[2] == doctest::Approx(0.5 + 1.25).epsilon(1e-15));
    CHECK(diag[3] == doctest::Approx(-0.5 + 1.25).epsilon(1e-15));
    // And the dense path agrees.
    const Eigen::MatrixXcd dense = dense_hamiltonian(model);
    for (int r = 0; r < 4; ++r)
        CHECK(std::abs(dense(r, r).real() - diag[r]) < 1e-14);
}

TEST_CASE("size caps reject oversized dense requests") {
    CHECK_THROWS_AS(hamiltonian_diagonal(
                        simple_model(Topology::SharedNonlocal, 3, 12, 0.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(dense_hamiltonian(
                        simple_model(Topology::SharedNonlocal, 3, 10, 0.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(per_state_bath_weights(kDenseSpinCap + 1, 0.1),
                    std::invalid_argument);
}
