#include "corrperf/models.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace corrperf {

std::string topology_name(Topology t) {
    switch (t) {
        case Topology::PerQubitLocal: return "per-qubit-local";
        case Topology::SharedNonlocal: return "shared-nonlocal";
        case Topology::LocalSplit: return "local-split";
    }
    throw std::logic_error("topology_name: unreachable");
}

int total_bath_spins(Topology topology, int n, int N) {
    return topology == Topology::PerQubitLocal ? n * N : N;
}

int total_bath_spins(const NoiseModel& model) {
    return total_bath_spins(model.bath.topology, model.code.n, model.bath.N);
}

NoiseModel make_noise_model(const CodeParams& code, const BathSpec& bath,
                            double gprime, std::string tag) {
    if (bath.N < 0) throw std::invalid_argument("make_noise_model: negative bath size");
    if (bath.beta < 0.0) throw std::invalid_argument("make_noise_model: negative beta");
    if (bath.topology == Topology::LocalSplit && bath.N % code.n != 0)
        throw std::invalid_argument(
            "make_noise_model: local-split requires the code length to divide N");
    if (bath.has_coupling_table()) {
        const int nb = total_bath_spins(bath.topology, code.n, bath.N);
        if (bath.coupling_table.rows() != code.n ||
            bath.coupling_table.cols() != nb)
            throw std::invalid_argument(
                "make_noise_model: coupling table must be n x total-bath-spins");
    }
    NoiseModel model;
    model.code = code;
    model.bath = bath;
    model.gprime = gprime;
    model.family = (gprime == 0.0) ? InteractionFamily::Dephasing2Body
                                   : InteractionFamily::Dephasing3Body;
    model.tag = tag.empty() ? topology_name(bath.topology) : std::move(tag);
    return model;
}

std::pair<int, int> bath_range(const NoiseModel& model, int m) {
    if (m < 0 || m >= model.code.n)
        throw std::invalid_argument("bath_range: qubit index out of range");
    switch (model.bath.topology) {
        case Topology::SharedNonlocal:
            return {0, model.bath.N};
        case Topology::PerQubitLocal:
            return {m * model.bath.N, (m + 1) * model.bath.N};
        case Topology::LocalSplit: {
            const int per = model.bath.N / model.code.n;
            return {m * per, (m + 1) * per};
        }
    }
    throw std::logic_error("bath_range: unreachable");
}

ThermalState thermal_state(int N, double beta_omega) {
    if (N < 0) throw std::invalid_argument("thermal_state: negative bath size");
    ThermalState state;
    state.N = N;
    state.weights.assign(static_cast<size_t>(N) + 1, 0.0);
    // Unnormalized weight of sector k is C(N,k) e^{-beta*omega*(N-2k)}; the
    // ratio between consecutive sectors is exact, so build the sequence
    // multiplicatively and normalize by the accumulated sum rather than by
    // the analytic Z = (2 cosh(beta*omega))^N.  The two agree to ~1e-13;
    // normalizing by the accumulated sum pins sum(P_k) = 1 to ~1e-14 even
    // for N ~ 200, which downstream invariants (p_N(0) = 1) rely on.
    const double ratio_step = std::exp(2.0 * beta_omega);
    double w = std::exp(-beta_omega * N);  // k = 0 term
    double sum = 0.0;
    for (int k = 0; k <= N; ++k) {
        state.weights[static_cast<size_t>(k)] = w;
        sum += w;
        if (k < N)
            w *= ratio_step * static_cast<double>(N - k) / static_cast<double>(k + 1);
    }
    for (double& p : state.weights) p /= sum;
    return state;
}

std::vector<double> per_state_bath_weights(int bath_spins, double beta_omega) {
    if (bath_spins < 0 || bath_spins > kDenseSpinCap)
        throw std::invalid_argument("per_state_bath_weights: bath size out of range");
    const std::uint32_t dim = 1u << bath_spins;
    // Normalize by the accumulated sum of e^{-bw*(N-2k)} over all 2^N states
    // (see thermal_state); compute the per-sector values once.
    std::vector<double> sector(static_cast<size_t>(bath_spins) + 1);
    double sum = 0.0;
    double binom = 1.0;
    for (int k = 0; k <= bath_spins; ++k) {
        sector[static_cast<size_t>(k)] = std::exp(-beta_omega * (bath_spins - 2 * k));
        sum += binom * sector[static_cast<size_t>(k)];
        binom = binom * static_cast<double>(bath_spins - k) / static_cast<double>(k + 1);
    }
    std::vector<double> weights(dim);
    for (std::uint32_t b = 0; b < dim; ++b)
        weights[b] = sector[static_cast<size_t>(std::popcount(b))] / sum;
    return weights;
}

namespace {

// Coupling of system qubit m to bath spin i (two-body part).
double coupling(const NoiseModel& model, int m, int i) {
    if (model.bath.has_coupling_table()) return model.bath.coupling_table(m, i);
    const auto [first, last] = bath_range(model, m);
    return (i >= first && i < last) ? model.bath.g : 0.0;
}

}  // namespace

Eigen::VectorXd hamiltonian_diagonal(const NoiseModel& model) {
    const int n = model.code.n;
    const int nb = total_bath_spins(model);
    if (n + nb > kDenseSpinCap)
        throw std::invalid_argument("hamiltonian_diagonal: total spins exceed cap " +
                                    std::to_string(kDenseSpinCap));
    const std::uint32_t dim_s = 1u << n, dim_b = 1u << nb;
    Eigen::VectorXd diag(static_cast<Eigen::Index>(dim_s) * dim_b);

    for (std::uint32_t s = 0; s < dim_s; ++s) {
        // sigma_z eigenvalues of the system state and pair-sum for the
        // three-body term: sum_{j<k} sigma_j sigma_k = (M^2 - n) / 2.
        int msys = 0;
        for (int j = 0; j < n; ++j) msys += 1 - 2 * ((s >> j) & 1u);
        const double pair_sum = 0.5 * (static_cast<double>(msys) * msys - n);

        for (std::uint32_t b = 0; b < dim_b; ++b) {
            double h = 0.0;
            for (int i = 0; i < nb; ++i) {
                const double zi = 1.0 - 2.0 * ((b >> i) & 1u);
                double site = model.bath.omega + model.gprime * pair_sum;
                for (int m = 0; m < n; ++m) {
                    const double g = coupling(model, m, i);
                    if (g != 0.0) site += g * (1.0 - 2.0 * ((s >> m) & 1u));
                }
                h += site * zi;
            }
            diag[static_cast<Eigen::Index>(s) * dim_b + b] = h;
        }
    }
    return diag;
}

Eigen::MatrixXcd dense_hamiltonian(const NoiseModel& model) {
    const int n = model.code.n;
    const int nb = total_bath_spins(model);
    const int total = n + nb;
    if (total > kDenseMatrixSpinCap)
        throw std::invalid_argument("dense_hamiltonian: total spins exceed cap " +
                                    std::to_string(kDenseMatrixSpinCap));
    const Eigen::Index dim = static_cast<Eigen::Index>(1u << total);

    // Independent construction by literal Kronecker sums of 2x2 factors;
    // site index = bit index (bath 0..nb-1 low, system nb..nb+n-1 high).
    const Eigen::Matrix2cd id2 = Eigen::Matrix2cd::Identity();
    const Eigen::Matrix2cd sz = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
    const auto site_product = [&](const std::vector<int>& sites) {
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
        // kron(f, out) places f on higher bits, so build from bit 0 upward.
        for (int bit = 0; bit < total; ++bit) {
            const bool active =
                std::find(sites.begin(), sites.end(), bit) != sites.end();
            const Eigen::Matrix2cd& f = active ? sz : id2;
            Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
            next.topLeftCorner(out.rows(), out.cols()) = f(0, 0) * out;
            next.topRightCorner(out.rows(), out.cols()) = f(0, 1) * out;
            next.bottomLeftCorner(out.rows(), out.cols()) = f(1, 0) * out;
            next.bottomRightCorner(out.rows(), out.cols()) = f(1, 1) * out;
            out = std::move(next);
        }
        return out;
    };

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < nb; ++i) {
        h += model.bath.omega * site_product({i});
        for (int m = 0; m < n; ++m) {
            const double g = coupling(model, m, i);
            if (g != 0.0) h += g * site_product({nb + m, i});
        }
        if (model.gprime != 0.0)
            for (int j = 0; j < n; ++j)
                for (int k = j + 1; k < n; ++k)
                    h += model.gprime * site_product({nb + j, nb + k, i});
    }
    return h;
}

}  // namespace corrperf
