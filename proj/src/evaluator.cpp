#include "corrperf/evaluator.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace corrperf {

namespace {

constexpr double kImagTol = 1e-12;
constexpr double kHermTol = 1e-10;

// Compensated (Kahan) accumulator: the sector sums at N ~ 200 cancel across
// ~200 terms and the acceptance gates sit at 1e-12.
struct KahanSum {
    double sum = 0.0, carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double b = 1.0;
    for (int i = 0; i < k; ++i)
        b = b * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return b;
}

int checked_bath_bits(const Eigen::Index joint_dim, int n_system,
                      size_t weight_count, const char* what) {
    if (weight_count == 0 || (weight_count & (weight_count - 1)) != 0)
        throw std::invalid_argument(std::string(what) +
                                    ": bath weight count must be a power of two");
    const int nb = std::countr_zero(weight_count);
    if (joint_dim != static_cast<Eigen::Index>(1ull << (n_system + nb)))
        throw std::invalid_argument(std::string(what) +
                                    ": dimension mismatch between propagator, system and bath");
    return nb;
}

double real_with_residue_check(std::complex<double> v, const char* what) {
    if (std::abs(v.imag()) > kImagTol)
        throw std::runtime_error(std::string(what) + ": imaginary residue " +
                                 std::to_string(v.imag()));
    return v.real();
}

}  // namespace

std::vector<double> Grid::values() const {
    if (points < 1) throw std::invalid_argument("Grid: need at least one point");
    if (!(stop >= start)) throw std::invalid_argument("Grid: stop must be >= start");
    std::vector<double> v(static_cast<size_t>(points));
    if (points == 1) {
        v[0] = start;
        return v;
    }
    const double step = (stop - start) / static_cast<double>(points - 1);
    for (int i = 0; i < points; ++i) v[static_cast<size_t>(i)] = start + step * i;
    v.back() = stop;  // pin the endpoint against rounding
    return v;
}

Grid default_grid() { return Grid{}; }

Eigen::MatrixXcd propagator(const Eigen::MatrixXcd& hamiltonian, double tau) {
    if (hamiltonian.rows() != hamiltonian.cols())
        throw std::invalid_argument("propagator: matrix not square");
    if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
        throw std::invalid_argument("propagator: matrix not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("propagator: eigendecomposition failed");
    const Eigen::VectorXd& ev = solver.eigenvalues();
    Eigen::VectorXcd phases(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        phases[i] = std::polar(1.0, -tau * ev[i]);
    return solver.eigenvectors() * phases.asDiagonal() *
           solver.eigenvectors().adjoint();
}

Eigen::VectorXcd propagator_diagonal(const Eigen::VectorXd& diagonal, double tau) {
    Eigen::VectorXcd u(diagonal.size());
    for (Eigen::Index i = 0; i < diagonal.size(); ++i)
        u[i] = std::polar(1.0, -tau * diagonal[i]);
    return u;
}

KrausSet kraus_from_propagator(const Eigen::MatrixXcd& u, int n_system,
                               const std::vector<double>& bath_state_weights) {
    const int nb = checked_bath_bits(u.rows(), n_system, bath_state_weights.size(),
                                     "kraus_from_propagator");
    const Eigen::Index db = static_cast<Eigen::Index>(1) << nb;
    const Eigen::Index ds = static_cast<Eigen::Index>(1) << n_system;
    KrausSet set;
    set.n = n_system;
    set.operators.reserve(static_cast<size_t>(db) * static_cast<size_t>(db));
    for (Eigen::Index i = 0; i < db; ++i) {
        const double lambda = bath_state_weights[static_cast<size_t>(i)];
        if (lambda < 0.0)
            throw std::invalid_argument("kraus_from_propagator: negative bath weight");
        if (lambda == 0.0) continue;
        const double root = std::sqrt(lambda);
        for (Eigen::Index j = 0; j < db; ++j) {
            Eigen::MatrixXcd e(ds, ds);
            for (Eigen::Index sp = 0; sp < ds; ++sp)
                for (Eigen::Index s = 0; s < ds; ++s)
                    e(sp, s) = root * u(sp * db + j, s * db + i);
            set.operators.push_back(std::move(e));
        }
    }
    return set;
}

std::vector<std::complex<double>> performance_direct_terms(
    const Eigen::MatrixXcd& u, const std::vector<double>& bath_state_weights,
    const CodeParams& code, WeightMode mode) {
    const int nb = checked_bath_bits(u.rows(), code.n, bath_state_weights.size(),
                                     "performance_direct");
    const std::uint32_t ds = 1u << code.n;
    const Eigen::Index db = static_cast<Eigen::Index>(1) << nb;

    std::vector<std::complex<double>> terms;
    for (const PauliString& v : enumerate_correctable(code, mode)) {
        // T2 = Tr_S(P_v U) and T1 = Tr_S(U^dag P_v) assembled from the
        // system-indexed blocks of U; P_v contributes one block per system
        // column s, at row s ^ x.
        Eigen::MatrixXcd t1 = Eigen::MatrixXcd::Zero(db, db);
        Eigen::MatrixXcd t2 = Eigen::MatrixXcd::Zero(db, db);
        for (std::uint32_t s = 0; s < ds; ++s) {
            const auto block =
                u.block((s ^ v.x_mask) * db, s * db, db, db);
            t2.noalias() += pauli_entry(v, s, s ^ v.x_mask) * block;
            t1.noalias() += pauli_entry(v, s ^ v.x_mask, s) * block.adjoint();
        }
        const Eigen::VectorXcd diag = (t1 * t2).diagonal();
        std::complex<double> term = 0.0;
        for (Eigen::Index b = 0; b < db; ++b)
            term += diag[b] * bath_state_weights[static_cast<size_t>(b)];
        terms.push_back(term);
    }
    return terms;
}

double performance_direct(const Eigen::MatrixXcd& u,
                          const std::vector<double>& bath_state_weights,
                          const CodeParams& code, WeightMode mode) {
    const auto terms = performance_direct_terms(u, bath_state_weights, code, mode);
    KahanSum re;
    KahanSum im;
    for (const auto& t : terms) {
        re.add(t.real());
        im.add(t.imag());
    }
    const double norm = std::ldexp(1.0, -2 * code.n);  // 1 / 4^n
    return real_with_residue_check({re.sum * norm, im.sum * norm},
                                   "performance_direct");
}

double performance_direct_diagonal(const Eigen::VectorXcd& u_diagonal,
                                   const std::vector<double>& bath_state_weights,
                                   const CodeParams& code, WeightMode mode) {
    const int nb = checked_bath_bits(u_diagonal.size(), code.n,
                                     bath_state_weights.size(),
                                     "performance_direct_diagonal");
    const std::uint32_t ds = 1u << code.n;
    const Eigen::Index db = static_cast<Eigen::Index>(1) << nb;

    KahanSum acc;
    Eigen::VectorXcd t(db);
    for (const PauliString& v : enumerate_correctable(code, mode)) {
        // Strings with an X/Y component pair off-diagonal blocks of a
        // diagonal U and vanish identically.
        if (v.x_mask != 0) continue;
        t.setZero();
        for (std::uint32_t s = 0; s < ds; ++s) {
            const double sign = (std::popcount(v.z_mask & s) & 1) ? -1.0 : 1.0;
            t += sign * u_diagonal.segment(s * db, db);
        }
        double term = 0.0;
        for (Eigen::Index b = 0; b < db; ++b)
            term += bath_state_weights[static_cast<size_t>(b)] * std::norm(t[b]);
        acc.add(term);
    }
    return acc.sum * std::ldexp(1.0, -2 * code.n);
}

namespace {

// ---- magnetization-sector kernels --------------------------------------
//
// All cataloged Hamiltonians are diagonal, so for a Z-type string the
// per-sector system trace is an explicit sum over system basis states, and
// thermal averaging reduces to the (N+1) magnetization sectors.  X/Y-type
// strings vanish identically and are never enumerated here.

// Shared bath, two-body: every qubit acquires the same sector phase
// theta = g tau (N - 2k), and the Z-string sums factorize per qubit into
// cos/sin powers.
double sector_shared_2body(const NoiseModel& model, double tau,
                           const ThermalState& bath) {
    const int n = model.code.n, t = model.code.t;
    KahanSum acc;
    for (int k = 0; k <= bath.N; ++k) {
        const double theta = model.bath.g * tau * bath.magnetization(k);
        const double c2 = std::cos(theta) * std::cos(theta);
        const double s2 = 1.0 - c2;
        double inner = 0.0;
        for (int w = 0; w <= t; ++w)
            inner += binomial(n, w) * std::pow(c2, n - w) * std::pow(s2, w);
        acc.add(bath.weights[static_cast<size_t>(k)] * inner);
    }
    return acc.sum;
}

// Independent equal baths (per-qubit-local, or local-split with N/n spins
// per bath), two-body: the per-qubit factors are independent thermal
// averages f0/f1 and the string sum is binomial in them.
double sector_local_2body(const NoiseModel& model, double tau, int per_bath) {
    const ThermalState bath =
        thermal_state(per_bath, model.bath.beta * model.bath.omega);
    KahanSum f0, f1;
    for (int k = 0; k <= per_bath; ++k) {
        const double theta = model.bath.g * tau * bath.magnetization(k);
        const double c2 = std::cos(theta) * std::cos(theta);
        f0.add(bath.weights[static_cast<size_t>(k)] * c2);
        f1.add(bath.weights[static_cast<size_t>(k)] * (1.0 - c2));
    }
    const int n = model.code.n, t = model.code.t;
    KahanSum acc;
    for (int w = 0; w <= t; ++w)
        acc.add(binomial(n, w) * std::pow(f1.sum, w) * std::pow(f0.sum, n - w));
    return acc.sum;
}

// Magnetization-class coefficients c[w][a] = sum over system states with a
// down spins of the sign of the first-w-qubits Z string.  By permutation
// symmetry every weight-w Z string produces the same |trace|, so one
// representative per weight suffices, scaled by C(n,w).
std::vector<std::vector<double>> magnetization_class_coefficients(int n, int t) {
    std::vector<std::vector<double>> c(
        static_cast<size_t>(t) + 1, std::vector<double>(static_cast<size_t>(n) + 1, 0.0));
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        const int downs = std::popcount(s);
        for (int w = 0; w <= t; ++w) {
            const std::uint32_t support = (w == 0) ? 0u : ((1u << w) - 1u);
            const double sign = (std::popcount(s & support) & 1) ? -1.0 : 1.0;
            c[static_cast<size_t>(w)][static_cast<size_t>(downs)] += sign;
        }
    }
    return c;
}

// Shared bath, three-body: the phase of system state s against sector
// magnetization b is tau * b * (g*m + g'*(m^2 - n)/2) with m the system
// magnetization, so traces depend on s only through its magnetization
// class.
double sector_shared_3body(const NoiseModel& model, double tau,
                           const ThermalState& bath) {
    const int n = model.code.n, t = model.code.t;
    const auto classes = magnetization_class_coefficients(n, t);
    const double g = model.bath.g, gp = model.gprime;

    KahanSum acc;
    for (int k = 0; k <= bath.N; ++k) {
        const double b = bath.magnetization(k);
        double inner = 0.0;
        std::vector<std::complex<double>> phases(static_cast<size_t>(n) + 1);
        for (int downs = 0; downs <= n; ++downs) {
            const double m = n - 2 * downs;
            phases[static_cast<size_t>(downs)] =
                std::polar(1.0, -tau * b * (g * m + gp * 0.5 * (m * m - n)));
        }
        for (int w = 0; w <= t; ++w) {
            std::complex<double> trace = 0.0;
            for (int downs = 0; downs <= n; ++downs)
                trace += classes[static_cast<size_t>(w)][static_cast<size_t>(downs)] *
                         phases[static_cast<size_t>(downs)];
            inner += binomial(n, w) * std::norm(trace);
        }
        acc.add(bath.weights[static_cast<size_t>(k)] * inner);
    }
    return acc.sum * std::ldexp(1.0, -2 * n);
}

// Independent equal baths, three-body: the bath average of a pair of system
// states (s, s') factorizes into one characteristic-function value per
// bath, with per-qubit frequency g*(sigma_m - sigma'_m) + g'*dq.  The
// correctable-set sign sum depends only on the number of disagreeing
// qubits h, via elementary symmetric polynomials of a +/-1 vector.
double sector_local_3body(const NoiseModel& model, double tau, int per_bath) {
    const int n = model.code.n, t = model.code.t;
    if (n > kSectorPairCap)
        throw InfeasibleError(
            "sector path: three-body on independent baths is limited to n <= " +
            std::to_string(kSectorPairCap) + " system qubits; use the dense path");
    const ThermalState bath =
        thermal_state(per_bath, model.bath.beta * model.bath.omega);
    const double g = model.bath.g, gp = model.gprime;

    // e_sum[h] = sum_{w<=t} e_w of a vector with h entries -1 and n-h
    // entries +1 (exact small integers).
    std::vector<double> e_sum(static_cast<size_t>(n) + 1, 0.0);
    for (int h = 0; h <= n; ++h)
        for (int w = 0; w <= t; ++w)
            for (int i = 0; i <= w; ++i)
                e_sum[static_cast<size_t>(h)] += (i % 2 ? -1.0 : 1.0) *
                                                 binomial(h, i) * binomial(n - h, w - i);

    const auto characteristic = [&](double x) {
        std::complex<double> acc = 0.0;
        for (int k = 0; k <= per_bath; ++k)
            acc += bath.weights[static_cast<size_t>(k)] *
                   std::polar(1.0, -x * bath.magnetization(k));
        return acc;
    };
    const auto q_of = [&](int downs) {
        const double m = n - 2 * downs;
        return 0.5 * (m * m - n);
    };
    // Characteristic-function table over qubit disagreement delta in
    // {-2, 0, +2} (index 0..2) and the (downs(s), downs(s')) class pair.
    std::vector<std::complex<double>> table(3u * (n + 1u) * (n + 1u));
    const auto table_at = [&](int d_idx, int a, int ap) -> std::complex<double>& {
        return table[static_cast<size_t>((d_idx * (n + 1) + a) * (n + 1) + ap)];
    };
    for (int a = 0; a <= n; ++a)
        for (int ap = 0; ap <= n; ++ap) {
            const double dq = q_of(a) - q_of(ap);
            for (int d_idx = 0; d_idx < 3; ++d_idx)
                table_at(d_idx, a, ap) =
                    characteristic(tau * (g * 2.0 * (d_idx - 1) + gp * dq));
        }

    KahanSum re, im;
    const std::uint32_t ds = 1u << n;
    for (std::uint32_t s = 0; s < ds; ++s) {
        const int a = std::popcount(s);
        for (std::uint32_t sp = 0; sp < ds; ++sp) {
            const int ap = std::popcount(sp);
            // delta_m = sigma_m - sigma'_m = 2*(bit'_m - bit_m)
            const int n_minus = std::popcount(s & ~sp);  // delta = -2
            const int n_plus = std::popcount(~s & sp & (ds - 1));
            const int n_zero = n - n_minus - n_plus;
            std::complex<double> prod = e_sum[static_cast<size_t>(n_minus + n_plus)];
            for (int r = 0; r < n_minus; ++r) prod *= table_at(0, a, ap);
            for (int r = 0; r < n_zero; ++r) prod *= table_at(1, a, ap);
            for (int r = 0; r < n_plus; ++r) prod *= table_at(2, a, ap);
            re.add(prod.real());
            im.add(prod.imag());
        }
    }
    const double norm = std::ldexp(1.0, -2 * n);
    return real_with_residue_check({re.sum * norm, im.sum * norm},
                                   "sector path (three-body pairs)");
}

}  // namespace

double performance_sector_at(const NoiseModel& model, WeightMode mode,
                             double tau) {
    (void)mode;  // X/Y strings vanish for every cataloged model, so the
                 // TotalWeight and CssSplit sets produce identical values.
    if (model.bath.has_coupling_table())
        throw std::invalid_argument(
            "sector path requires symmetric couplings; use the dense path");
    const Topology topo = model.bath.topology;
    const int per_bath = topo == Topology::LocalSplit
                             ? model.bath.N / model.code.n
                             : model.bath.N;
    if (model.family == InteractionFamily::Dephasing2Body) {
        if (topo == Topology::SharedNonlocal) {
            const ThermalState bath =
                thermal_state(model.bath.N, model.bath.beta * model.bath.omega);
            return sector_shared_2body(model, tau, bath);
        }
        return sector_local_2body(model, tau, per_bath);
    }
    if (topo == Topology::SharedNonlocal) {
        const ThermalState bath =
            thermal_state(model.bath.N, model.bath.beta * model.bath.omega);
        return sector_shared_3body(model, tau, bath);
    }
    return sector_local_3body(model, tau, per_bath);
}

PerformanceCurve performance_sector(const NoiseModel& model, WeightMode mode,
                                    const Grid& grid) {
    PerformanceCurve curve;
    curve.grid = grid.values();
    curve.values.reserve(curve.grid.size());
    curve.model_tag = model.tag;
    curve.method = "sector";
    curve.mode = mode;
    // Sector-independent setup happens per call; grid order is the outer
    // deterministic loop.
    for (const double tau : curve.grid)
        curve.values.push_back(performance_sector_at(model, mode, tau));
    return curve;
}

PerformanceCurve performance_dense(const NoiseModel& model, WeightMode mode,
                                   const Grid& grid) {
    const Eigen::VectorXd h = hamiltonian_diagonal(model);
    const auto weights = per_state_bath_weights(
        total_bath_spins(model), model.bath.beta * model.bath.omega);
    PerformanceCurve curve;
    curve.grid = grid.values();
    curve.values.reserve(curve.grid.size());
    curve.model_tag = model.tag;
    curve.method = "dense";
    curve.mode = mode;
    for (const double tau : curve.grid)
        curve.values.push_back(performance_direct_diagonal(
            propagator_diagonal(h, tau), weights, model.code, mode));
    return curve;
}

std::vector<PerformanceCurve> sweep(const std::vector<NoiseModel>& models,
                                    WeightMode mode, const Grid& grid) {
    std::vector<PerformanceCurve> curves;
    curves.reserve(models.size());
    for (const NoiseModel& model : models) {
        const bool sector_ok =
            !model.bath.has_coupling_table() &&
            (model.family == InteractionFamily::Dephasing2Body ||
             model.bath.topology == Topology::SharedNonlocal ||
             model.code.n <= kSectorPairCap);
        if (sector_ok) {
            curves.push_back(performance_sector(model, mode, grid));
            continue;
        }
        if (model.code.n + total_bath_spins(model) <= kDenseSpinCap) {
            curves.push_back(performance_dense(model, mode, grid));
            continue;
        }
        throw InfeasibleError("sweep: no feasible evaluation path for model '" +
                              model.tag + "'");
    }
    return curves;
}

}  // namespace corrperf
