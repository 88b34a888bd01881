// Evaluation of the code-performance measure p_N(tau_d): a literal dense
// path (partial-trace formula over the joint system-bath propagator; exact,
// small dimensions, serves as the oracle) and an analytic magnetization-
// sector fast path that scales to bath sizes of a few hundred spins.
#ifndef CORRPERF_EVALUATOR_HPP
#define CORRPERF_EVALUATOR_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "corrperf/channel.hpp"
#include "corrperf/models.hpp"
#include "corrperf/pauli.hpp"

namespace corrperf {

// Raised when neither evaluation path can serve a request (as opposed to a
// malformed request, which raises std::invalid_argument).
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dimensionless time grid (g * tau_d), linear and inclusive of both ends.
struct Grid {
    double start = 0.0;
    double stop = 3.14159265358979323846;
    int points = 512;

    std::vector<double> values() const;
};

Grid default_grid();

struct PerformanceCurve {
    std::vector<double> grid;
    std::vector<double> values;
    std::string model_tag;
    std::string method;  // "dense" | "sector"
    WeightMode mode = WeightMode::TotalWeight;
};

// U = exp(-i tau H) via eigendecomposition; input must be Hermitian.
Eigen::MatrixXcd propagator(const Eigen::MatrixXcd& hamiltonian, double tau);
// Phase vector exp(-i tau h) of a diagonal Hamiltonian.
Eigen::VectorXcd propagator_diagonal(const Eigen::VectorXd& diagonal, double tau);

// Kraus operators E_{i,j}[s',s] = sqrt(lambda_i) * U[(s',j),(s,i)] extracted
// from a joint propagator and per-basis-state bath weights (the bath bits
// are the low bits of the joint index).  Entries with lambda_i = 0 are
// omitted; they are exactly zero operators.
KrausSet kraus_from_propagator(const Eigen::MatrixXcd& u, int n_system,
                               const std::vector<double>& bath_state_weights);

// Literal partial-trace evaluation
//   p_N = (1/4^n) sum_{correctable v} Tr[ Tr_S(U^dag P_v) Tr_S(P_v U) rho_B ]
// with rho_B diagonal in the bath basis.  Exact for any joint unitary.
double performance_direct(const Eigen::MatrixXcd& u,
                          const std::vector<double>& bath_state_weights,
                          const CodeParams& code, WeightMode mode);
// The same sum, one complex term per correctable string (before the 1/4^n
// normalization); exposes the X/Y-component vanishing for dephasing models.
std::vector<std::complex<double>> performance_direct_terms(
    const Eigen::MatrixXcd& u, const std::vector<double>& bath_state_weights,
    const CodeParams& code, WeightMode mode);

// Fast equivalent of performance_direct for diagonal propagators (every
// cataloged model); only Z-type strings contribute, the rest vanish exactly.
double performance_direct_diagonal(const Eigen::VectorXcd& u_diagonal,
                                   const std::vector<double>& bath_state_weights,
                                   const CodeParams& code, WeightMode mode);

// Largest system size served by the pair-enumeration sector kernel of
// three-body models on per-qubit-local / local-split topologies.
inline constexpr int kSectorPairCap = 4;

// Analytic magnetization-sector evaluation at a single time; requires
// symmetric couplings (no coupling-table override).
double performance_sector_at(const NoiseModel& model, WeightMode mode,
                             double tau);
PerformanceCurve performance_sector(const NoiseModel& model, WeightMode mode,
                                    const Grid& grid);

// Dense-path curve: diagonal propagator + the partial-trace formula.
PerformanceCurve performance_dense(const NoiseModel& model, WeightMode mode,
                                   const Grid& grid);

// One curve per model on a common grid; picks the sector path when its
// preconditions hold, otherwise the dense path, otherwise throws
// InfeasibleError.
std::vector<PerformanceCurve> sweep(const std::vector<NoiseModel>& models,
                                    WeightMode mode, const Grid& grid);

}  // namespace corrperf

#endif  // CORRPERF_EVALUATOR_HPP
