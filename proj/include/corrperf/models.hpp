// Catalog of commuting system-bath dephasing Hamiltonians (spin-star
// topologies, two-body and three-body couplings) and thermal bath states.
// Bit layout for the joint Hilbert space: bath spins occupy the low bits
// 0 .. NB-1, system qubit m occupies bit NB + m, so a joint basis index is
// s * 2^NB + b, with s the system bits and b the bath bits.  A set bit means
// Z eigenvalue -1 ("down"); z(bit) = 1 - 2*bit.
#ifndef CORRPERF_MODELS_HPP
#define CORRPERF_MODELS_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "corrperf/pauli.hpp"

namespace corrperf {

enum class Topology { PerQubitLocal, SharedNonlocal, LocalSplit };
enum class InteractionFamily { Dephasing2Body, Dephasing3Body };

std::string topology_name(Topology t);

// Bath geometry and parameters.  N counts bath spins: the total for
// SharedNonlocal and LocalSplit, per system qubit for PerQubitLocal.
// The optional coupling_table (n rows, total-bath-spins columns) overrides
// the symmetric two-body coupling g; asymmetric tables are served only by
// the dense evaluation path.
struct BathSpec {
    Topology topology = Topology::SharedNonlocal;
    int N = 0;
    double omega = 1.0;
    double beta = 0.0;
    double g = 1.0;
    Eigen::MatrixXd coupling_table;  // empty => symmetric coupling g

    bool has_coupling_table() const { return coupling_table.size() > 0; }
};

// A fully resolved noise model: code, bath, and the interaction family.
// Invariant: gprime == 0 exactly when the family is two-body.
struct NoiseModel {
    CodeParams code;
    BathSpec bath;
    double gprime = 0.0;
    InteractionFamily family = InteractionFamily::Dephasing2Body;
    std::string tag;
};

// Validates the bath parameters against the code (divisibility, signs,
// table shape)
// and derives the family from gprime.
NoiseModel make_noise_model(const CodeParams& code, const BathSpec& bath,
                            double gprime, std::string tag = {});

// Number of bath spins in the joint space.
int total_bath_spins(const NoiseModel& model);
int total_bath_spins(Topology topology, int n, int N);

// Half-open range [first, last) of bath-spin indices coupled to system
// qubit m (ignoring any coupling-table override).
std::pair<int, int> bath_range(const NoiseModel& model, int m);

// Thermal state of an N-spin bath with energy omega * (N - 2k) in the
// sector with k down spins: sector weights P_k = C(N,k) e^{-beta*omega*(N-2k)} / Z
// with Z = (2 cosh(beta*omega))^N.  Weights are accumulated with the
// multiplicative binomial recurrence to keep sum(P_k) = 1 to ~1e-14 even
// at N ~ 200.
struct ThermalState {
    int N = 0;
    std::vector<double> weights;  // index k = 0..N

    // Bath magnetization of sector k (sum of Z eigenvalues).
    int magnetization(int k) const { return N - 2 * k; }
};

ThermalState thermal_state(int N, double beta_omega);

// Per-basis-state weights lambda_b = e^{-beta*omega*(NB - 2 popcount(b))} / Z
// for the dense path (2^NB entries).
std::vector<double> per_state_bath_weights(int bath_spins, double beta_omega);

// Total spins (system + bath) the diagonal representation accepts.
inline constexpr int kDenseSpinCap = 14;
// Total spins for which full 2^D x 2^D matrices may be materialized.
inline constexpr int kDenseMatrixSpinCap = 12;

// Diagonal of the joint Hamiltonian (all cataloged families are diagonal
// in the computational basis), dimension 2^(n + bath spins):
//   H = sum_m sum_i g_mi sigma_z^m Z_i                     (two-body)
//     + gprime * sum_{j<k} sigma_z^j sigma_z^k * sum_i Z_i (three-body)
//     + omega * sum_i Z_i                                  (bath internal)
// The three-body pair terms couple to every bath spin; for a shared bath
// this is the standard many-body dephasing extension, and the same rule is
// applied verbatim to the other topologies.
Eigen::VectorXd hamiltonian_diagonal(const NoiseModel& model);
// Same Hamiltonian built independently as a dense kron-sum (slow; used to
// certify diagonality and cross-check the fast construction).
Eigen::MatrixXcd dense_hamiltonian(const NoiseModel& model);

}  // namespace corrperf

#endif  // CORRPERF_MODELS_HPP
