// Linear-map algebra in the tensor-Pauli basis: coefficient ("chi") matrices
// extracted from Kraus sets, weight-graded submap decomposition, the
// correctable/uncorrectable split, and the independent-noise closed form.
#ifndef CORRPERF_CHANNEL_HPP
#define CORRPERF_CHANNEL_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "corrperf/pauli.hpp"

namespace corrperf {

// A set of Kraus operators E_a on n qubits.  `weights` carries the real
// coefficients c_a of a Hermitian (not necessarily completely positive) map
// rho -> sum_a c_a E_a rho E_a^dagger; an empty weights vector means c_a = 1,
// i.e. an ordinary CP map.
struct KrausSet {
    int n = 0;
    std::vector<Eigen::MatrixXcd> operators;
    std::vector<double> weights;

    double weight(size_t a) const { return weights.empty() ? 1.0 : weights[a]; }
    // max-norm of sum_a c_a E_a^dagger E_a - I; ~0 for trace-preserving CP sets.
    double completeness_defect() const;
    // Applies the map to a density (or arbitrary) matrix.
    Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const;
};

// Full chi storage holds a 4^n x 4^n complex matrix; above this qubit count
// only the diagonal (4^n complex entries) is materialized.
inline constexpr int kChiFullCap = 5;
inline constexpr int kChiDiagonalCap = 8;

// Coefficients e_{p,q} of a linear map expanded over tensor-Pauli strings:
// N(rho) = sum_{p,q} e_{p,q} P_p rho P_q.  Normalization is fixed so that a
// trace-preserving map has sum_p e_{p,p} = 1.  Rows/columns are indexed by
// PauliString::index().  Storage is either the full matrix (n <= kChiFullCap)
// or diagonal-only; the diagonal is always available.
class ChiMatrix {
  public:
    ChiMatrix() = default;
    static ChiMatrix zero_full(int n);
    static ChiMatrix zero_diagonal(int n);

    int n() const { return n_; }
    bool has_full() const { return full_.size() > 0; }
    std::uint64_t dim() const { return 1ull << (2 * n_); }

    std::complex<double>& entry(std::uint64_t p, std::uint64_t q);
    std::complex<double> entry(std::uint64_t p, std::uint64_t q) const;
    std::complex<double> diagonal(std::uint64_t p) const { return diag_[static_cast<Eigen::Index>(p)]; }
    void set_diagonal(std::uint64_t p, std::complex<double> v);

    const Eigen::MatrixXcd& full() const;
    const Eigen::VectorXcd& diagonal_vector() const { return diag_; }

    // sum_p e_{p,p}; equals 1 for trace-preserving maps.
    std::complex<double> trace() const { return diag_.sum(); }
    // max |e_{p,q} - conj(e_{q,p})| (0 when diagonal-only and diag is real).
    double hermiticity_defect() const;

    // Applies N(rho) = sum e_{p,q} P_p rho P_q (full storage only).
    Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const;

  private:
    int n_ = 0;
    Eigen::MatrixXcd full_;   // empty when diagonal-only
    Eigen::VectorXcd diag_;
};

// e_{p,q} = sum_a c_a a_{a,p} conj(a_{a,q}) with a_{a,p} = Tr(P_p E_a) / 2^n.
// Full storage for n <= kChiFullCap; diagonal-only storage when requested
// (mandatory above the full cap).
ChiMatrix chi_from_kraus(const KrausSet& kraus, bool diagonal_only = false);

// Chi of a tensor-product channel: qubits of `a` become the low-indexed
// qubits of the result.  Falls back to diagonal-only storage when the
// combined size exceeds the full cap (the diagonal factorizes exactly).
ChiMatrix chi_tensor(const ChiMatrix& a, const ChiMatrix& b);

// Keeps exactly the entries whose joint support (sites where p or q is
// non-identity) has w elements; everything else is zeroed.
ChiMatrix submap(const ChiMatrix& chi, int w);

// Splits chi into (correctable, uncorrectable): the first part keeps entries
// whose joint support weight is <= t (TotalWeight) or whose joint X- and
// Z-supports are each <= t (CssSplit); the parts sum to chi exactly.
std::pair<ChiMatrix, ChiMatrix> correctable_split(const ChiMatrix& chi,
                                                  const CodeParams& code,
                                                  WeightMode mode);

// Performance measure from a channel's chi diagonal: the sum of e_{p,p} over
// the correctable string set.  Imaginary residue is checked (< 1e-12) and
// dropped.
double performance_from_chi(const ChiMatrix& chi, const CodeParams& code,
                            WeightMode mode);

// Probability that at most t of n independent error events occur, each with
// probability p: sum_{c=0}^{t} C(n,c) (1-p)^(n-c) p^c.
double independent_closed_form(int n, int t, double p);

}  // namespace corrperf

#endif  // CORRPERF_CHANNEL_HPP
