#include "corrperf/channel.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace corrperf {

namespace {

constexpr double kImagTol = 1e-12;

// Tr(P E) computed from the sparse structure of P: one nonzero per column.
std::complex<double> trace_pauli_times(const PauliString& p,
                                       const Eigen::MatrixXcd& e) {
    const std::uint32_t dim = 1u << p.n;
    std::complex<double> acc = 0.0;
    for (std::uint32_t col = 0; col < dim; ++col)
        acc += pauli_entry(p, col ^ p.x_mask, col) * e(col, col ^ p.x_mask);
    return acc;
}

// Joint-support classifier shared by submap and correctable_split.
struct SupportMasks {
    std::uint32_t sites, x_sites, z_sites;
};

SupportMasks joint_support(int n, std::uint64_t p, std::uint64_t q) {
    const PauliString sp = PauliString::from_index(n, p);
    const PauliString sq = PauliString::from_index(n, q);
    return {(sp.x_mask | sp.z_mask) | (sq.x_mask | sq.z_mask),
            sp.x_mask | sq.x_mask, sp.z_mask | sq.z_mask};
}

}  // namespace

double KrausSet::completeness_defect() const {
    if (operators.empty()) return 1.0;
    const Eigen::Index dim = operators.front().rows();
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
    for (size_t a = 0; a < operators.size(); ++a)
        acc += weight(a) * (operators[a].adjoint() * operators[a]);
    return (acc - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd KrausSet::apply(const Eigen::MatrixXcd& rho) const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
    for (size_t a = 0; a < operators.size(); ++a)
        out += weight(a) * (operators[a] * rho * operators[a].adjoint());
    return out;
}

ChiMatrix ChiMatrix::zero_full(int n) {
    if (n < 0 || n > kChiFullCap)
        throw std::invalid_argument("ChiMatrix: full storage limited to n <= " +
                                    std::to_string(kChiFullCap));
    ChiMatrix chi;
    chi.n_ = n;
    const Eigen::Index dim = static_cast<Eigen::Index>(1ull << (2 * n));
    chi.full_ = Eigen::MatrixXcd::Zero(dim, dim);
    chi.diag_ = Eigen::VectorXcd::Zero(dim);
    return chi;
}

ChiMatrix ChiMatrix::zero_diagonal(int n) {
    if (n < 0 || n > kChiDiagonalCap)
        throw std::invalid_argument("ChiMatrix: diagonal storage limited to n <= " +
                                    std::to_string(kChiDiagonalCap));
    ChiMatrix chi;
    chi.n_ = n;
    chi.diag_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(1ull << (2 * n)));
    return chi;
}

std::complex<double>& ChiMatrix::entry(std::uint64_t p, std::uint64_t q) {
    if (!has_full()) throw std::logic_error("ChiMatrix: no full storage");
    return full_(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
}

std::complex<double> ChiMatrix::entry(std::uint64_t p, std::uint64_t q) const {
    if (!has_full()) {
        if (p == q) return diag_[static_cast<Eigen::Index>(p)];
        throw std::logic_error("ChiMatrix: off-diagonal entry of diagonal-only storage");
    }
    return full_(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
}

void ChiMatrix::set_diagonal(std::uint64_t p, std::complex<double> v) {
    diag_[static_cast<Eigen::Index>(p)] = v;
    if (has_full())
        full_(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p)) = v;
}

const Eigen::MatrixXcd& ChiMatrix::full() const {
    if (!has_full()) throw std::logic_error("ChiMatrix: no full storage");
    return full_;
}

double ChiMatrix::hermiticity_defect() const {
    if (!has_full()) return diag_.imag().cwiseAbs().maxCoeff();
    return (full_ - full_.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd ChiMatrix::apply(const Eigen::MatrixXcd& rho) const {
    if (!has_full()) throw std::logic_error("ChiMatrix::apply needs full storage");
    const std::uint64_t count = dim();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
    for (std::uint64_t p = 0; p < count; ++p) {
        const Eigen::MatrixXcd left =
            dense_matrix(PauliString::from_index(n_, p)) * rho;
        for (std::uint64_t q = 0; q < count; ++q) {
            const std::complex<double> e = entry(p, q);
            if (e == std::complex<double>(0.0, 0.0)) continue;
            out += e * left * dense_matrix(PauliString::from_index(n_, q));
        }
    }
    return out;
}

ChiMatrix chi_from_kraus(const KrausSet& kraus, bool diagonal_only) {
    const int n = kraus.n;
    const Eigen::Index mat_dim = static_cast<Eigen::Index>(1u << n);
    for (const auto& op : kraus.operators)
        if (op.rows() != mat_dim || op.cols() != mat_dim)
            throw std::invalid_argument("chi_from_kraus: operator dimension mismatch");
    if (!kraus.weights.empty() && kraus.weights.size() != kraus.operators.size())
        throw std::invalid_argument("chi_from_kraus: weight count mismatch");

    const bool full = !diagonal_only && n <= kChiFullCap;
    if (!full && n > kChiDiagonalCap)
        throw std::invalid_argument("chi_from_kraus: qubit count exceeds diagonal cap");
    ChiMatrix chi = full ? ChiMatrix::zero_full(n) : ChiMatrix::zero_diagonal(n);

    const std::uint64_t count = 1ull << (2 * n);
    const double norm = 1.0 / static_cast<double>(1u << n);
    Eigen::VectorXcd amps(static_cast<Eigen::Index>(count));
    for (size_t a = 0; a < kraus.operators.size(); ++a) {
        for (std::uint64_t p = 0; p < count; ++p)
            amps[static_cast<Eigen::Index>(p)] =
                trace_pauli_times(PauliString::from_index(n, p),
                                  kraus.operators[a]) *
                norm;
        const double c = kraus.weight(a);
        if (full) {
            for (std::uint64_t p = 0; p < count; ++p) {
                const std::complex<double> ap = amps[static_cast<Eigen::Index>(p)];
                if (ap == std::complex<double>(0.0, 0.0)) continue;
                for (std::uint64_t q = 0; q < count; ++q)
                    chi.entry(p, q) +=
                        c * ap * std::conj(amps[static_cast<Eigen::Index>(q)]);
            }
        } else {
            for (std::uint64_t p = 0; p < count; ++p) {
                const std::complex<double> ap = amps[static_cast<Eigen::Index>(p)];
                chi.set_diagonal(p, chi.diagonal(p) + c * ap * std::conj(ap));
            }
        }
    }
    if (full) {  // diagonal cache mirrors the full matrix
        for (std::uint64_t p = 0; p < count; ++p)
            chi.set_diagonal(p, chi.entry(p, p));
    }
    return chi;
}

ChiMatrix chi_tensor(const ChiMatrix& a, const ChiMatrix& b) {
    const int n = a.n() + b.n();
    const bool full = a.has_full() && b.has_full() && n <= kChiFullCap;
    if (!full && n > kChiDiagonalCap)
        throw std::invalid_argument("chi_tensor: combined size exceeds diagonal cap");
    ChiMatrix chi = full ? ChiMatrix::zero_full(n) : ChiMatrix::zero_diagonal(n);

    // Index (z << n) | x of the combined string from the factor indices:
    // the x and z masks concatenate with `a` in the low bits.
    const auto combine = [&](std::uint64_t pa, std::uint64_t pb) {
        const PauliString sa = PauliString::from_index(a.n(), pa);
        const PauliString sb = PauliString::from_index(b.n(), pb);
        PauliString s;
        s.n = n;
        s.x_mask = sa.x_mask | (sb.x_mask << a.n());
        s.z_mask = sa.z_mask | (sb.z_mask << a.n());
        return s.index();
    };

    const std::uint64_t ca = a.dim(), cb = b.dim();
    if (full) {
        for (std::uint64_t pa = 0; pa < ca; ++pa)
            for (std::uint64_t pb = 0; pb < cb; ++pb) {
                const std::uint64_t p = combine(pa, pb);
                for (std::uint64_t qa = 0; qa < ca; ++qa)
                    for (std::uint64_t qb = 0; qb < cb; ++qb)
                        chi.entry(p, combine(qa, qb)) =
                            a.entry(pa, qa) * b.entry(pb, qb);
            }
        for (std::uint64_t pa = 0; pa < ca; ++pa)
            for (std::uint64_t pb = 0; pb < cb; ++pb) {
                const std::uint64_t p = combine(pa, pb);
                chi.set_diagonal(p, chi.entry(p, p));
            }
    } else {
        for (std::uint64_t pa = 0; pa < ca; ++pa)
            for (std::uint64_t pb = 0; pb < cb; ++pb)
                chi.set_diagonal(combine(pa, pb),
                                 a.diagonal(pa) * b.diagonal(pb));
    }
    return chi;
}

ChiMatrix submap(const ChiMatrix& chi, int w) {
    if (w < 0 || w > chi.n())
        throw std::invalid_argument("submap: weight out of range");
    const std::uint64_t count = chi.dim();
    if (!chi.has_full()) {
        ChiMatrix out = ChiMatrix::zero_diagonal(chi.n());
        for (std::uint64_t p = 0; p < count; ++p)
            if (PauliString::from_index(chi.n(), p).weight() == w)
                out.set_diagonal(p, chi.diagonal(p));
        return out;
    }
    ChiMatrix out = ChiMatrix::zero_full(chi.n());
    for (std::uint64_t p = 0; p < count; ++p)
        for (std::uint64_t q = 0; q < count; ++q)
            if (std::popcount(joint_support(chi.n(), p, q).sites) == w)
                out.entry(p, q) = chi.entry(p, q);
    for (std::uint64_t p = 0; p < count; ++p) out.set_diagonal(p, out.entry(p, p));
    return out;
}

std::pair<ChiMatrix, ChiMatrix> correctable_split(const ChiMatrix& chi,
                                                  const CodeParams& code,
                                                  WeightMode mode) {
    if (chi.n() != code.n)
        throw std::invalid_argument("correctable_split: code length mismatch");
    const std::uint64_t count = chi.dim();
    const auto correctable = [&](std::uint64_t p, std::uint64_t q) {
        const SupportMasks s = joint_support(chi.n(), p, q);
        if (mode == WeightMode::TotalWeight)
            return std::popcount(s.sites) <= code.t;
        return std::popcount(s.x_sites) <= code.t &&
               std::popcount(s.z_sites) <= code.t;
    };

    if (!chi.has_full()) {
        ChiMatrix keep = ChiMatrix::zero_diagonal(chi.n());
        ChiMatrix rest = ChiMatrix::zero_diagonal(chi.n());
        for (std::uint64_t p = 0; p < count; ++p)
            (correctable(p, p) ? keep : rest).set_diagonal(p, chi.diagonal(p));
        return {keep, rest};
    }
    ChiMatrix keep = ChiMatrix::zero_full(chi.n());
    ChiMatrix rest = ChiMatrix::zero_full(chi.n());
    for (std::uint64_t p = 0; p < count; ++p)
        for (std::uint64_t q = 0; q < count; ++q)
            (correctable(p, q) ? keep : rest).entry(p, q) = chi.entry(p, q);
    for (std::uint64_t p = 0; p < count; ++p) {
        keep.set_diagonal(p, keep.entry(p, p));
        rest.set_diagonal(p, rest.entry(p, p));
    }
    return {keep, rest};
}

double performance_from_chi(const ChiMatrix& chi, const CodeParams& code,
                            WeightMode mode) {
    if (chi.n() != code.n)
        throw std::invalid_argument("performance_from_chi: code length mismatch");
    std::complex<double> acc = 0.0;
    for (const PauliString& p : enumerate_correctable(code, mode))
        acc += chi.diagonal(p.index());
    if (std::abs(acc.imag()) > kImagTol)
        throw std::runtime_error("performance_from_chi: imaginary residue " +
                                 std::to_string(acc.imag()));
    return acc.real();
}

double independent_closed_form(int n, int t, double p) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("independent_closed_form: p outside [0,1]");
    if (n < 1 || t < 0) throw std::invalid_argument("independent_closed_form: bad n or t");
    double acc = 0.0;
    double binom = 1.0;  // C(n, c), updated multiplicatively
    for (int c = 0; c <= std::min(t, n); ++c) {
        acc += binom * std::pow(1.0 - p, n - c) * std::pow(p, c);
        binom = binom * static_cast<double>(n - c) / static_cast<double>(c + 1);
    }
    return acc;
}

}  // namespace corrperf
