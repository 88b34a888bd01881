#include "corrperf/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace corrperf {

namespace {

const std::complex<double> kIPowers[4] = {
    {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

void check_qubit_count(int n, int cap, const char* what) {
    if (n < 0) throw std::invalid_argument(std::string(what) + ": negative qubit count");
    if (n > cap)
        throw std::invalid_argument(std::string(what) + ": qubit count " +
                                    std::to_string(n) + " exceeds cap " +
                                    std::to_string(cap));
}

}  // namespace

int PauliString::weight() const { return std::popcount(x_mask | z_mask); }
int PauliString::x_weight() const { return std::popcount(x_mask); }
int PauliString::z_weight() const { return std::popcount(z_mask); }

std::uint64_t PauliString::index() const {
    return (static_cast<std::uint64_t>(z_mask) << n) | x_mask;
}

PauliString PauliString::from_index(int n, std::uint64_t index) {
    if (n < 0 || n > 16) throw std::invalid_argument("PauliString: n out of range");
    const std::uint32_t mask = (n == 0) ? 0u : ((1u << n) - 1u);
    PauliString p;
    p.n = n;
    p.x_mask = static_cast<std::uint32_t>(index) & mask;
    p.z_mask = static_cast<std::uint32_t>(index >> n) & mask;
    if (index >> (2 * n)) throw std::invalid_argument("PauliString: index out of range");
    return p;
}

std::string PauliString::str() const {
    std::string out(static_cast<size_t>(n), 'I');
    for (int j = 0; j < n; ++j) {
        const bool x = (x_mask >> j) & 1u;
        const bool z = (z_mask >> j) & 1u;
        out[static_cast<size_t>(j)] = x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
    }
    return out;
}

PauliString PauliString::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("PauliString: empty text");
    if (text.size() > 16) throw std::invalid_argument("PauliString: too many qubits");
    PauliString p;
    p.n = static_cast<int>(text.size());
    for (int j = 0; j < p.n; ++j) {
        switch (text[static_cast<size_t>(j)]) {
            case 'I': break;
            case 'X': p.x_mask |= 1u << j; break;
            case 'Z': p.z_mask |= 1u << j; break;
            case 'Y': p.x_mask |= 1u << j; p.z_mask |= 1u << j; break;
            default:
                throw std::invalid_argument("PauliString: bad character '" +
                                            std::string(1, text[static_cast<size_t>(j)]) +
                                            "'");
        }
    }
    return p;
}

PauliProduct multiply(const PauliString& p, const PauliString& q) {
    if (p.n != q.n) throw std::invalid_argument("multiply: mismatched qubit counts");
    PauliString r;
    r.n = p.n;
    r.x_mask = p.x_mask ^ q.x_mask;
    r.z_mask = p.z_mask ^ q.z_mask;
    // i^a X^x Z^z factors: commuting Z^{z_p} past X^{x_q} costs (-1)^{|z_p & x_q|},
    // and renormalizing to the canonical i^{|x & z|} prefactor of the result
    // absorbs the leftover power of i.
    const int e = std::popcount(p.x_mask & p.z_mask) +
                  std::popcount(q.x_mask & q.z_mask) -
                  std::popcount(r.x_mask & r.z_mask) +
                  2 * std::popcount(p.z_mask & q.x_mask);
    return {r, kIPowers[((e % 4) + 4) % 4]};
}

std::complex<double> pauli_entry(const PauliString& p, std::uint32_t row,
                                 std::uint32_t col) {
    if (row != (col ^ p.x_mask)) return {0.0, 0.0};
    const int ipow = std::popcount(p.x_mask & p.z_mask) % 4;
    const double sign = (std::popcount(p.z_mask & col) & 1) ? -1.0 : 1.0;
    return kIPowers[ipow] * sign;
}

Eigen::MatrixXcd dense_matrix(const PauliString& p) {
    check_qubit_count(p.n, kPauliDenseCap, "dense_matrix");
    const std::uint32_t dim = 1u << p.n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::uint32_t col = 0; col < dim; ++col)
        m(col ^ p.x_mask, col) = pauli_entry(p, col ^ p.x_mask, col);
    return m;
}

std::vector<PauliString> enumerate_all(int n) {
    check_qubit_count(n, kPauliEnumerationCap, "enumerate_all");
    const std::uint64_t count = 1ull << (2 * n);
    std::vector<PauliString> out;
    out.reserve(count);
    for (std::uint64_t idx = 0; idx < count; ++idx)
        out.push_back(PauliString::from_index(n, idx));
    return out;
}

CodeParams CodeParams::make(int n, int k, int d) {
    if (n < 1) throw std::invalid_argument("CodeParams: n must be positive");
    if (k < 0 || k >= n) throw std::invalid_argument("CodeParams: need 0 <= k < n");
    if (d < 1 || d > n) throw std::invalid_argument("CodeParams: need 1 <= d <= n");
    CodeParams c;
    c.n = n;
    c.k = k;
    c.d = d;
    c.t = (d - 1) / 2;
    return c;
}

std::vector<PauliString> enumerate_correctable(const CodeParams& code,
                                               WeightMode mode) {
    check_qubit_count(code.n, kPauliEnumerationCap, "enumerate_correctable");
    std::vector<PauliString> out;
    const std::uint64_t count = 1ull << (2 * code.n);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        const PauliString p = PauliString::from_index(code.n, idx);
        const bool keep = (mode == WeightMode::TotalWeight)
                              ? p.weight() <= code.t
                              : (p.x_weight() <= code.t && p.z_weight() <= code.t);
        if (keep) out.push_back(p);
    }
    return out;
}

}  // namespace corrperf
