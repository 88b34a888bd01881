// Exact algebra of n-qubit tensor-Pauli operators in bit-pair encoding.
// These strings are the expansion basis for every channel and performance
// computation in the library.
#ifndef CORRPERF_PAULI_HPP
#define CORRPERF_PAULI_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace corrperf {

// Weight-counting convention for "correctable" index sets: either the total
// number of non-identity tensor factors is bounded by t, or the X-type and
// Z-type supports are bounded by t separately (the CSS reading).  The two
// coincide on strings with no mixed X/Z content, hence on every dephasing
// experiment in this library.
enum class WeightMode { TotalWeight, CssSplit };

// An n-qubit tensor Pauli operator, encoded as a bit pair per qubit:
// qubit j carries X iff bit j of x_mask is set and bit j of z_mask is clear,
// Z iff only the z bit is set, Y iff both are set, identity iff neither.
// The represented matrix is the Hermitian product
//     P = i^{popcount(x_mask & z_mask)} * X^{x_mask} * Z^{z_mask},
// so every PauliString is exactly a tensor product of {I, X, Y, Z} factors
// with no hidden scalar.
struct PauliString {
    int n = 0;
    std::uint32_t x_mask = 0;
    std::uint32_t z_mask = 0;

    bool operator==(const PauliString&) const = default;

    // Number of non-identity tensor factors.
    int weight() const;
    // Number of factors with an X component (X or Y), resp. a Z component.
    int x_weight() const;
    int z_weight() const;
    bool is_identity() const { return x_mask == 0 && z_mask == 0; }

    // Deterministic linear index (z_mask << n) | x_mask in [0, 4^n); this is
    // also the canonical enumeration/sort key everywhere downstream.
    std::uint64_t index() const;
    static PauliString from_index(int n, std::uint64_t index);

    // Text form, one character per qubit, qubit 0 leftmost: e.g. "IZXYI".
    std::string str() const;
    static PauliString parse(const std::string& text);
};

// Largest qubit count for which dense 2^n x 2^n realizations are permitted.
inline constexpr int kPauliDenseCap = 10;
// Largest qubit count for enumeration over all 4^n strings.
inline constexpr int kPauliEnumerationCap = 10;

struct PauliProduct {
    PauliString string;
    std::complex<double> phase;  // one of {1, i, -1, -i}
};

// Matrix product p * q up to the returned scalar phase:
// dense(p) * dense(q) = phase * dense(result).  Throws on mismatched n.
PauliProduct multiply(const PauliString& p, const PauliString& q);

// Dense 2^n x 2^n realization (unitary, Hermitian).  Throws above the cap.
Eigen::MatrixXcd dense_matrix(const PauliString& p);

// <row| P |col> without materializing the matrix; zero unless row == col ^ x.
std::complex<double> pauli_entry(const PauliString& p, std::uint32_t row,
                                 std::uint32_t col);

// All 4^n strings in ascending index order.
std::vector<PauliString> enumerate_all(int n);

// Parameters [n, k, d] of a CSS code together with the correctable weight
// t = floor((d - 1) / 2).
struct CodeParams {
    int n = 1;
    int k = 0;
    int d = 1;
    int t = 0;

    // Validates k < n, 1 <= d <= n and fills in t.
    static CodeParams make(int n, int k, int d);
};

// Ordered list (ascending index) of the Pauli strings the code corrects:
// total weight <= t, or X-weight <= t and Z-weight <= t in CssSplit mode.
std::vector<PauliString> enumerate_correctable(const CodeParams& code,
                                               WeightMode mode);

}  // namespace corrperf

#endif  // CORRPERF_PAULI_HPP
