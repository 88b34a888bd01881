// Average fidelities of imperfect control fields: independent per-qubit
// noise ("local" control) versus one shared noise variable ("global"
// control), and the Hoelder-inequality comparison between them.
#ifndef CORRPERF_GATE_FIDELITY_HPP
#define CORRPERF_GATE_FIDELITY_HPP

#include <string>
#include <vector>

namespace corrperf {

// Distribution of the control-field error W.  `mean_offset` shifts the
// distribution; it folds into the cosine argument.
struct NoiseDistribution {
    enum class Kind { Gaussian, Uniform, Discrete };
    Kind kind = Kind::Gaussian;
    double sigma = 0.0;       // Gaussian standard deviation
    double half_width = 0.0;  // Uniform support [-a, a]
    std::vector<std::pair<double, double>> points;  // Discrete (value, weight)
    double mean_offset = 0.0;

    static NoiseDistribution gaussian(double sigma, double mean = 0.0);
    static NoiseDistribution uniform(double half_width, double mean = 0.0);
    static NoiseDistribution discrete(std::vector<std::pair<double, double>> points);
};

// The fidelity integrand: Plain uses the cosine moments as printed in the
// source expressions; Squared replaces cos by cos^2, which is what the
// literal |Tr(V^dag U)|^2 / d^2 average produces.  Both orderings satisfy
// the Hoelder bound.
enum class MomentMode { Plain, Squared };

struct GateNoiseSpec {
    int n = 1;            // qubit count
    double tau_r_g = 1.0; // dimensionless rotation strength multiplying W
    NoiseDistribution dist;
    MomentMode mode = MomentMode::Plain;
};

struct GateFidelityResult {
    double f_local = 0.0;
    double f_global = 0.0;
    double quadrature_error = 0.0;  // max of the two integral error estimates
};

// Local control, independent noise per qubit: (integral of cos(tau_r_g w)
// against the distribution)^n (cos^2 in Squared mode).
double fidelity_local(const GateNoiseSpec& spec);
// Global control, one shared noise variable: integral of cos^n (cos^{2n}).
double fidelity_global(const GateNoiseSpec& spec);
GateFidelityResult fidelities(const GateNoiseSpec& spec);

struct HolderReport {
    size_t cases = 0;
    size_t violations = 0;      // F_local > F_global + tolerance
    double max_violation = 0.0; // max(F_local - F_global) over the sweep
};

// Asserts F_local <= F_global across a grid of scales and qubit counts for
// the given distribution family.
HolderReport holder_check(const std::vector<double>& scales,
                          const std::vector<int>& qubit_counts,
                          NoiseDistribution::Kind kind, MomentMode mode,
                          double tolerance = 1e-10);

struct GateSweepRow {
    double scale;  // a = tau_r_g * sigma (or * half_width)
    double f_local;
    double f_global;
};

// One row per scale: fidelities at tau_r_g = 1 with the distribution scaled.
std::vector<GateSweepRow> faulty_gate_sweep(const std::vector<double>& scales,
                                            int n, NoiseDistribution::Kind kind,
                                            MomentMode mode);

}  // namespace corrperf

#endif  // CORRPERF_GATE_FIDELITY_HPP
