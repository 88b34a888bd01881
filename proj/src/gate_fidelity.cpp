#include "corrperf/gate_fidelity.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

namespace corrperf {

namespace {

constexpr double kQuadTol = 1e-12;
constexpr unsigned kQuadDepth = 15;

using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;

double cos_power(double x, int power) {
    const double c = std::cos(x);
    double out = 1.0;
    for (int i = 0; i < power; ++i) out *= c;
    return out;
}

// Integral of cos^power(tau_r_g * (w + mean)) against the distribution,
// with an error estimate.  Discrete distributions are summed exactly.
double cosine_moment(const NoiseDistribution& dist, double tau_r_g, int power,
                     double* error_out) {
    if (error_out) *error_out = 0.0;
    switch (dist.kind) {
        case NoiseDistribution::Kind::Discrete: {
            if (dist.points.empty())
                throw std::invalid_argument("cosine_moment: empty discrete distribution");
            double total_weight = 0.0, acc = 0.0;
            for (const auto& [value, weight] : dist.points) {
                if (weight < 0.0)
                    throw std::invalid_argument("cosine_moment: negative weight");
                total_weight += weight;
                acc += weight * cos_power(tau_r_g * (value + dist.mean_offset), power);
            }
            if (total_weight <= 0.0)
                throw std::invalid_argument("cosine_moment: non-normalizable distribution");
            return acc / total_weight;
        }
        case NoiseDistribution::Kind::Gaussian: {
            if (dist.sigma < 0.0)
                throw std::invalid_argument("cosine_moment: negative sigma");
            if (dist.sigma == 0.0)
                return cos_power(tau_r_g * dist.mean_offset, power);
            const double sigma = dist.sigma, mean = dist.mean_offset;
            const double norm = 1.0 / (sigma * std::sqrt(2.0 * M_PI));
            const auto integrand = [&](double w) {
                const double z = w / sigma;
                return norm * std::exp(-0.5 * z * z) *
                       cos_power(tau_r_g * (w + mean), power);
            };
            double error = 0.0;
            // The integrand decays like the Gaussian; +/- 12 sigma keeps the
            // truncation far below the 1e-12 quadrature target.
            const double lim = 12.0 * sigma;
            const double value =
                Quad::integrate(integrand, -lim, lim, kQuadDepth, kQuadTol, &error);
            if (error_out) *error_out = error;
            return value;
        }
        case NoiseDistribution::Kind::Uniform: {
            if (dist.half_width < 0.0)
                throw std::invalid_argument("cosine_moment: negative half-width");
            if (dist.half_width == 0.0)
                return cos_power(tau_r_g * dist.mean_offset, power);
            const double a = dist.half_width, mean = dist.mean_offset;
            const auto integrand = [&](double w) {
                return cos_power(tau_r_g * (w + mean), power) / (2.0 * a);
            };
            double error = 0.0;
            const double value =
                Quad::integrate(integrand, -a, a, kQuadDepth, kQuadTol, &error);
            if (error_out) *error_out = error;
            return value;
        }
    }
    throw std::logic_error("cosine_moment: unreachable");
}

int moment_power(MomentMode mode) { return mode == MomentMode::Plain ? 1 : 2; }

}  // namespace

NoiseDistribution NoiseDistribution::gaussian(double sigma, double mean) {
    NoiseDistribution d;
    d.kind = Kind::Gaussian;
    d.sigma = sigma;
    d.mean_offset = mean;
    return d;
}

NoiseDistribution NoiseDistribution::uniform(double half_width, double mean) {
    NoiseDistribution d;
    d.kind = Kind::Uniform;
    d.half_width = half_width;
    d.mean_offset = mean;
    return d;
}

NoiseDistribution NoiseDistribution::discrete(
    std::vector<std::pair<double, double>> points) {
    NoiseDistribution d;
    d.kind = Kind::Discrete;
    d.points = std::move(points);
    return d;
}

double fidelity_local(const GateNoiseSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("fidelity_local: need n >= 1");
    const double moment =
        cosine_moment(spec.dist, spec.tau_r_g, moment_power(spec.mode), nullptr);
    double out = 1.0;
    for (int i = 0; i < spec.n; ++i) out *= moment;
    return out;
}

double fidelity_global(const GateNoiseSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("fidelity_global: need n >= 1");
    return cosine_moment(spec.dist, spec.tau_r_g,
                         spec.n * moment_power(spec.mode), nullptr);
}

GateFidelityResult fidelities(const GateNoiseSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("fidelities: need n >= 1");
    GateFidelityResult r;
    double e_local = 0.0, e_global = 0.0;
    const double moment =
        cosine_moment(spec.dist, spec.tau_r_g, moment_power(spec.mode), &e_local);
    r.f_local = 1.0;
    for (int i = 0; i < spec.n; ++i) r.f_local *= moment;
    r.f_global = cosine_moment(spec.dist, spec.tau_r_g,
                               spec.n * moment_power(spec.mode), &e_global);
    r.quadrature_error = std::max(e_local, e_global);
    return r;
}

HolderReport holder_check(const std::vector<double>& scales,
                          const std::vector<int>& qubit_counts,
                          NoiseDistribution::Kind kind, MomentMode mode,
                          double tolerance) {
    HolderReport report;
    for (const double scale : scales)
        for (const int n : qubit_counts) {
            GateNoiseSpec spec;
            spec.n = n;
            spec.tau_r_g = 1.0;
            spec.mode = mode;
            spec.dist = (kind == NoiseDistribution::Kind::Gaussian)
                            ? NoiseDistribution::gaussian(scale)
                            : NoiseDistribution::uniform(scale);
            const GateFidelityResult r = fidelities(spec);
            ++report.cases;
            report.max_violation =
                std::max(report.max_violation, r.f_local - r.f_global);
            if (r.f_local > r.f_global + tolerance) ++report.violations;
        }
    return report;
}

std::vector<GateSweepRow> faulty_gate_sweep(const std::vector<double>& scales,
                                            int n, NoiseDistribution::Kind kind,
                                            MomentMode mode) {
    if (kind == NoiseDistribution::Kind::Discrete)
        throw std::invalid_argument("faulty_gate_sweep: sweep needs a scale family");
    std::vector<GateSweepRow> rows;
    rows.reserve(scales.size());
    for (const double scale : scales) {
        GateNoiseSpec spec;
        spec.n = n;
        spec.tau_r_g = 1.0;
        spec.mode = mode;
        spec.dist = (kind == NoiseDistribution::Kind::Gaussian)
                        ? NoiseDistribution::gaussian(scale)
                        : NoiseDistribution::uniform(scale);
        const GateFidelityResult r = fidelities(spec);
        rows.push_back({scale, r.f_local, r.f_global});
    }
    return rows;
}

}  // namespace corrperf
