#include "pyrofront/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pyrofront/numerics.hpp"

namespace pyrofront {

double Perturbation::support_length() const {
    if (support_first < 0) return 0.0;
    return grid.x(support_last) - grid.x(support_first);
}

Perturbation Perturbation::from_field(const Field& phi) {
    const int n = phi.size();
    if (n < 5)
        throw ArgumentError("perturbation: grid too small for compact support");
    for (int i : {0, 1, n - 2, n - 1})
        if (phi[i] != 0.0)
            throw ArgumentError(
                "perturbation: field must vanish at the first and last two nodes");

    Perturbation p;
    p.grid = phi.grid;
    p.phi = phi;
    for (int i = 0; i < n; ++i) {
        if (phi[i] != 0.0) {
            if (p.support_first < 0) p.support_first = i;
            p.support_last = i;
        }
        p.sup_abs = std::max(p.sup_abs, std::abs(phi[i]));
    }
    return p;
}

StabilityBreakdown stability_form_detailed(const Field& v,
                                           const Perturbation& phi, double c,
                                           const Kernel& kernel) {
    if (!(v.grid == phi.grid))
        throw ArgumentError("stability form: v and phi must share a grid");
    if (!(c > 0.0)) throw ArgumentError("stability form: c must be positive");
    const Grid1D& grid = phi.grid;
    const int n = grid.n_points;
    const double h = grid.h();

    Field difference(grid);
    for (int i = 0; i < n; ++i)
        difference[i] =
            std::max(v[i] + phi.phi[i], 0.0) - std::max(v[i], 0.0);
    const Field smoothed = convolve(difference, kernel);

    Field interaction_integrand(grid);
    for (int i = 0; i < n; ++i)
        interaction_integrand[i] = phi.phi[i] * smoothed[i];

    Field gradient_integrand(grid);
    gradient_integrand[0] = 0.0;
    gradient_integrand[n - 1] = 0.0;
    for (int i = 1; i + 1 < n; ++i) {
        const double slope = (phi.phi[i + 1] - phi.phi[i - 1]) / (2.0 * h);
        gradient_integrand[i] = slope * slope;
    }

    StabilityBreakdown result;
    result.interaction = trapezoid(interaction_integrand, 0, n - 1);
    result.gradient = trapezoid(gradient_integrand, 0, n - 1);
    result.value = result.interaction - c * result.gradient;
    return result;
}

double stability_form(const Field& v, const Perturbation& phi, double c,
                      const Kernel& kernel) {
    return stability_form_detailed(v, phi, c, kernel).value;
}

namespace {

Field sample_wave(const WaveProfile& wave, const Grid1D& grid) {
    Field v(grid);
    for (int i = 0; i < grid.n_points; ++i) v[i] = evaluate(wave, grid.x(i));
    return v;
}

}  // namespace

StabilityBreakdown stability_form_detailed(const WaveProfile& wave,
                                           const Perturbation& phi, double c,
                                           const Kernel& kernel) {
    return stability_form_detailed(sample_wave(wave, phi.grid), phi, c, kernel);
}

double stability_form(const WaveProfile& wave, const Perturbation& phi,
                      double c, const Kernel& kernel) {
    return stability_form_detailed(wave, phi, c, kernel).value;
}

InstabilityWitness instability_witness(const WaveProfile& wave,
                                       const Kernel& kernel, double c,
                                       double epsilon, double grid_h) {
    if (!(epsilon > 0.0))
        throw ArgumentError("instability witness: epsilon must be positive");
    if (!(c > 0.0))
        throw ArgumentError("instability witness: c must be positive");
    if (!(grid_h > 0.0))
        throw ArgumentError("instability witness: grid_h must be positive");
    const double lambda = kernel.lambda_lower;
    const double rho = kernel.rho_lower;
    if (!(lambda > 0.0) || !(rho > 0.0))
        throw ConfigurationError(
            "instability witness: kernel has no positive lower envelope");

    // longest node-aligned run (0, x_k] with the wave strictly positive,
    // capped at the lower-envelope radius
    const Grid1D& wgrid = wave.v.grid;
    const int i0 = wgrid.index_of(0.0);
    double run_end = 0.0;
    for (int i = i0 + 1; i < wgrid.n_points; ++i) {
        const double x = wgrid.x(i);
        if (x > rho + 1e-9 * wgrid.h()) break;
        if (!(wave.v[i] > 0.0)) break;
        run_end = x;
    }
    if (run_end <= 0.0)
        throw ConfigurationError(
            "instability witness: wave has no positive interval inside the "
            "lower-envelope radius");

    InstabilityWitness witness;
    witness.mu = 0.9 * run_end;
    witness.lambda_used = lambda;
    witness.rho_used = rho;
    witness.epsilon = epsilon;
    witness.M = 2.0 * 128.0 * c / (lambda * witness.mu * witness.mu);
    witness.predicted_margin =
        lambda * witness.mu * witness.mu * epsilon * epsilon / 16.0 -
        8.0 * c * epsilon * epsilon / witness.M;

    const double m_big = witness.M;
    const double extent = 3.0 * m_big + rho;
    const int half = static_cast<int>(std::ceil(extent / grid_h)) + 2;
    const int n = 2 * half + 1;
    Grid1D grid{-half * grid_h, half * grid_h, n};
    grid.validate();

    Field phi(grid);
    for (int i = 0; i < n; ++i) {
        const double ax = std::abs(grid.x(i));
        double psi = 0.0;
        if (ax <= 2.0 * m_big) {
            psi = 1.0;
        } else if (ax < 3.0 * m_big) {
            const double t = (ax - 2.0 * m_big) / m_big;
            psi = 1.0 - (3.0 * t * t - 2.0 * t * t * t);
        }
        phi[i] = epsilon * psi;
    }
    witness.perturbation = Perturbation::from_field(phi);
    return witness;
}

SmallSupportReport small_support_check(const Field& v, const Perturbation& phi,
                                       double c, const Kernel& kernel) {
    SmallSupportReport report;
    report.sigma = phi.support_length();
    report.bound = kernel.Lambda > 0.0
                       ? std::cbrt(2.0 * c / kernel.Lambda)
                       : std::numeric_limits<double>::infinity();
    report.Q = stability_form(v, phi, c, kernel);
    report.precondition_met = report.sigma <= report.bound;
    report.pass = report.precondition_met ? report.Q <= 1e-10 : true;
    return report;
}

SmallSupportReport small_support_check(const WaveProfile& wave,
                                       const Perturbation& phi, double c,
                                       const Kernel& kernel) {
    return small_support_check(sample_wave(wave, phi.grid), phi, c, kernel);
}

}  // namespace pyrofront
