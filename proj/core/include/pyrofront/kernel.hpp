#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pyrofront/grid.hpp"

namespace pyrofront {

enum class KernelShape { step, gaussian, dirac_idealized, tabulated };

/// Interaction kernel: nonnegative, even, integrable weight K(r) with a declared
/// upper envelope Lambda*chi_(-R,R) and (optionally) a lower envelope
/// lambda*chi_(-rho,rho).  Immutable after construction.
struct Kernel {
    KernelShape shape = KernelShape::step;

    double Lambda = 0.0;        ///< upper envelope intensity
    double R = 0.0;             ///< upper envelope support radius
    double lambda_lower = 0.0;  ///< lower envelope intensity (0 = none declared)
    double rho_lower = 0.0;     ///< lower envelope support radius

    // shape parameters
    double step_height = 0.0;
    double gauss_amplitude = 0.0;
    double gauss_sigma = 0.0;
    std::vector<std::pair<double, double>> table;  ///< (r, K(r)) pairs, ascending r >= 0

    /// Pointwise value; the support (-R, R) is open, so value(+-R) = 0.
    double value(double r) const;

    /// One-sided limit of K at the support boundary, needed by quadrature over
    /// windows whose endpoints sit exactly at offset +-R.
    double support_edge_value() const;

    /// Total mass of K over the line (closed form for step/gaussian/dirac,
    /// trapezoid over the table otherwise).
    double mass() const;

    bool is_dirac() const { return shape == KernelShape::dirac_idealized; }
    bool is_zero() const;

    /// Same kernel with intensity scaled by 1/c (wave-speed rescaling).
    Kernel scaled_by(double factor) const;

    bool operator==(const Kernel&) const = default;
};

/// K(r) = Lambda on (-R, R), 0 outside; envelopes (Lambda, R, Lambda, R).
Kernel make_step(double Lambda, double R);

/// Truncated gaussian amplitude*exp(-r^2/(2 sigma^2)) on (-R, R); upper envelope
/// at the peak, lower envelope at the declared support boundary.
Kernel make_gaussian(double amplitude, double sigma, double R);

/// Point-mass sentinel: convolve_plus returns the positive part itself; mass 1.
Kernel make_dirac_idealized();

/// The identically-zero kernel (nominal radius so grid checks have a value).
Kernel make_zero();

/// Piecewise-linear kernel from (r, value) samples with ascending r >= 0;
/// R is the last sample position, Lambda the largest sample value.
Kernel make_tabulated(std::vector<std::pair<double, double>> samples);

/// Load a tabulated kernel from a two-column whitespace-separated text file
/// "r value" with ascending r.  Lines starting with '#' are ignored.
Kernel load_tabulated(const std::string& path);

/// Outcome of sampling a kernel against its declared envelopes.
struct EnvelopeReport {
    bool pass = false;
    double upper_violation = 0.0;  ///< max over samples of (K(r) - Lambda*chi_(-R,R)(r))_+
    double lower_violation = 0.0;  ///< max over samples of (lambda*chi_(-rho,rho)(r) - K(r))_+
    double mass = 0.0;
    double truncation_loss = 0.0;  ///< untruncated minus truncated mass (gaussian only)
    int samples = 0;
    std::string note;
};

/// Sample K on a dense symmetric r-grid and check both envelopes; passes iff
/// every violation is <= 1e-12.
EnvelopeReport certify(const Kernel& kernel, int samples);

}  // namespace pyrofront
