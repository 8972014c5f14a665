#pragma once

#include "pyrofront/grid.hpp"
#include "pyrofront/kernel.hpp"
#include "pyrofront/waves.hpp"

namespace pyrofront {

/// A compactly supported test function: zero at the first and last two
/// nodes of its grid (numerical compact support), with the support
/// detected from the data.
struct Perturbation {
    Grid1D grid;
    Field phi;
    int support_first = -1;  ///< first nonzero node, -1 when identically zero
    int support_last = -1;   ///< last nonzero node
    double sup_abs = 0.0;

    /// Length of the support interval (0 when the field is identically zero).
    double support_length() const;

    /// Validates the end-node zeros and detects the support.
    static Perturbation from_field(const Field& phi);
};

/// The two halves of the stability quadratic form
///   Q(phi) = integral phi ((v + phi)_+ - v_+) * K  -  c integral |phi'|^2
/// (phi' by centered differences).  Q <= 0 means the stability inequality
/// holds for this particular perturbation.
struct StabilityBreakdown {
    double interaction = 0.0;  ///< integral of phi ((v+phi)_+ - v_+) * K
    double gradient = 0.0;     ///< integral of |phi'|^2
    double value = 0.0;        ///< interaction - c * gradient
};

/// v given as samples on the perturbation's own grid.
StabilityBreakdown stability_form_detailed(const Field& v,
                                           const Perturbation& phi, double c,
                                           const Kernel& kernel);
double stability_form(const Field& v, const Perturbation& phi, double c,
                      const Kernel& kernel);

/// v given as a solved wave, evaluated on the perturbation's grid via the
/// profile (closed-form extension on the left, two-point exponential
/// formula on the right).
StabilityBreakdown stability_form_detailed(const WaveProfile& wave,
                                           const Perturbation& phi, double c,
                                           const Kernel& kernel);
double stability_form(const WaveProfile& wave, const Perturbation& phi,
                      double c, const Kernel& kernel);

/// The constructed destabilizing perturbation phi = epsilon psi: psi is a
/// C^1 plateau bump equal to 1 on [-2M, 2M], 0 outside (-3M, 3M), with
/// cubic ramps satisfying |psi'| <= 2/M, where M = 2 * 128 c / (lambda mu^2)
/// and mu is 90% of the longest node-aligned interval (0, mu] on which the
/// wave is strictly positive, capped by the kernel's lower-envelope radius.
struct InstabilityWitness {
    Perturbation perturbation;
    double mu = 0.0;
    double M = 0.0;
    double epsilon = 0.0;
    double lambda_used = 0.0;
    double rho_used = 0.0;
    /// lambda mu^2 eps^2 / 16 - 8 c eps^2 / M: the guaranteed lower bound
    /// on Q for the witness.
    double predicted_margin = 0.0;
};

InstabilityWitness instability_witness(const WaveProfile& wave,
                                       const Kernel& kernel, double c,
                                       double epsilon, double grid_h = 0.025);

/// Small-support stability certificate: perturbations whose support length
/// sigma satisfies sigma <= (2c/Lambda)^{1/3} must yield Q <= 0 (checked
/// against a 1e-10 numerical slop).  A sigma beyond the bound is reported
/// as precondition-unmet (check skipped, pass left true).
struct SmallSupportReport {
    double sigma = 0.0;
    double bound = 0.0;
    double Q = 0.0;
    bool precondition_met = false;
    bool pass = false;
};

SmallSupportReport small_support_check(const Field& v, const Perturbation& phi,
                                       double c, const Kernel& kernel);
SmallSupportReport small_support_check(const WaveProfile& wave,
                                       const Perturbation& phi, double c,
                                       const Kernel& kernel);

}  // namespace pyrofront
