#pragma once

#include <utility>
#include <vector>

#include "pyrofront/grid.hpp"
#include "pyrofront/kernel.hpp"

namespace pyrofront {

/// Which weighted sup-norm the fixed-point iteration is measured in.
/// kernel_weighted uses M = 4 + omega + Lambda (in diffusion-rescaled
/// variables); speed_weighted uses M = omega + 1 together with the scale
/// L = 4 e^{3MR} / M.
enum class ContractionRoute { kernel_weighted, speed_weighted };

/// Parameters of the traveling-slope problem
///   c v'' - omega v' + (v_+ * K) = 0,  v(0) = 0, v'(0) = kappa,
/// posed on a grid over [-2R, X_max] that contains x = 0 as a node.
/// Inputs with c != 1 are rescaled internally (omega -> omega/c,
/// K -> K/c) and solved with unit diffusion; v and w are unchanged by
/// the rescale, so results are reported in the original variables.
struct WaveParams {
    double omega = 1.0;  ///< wave speed (> 0)
    double kappa = 1.0;  ///< slope at the origin (> 0)
    double c = 1.0;      ///< diffusion coefficient (> 0)
    Kernel kernel = make_zero();
    Grid1D grid;
    double tol = 1e-12;  ///< weighted-norm stopping threshold
    int max_iter = 200;
    ContractionRoute route = ContractionRoute::kernel_weighted;

    double omega_scaled() const { return omega / c; }
    Kernel kernel_scaled() const;

    /// Norm weight M of the chosen route, in rescaled variables.
    double norm_weight() const;

    /// Throws ArgumentError/ConfigurationError on invalid parameters: the
    /// grid must start at -2R exactly and contain 0 as a node, and the
    /// kernel must be integrable (the idealized point mass has closed-form
    /// waves and is rejected here).
    void validate() const;
};

/// Per-solve convergence diagnostics.
struct IterationReport {
    int iterations_used = 0;
    std::vector<double> weighted_deltas;  ///< per-iteration weighted-norm step
    bool converged = false;
    /// sup over interior nodes (excluding x > excluded_tail_from) of
    /// |omega w - c w'_h - v_+ * K| in the original variables.
    double residual_sup = 0.0;
    /// Last iteration's plain sup-norm step on [-2R, min(X_max, 1)].
    double plain_sup_delta = 0.0;
    double norm_weight = 0.0;
    ContractionRoute route = ContractionRoute::kernel_weighted;
    /// 4 e^{3MR} / M for the route's M (rescaled variables).
    double lipschitz_scale = 0.0;
    /// e^{3(4 + omega + Lambda)R} / 4 in rescaled variables; the iteration
    /// is provably a strict contraction when this is <= 1/2.
    double contraction_factor = 0.0;
    bool contraction_certified = false;
    /// Residual and bound checks ignore nodes beyond this abscissa: the
    /// convolution window there reads the constant right extension.
    double excluded_tail_from = 0.0;
};

/// A solved (or partially iterated) traveling slope: v and its derivative
/// samples w on the grid, the boundary data needed for the closed-form
/// left extension, and the cached right-edge convolution value used by the
/// right extension.
struct WaveProfile {
    WaveParams params;
    Field v;
    Field w;
    double v_left = 0.0;     ///< v(-2R)
    double w_left = 0.0;     ///< v'(-2R)
    double conv_right = 0.0; ///< (v_+ * K/c)(X_max)
    IterationReport iteration;

    /// Finite limit of the left extension as x -> -infinity.
    double left_limit() const;
};

/// Builds the wave grid: x_min = -2R exactly, spacing h = 2R/m with
/// m = floor((n-1) * 2R / (x_max_target + 2R)) so that 0 lands on a node
/// and X_max = -2R + (n-1) h >= x_max_target.  Requires m >= 2.
Grid1D wave_grid(double R, double x_max_target, int n_points);

/// One application of the fixed-point map:
///   Phi_1(v, w; x) = integral_0^x w,
///   Phi_2(v, w; x) = e^{omega x} (kappa - integral_0^x e^{-omega theta}
///                                  (v_+ * K)(theta) d theta),
/// in rescaled variables; pure and deterministic.
std::pair<Field, Field> apply_phi(const Field& v, const Field& w,
                                  const WaveParams& params);

/// Iterates apply_phi from the canonical start (0, kappa e^{omega x})
/// until the weighted-norm step drops below tol or max_iter is reached.
/// Non-convergence returns converged = false (diagnostic value);
/// non-finite iterates throw NumericalFailure.
WaveProfile solve(const WaveParams& params);

/// Closed-form extension for x <= -2R:
///   v(x) = w(-2R) e^{omega (x + 2R)} / omega + v(-2R) - w(-2R) / omega
/// (omega in rescaled variables); C^1 match at the junction.
double extend_left(const WaveProfile& profile, double x);

/// v at an arbitrary abscissa: closed-form extension left of the grid,
/// linear interpolation on it, and the two-point exponential formula with
/// the cached right-edge convolution beyond it (exponent capped and the
/// result clamped to +-1e12 so far-field probes stay finite).
double evaluate(const WaveProfile& profile, double x);

/// Closed-form solution of v'' - omega v' + v = 0, v(0) = 0, v'(0) = kappa:
///   omega > 2: kappa (e^{l+ x} - e^{l- x}) / sqrt(omega^2 - 4),
///              l+- = (omega +- sqrt(omega^2 - 4)) / 2;
///   omega = 2: kappa x e^x;
///   omega < 2: kappa (2 / sqrt(4 - omega^2)) e^{omega x / 2}
///              sin(sqrt(4 - omega^2) x / 2).
double idealized_wave(double omega, double x, double kappa = 1.0);

/// Self-consistency of the integral representation
///   v(x) = v(x0) + (e^{omega (x - x0)} - 1) v'(x0) / omega
///          - (1/omega) integral_{x0}^{x} (e^{omega (x - theta)} - 1)
///                                        (v_+ * K)(theta) d theta
/// recomputed from an anchor node against the stored v, with per-node
/// tolerance 100 h (1 + e^{omega x}); the polluted right tail is skipped.
struct ReconstructionReport {
    int anchor_index = 0;
    double max_deviation = 0.0;
    double max_tolerance_ratio = 0.0;  ///< max over nodes of deviation / tolerance
    bool pass = false;
};
ReconstructionReport reconstruct_from_anchor(const WaveProfile& profile,
                                             int anchor_index);

/// Two-sided envelope check on the slope: w >= kappa e^{omega x} - tol on
/// nodes x < 0 and w <= kappa e^{omega x} + tol on nodes 0 <= x <=
/// excluded_tail_from, with tol = 1e-6 + 10 h^2.  Also records
/// w(X_max) / e^{omega X_max}, which drops below kappa for integrable
/// kernels (no lower envelope constant survives at +infinity).
struct ExponentialBoundReport {
    bool lower_pass = false;
    bool upper_pass = false;
    double max_lower_violation = 0.0;
    double max_upper_violation = 0.0;
    double tolerance = 0.0;
    double ratio_at_xmax = 0.0;  ///< w(X_max) e^{-omega X_max}
    bool ratio_below_kappa = false;
    double excluded_from = 0.0;
};
ExponentialBoundReport check_exponential_bounds(const WaveProfile& profile);

/// Scans the slope for negativity and, when the closed form applies
/// (c = 1, omega = 1, step kernel with height Lambda > 0 and
/// Lambda (e^R (e^R - 1) - R) < 1), evaluates
///   L = ln( (1 + Lambda (e^R + R - 1)) / (Lambda (e^R - e^{-R})) )
/// and asserts w > 0 at all nodes <= L.
struct MonotonicityReport {
    int first_negative_index = -1;  ///< -1 when w >= 0 at every node
    double first_negative_x = 0.0;  ///< meaningful when index >= 0
    double min_w = 0.0;
    bool closed_form_available = false;
    double precondition_value = 0.0;  ///< Lambda (e^R (e^R - 1) - R)
    double L = 0.0;                   ///< meaningful when closed form available
    bool positive_up_to_L = false;    ///< meaningful when closed form available
};
MonotonicityReport monotonicity_analysis(const WaveProfile& profile);

/// One-sided divergence probe: requires X_max >= 5/omega (rescaled);
/// reports the finite left limit, checks |v| nondecreasing over the last
/// tenth of the nodes and v(X_max) > 10 |left limit| + 1, and flags the
/// degenerate everywhere-zero profile.
struct DivergenceReport {
    double v_at_xmax = 0.0;
    double left_limit = 0.0;
    bool increasing_tail = false;
    bool exceeds_threshold = false;
    bool degenerate_constant = false;
    bool pass = false;
};
DivergenceReport divergence_probe(const WaveProfile& profile);

}  // namespace pyrofront
