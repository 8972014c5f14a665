#pragma once

#include "pyrofront/grid.hpp"
#include "pyrofront/kernel.hpp"

namespace pyrofront {

/// Composite trapezoid rule for the field between two node indices
/// (inclusive); from_index == to_index integrates an empty interval (0).
double trapezoid(const Field& field, int from_index, int to_index);

/// Running trapezoidal antiderivative F with F(anchor) = 0 exactly.
/// Node i holds the signed integral from x(anchor) to x(i); built from a
/// single left-to-right prefix-sum pass so the result is deterministic.
Field cumulative_from_anchor(const Field& field, int anchor_index);

/// (v_+ * K)(x_i) on the field's own grid: the positive part of the field,
/// extended by its boundary values outside the grid, convolved against the
/// kernel by trapezoid over the support window [x_i - R, x_i + R].
///
/// The window endpoints always sit at offset exactly +-R, where the kernel's
/// one-sided inside limit is used; when R is not a whole number of grid
/// steps the two fractional endpoint samples interpolate the field linearly
/// before taking the positive part.  Requires R >= h (the window must
/// contain at least one interior node); an idealized point-mass kernel
/// returns the positive part itself.
Field convolve_plus(const Field& field, const Kernel& kernel);

/// (v * K)(x_i): same window quadrature as convolve_plus but without the
/// positive-part clipping, for signed integrands such as difference fields.
/// An idealized point-mass kernel returns a copy of the field itself.
Field convolve(const Field& field, const Kernel& kernel);

}  // namespace pyrofront
