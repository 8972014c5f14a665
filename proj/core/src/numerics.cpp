#include "pyrofront/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace pyrofront {

double trapezoid(const Field& field, int from_index, int to_index) {
    const int n = field.size();
    if (from_index < 0 || to_index >= n || from_index > to_index)
        throw ArgumentError("trapezoid: index range out of bounds");
    if (from_index == to_index) return 0.0;
    const double h = field.grid.h();
    double sum = 0.5 * field[from_index];
    for (int i = from_index + 1; i < to_index; ++i) sum += field[i];
    sum += 0.5 * field[to_index];
    return h * sum;
}

Field cumulative_from_anchor(const Field& field, int anchor_index) {
    const int n = field.size();
    if (anchor_index < 0 || anchor_index >= n)
        throw ArgumentError("cumulative_from_anchor: anchor out of bounds");
    const double h = field.grid.h();
    std::vector<double> prefix(n);
    prefix[0] = 0.0;
    for (int i = 1; i < n; ++i)
        prefix[i] = prefix[i - 1] + 0.5 * h * (field[i - 1] + field[i]);
    const double at_anchor = prefix[anchor_index];
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = prefix[i] - at_anchor;
    out[anchor_index] = 0.0;
    return Field(field.grid, std::move(out));
}

namespace {

// Shared window quadrature for both convolution flavors.  ClipPositive
// selects (f)_+ sampling; the linear flavor uses f itself.
template <bool ClipPositive>
Field conv_impl(const Field& field, const Kernel& kernel) {
    const int n = field.size();
    const double h = field.grid.h();

    std::vector<double> samples(n);
    for (int i = 0; i < n; ++i)
        samples[i] = ClipPositive ? std::max(field[i], 0.0) : field[i];

    if (kernel.is_zero()) return Field(field.grid);

    const double m_real = kernel.R / h;
    const bool integer_window = std::abs(m_real - std::round(m_real)) < 1e-9;
    const int m_whole = integer_window ? static_cast<int>(std::llround(m_real))
                                       : static_cast<int>(std::floor(m_real));
    if (m_whole < 1)
        throw ConfigurationError("convolution: kernel support radius is below the grid spacing");

    const auto clamp = [n](int i) { return std::clamp(i, 0, n - 1); };
    const double edge = kernel.support_edge_value();
    std::vector<double> out(n);

    if (integer_window) {
        // window nodes at offsets d*h, d = -m..m; endpoints carry the inside
        // limit of the kernel and half trapezoid weight
        std::vector<double> coeff(2 * m_whole + 1);
        for (int d = -m_whole; d <= m_whole; ++d) {
            const double kv = (std::abs(d) == m_whole) ? edge : kernel.value(d * h);
            const double w = (std::abs(d) == m_whole) ? 0.5 * h : h;
            coeff[d + m_whole] = w * kv;
        }
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int d = -m_whole; d <= m_whole; ++d)
                acc += coeff[d + m_whole] * samples[clamp(i + d)];
            out[i] = acc;
        }
    } else {
        // fractional window: interior nodes at offsets d*h, |d| <= m_whole,
        // plus two off-grid endpoint samples at offsets exactly -R and +R
        const double frac = kernel.R - m_whole * h;  // in (0, h)
        const double t = frac / h;
        std::vector<double> coeff(2 * m_whole + 1);
        for (int d = -m_whole; d <= m_whole; ++d) {
            const double w = (std::abs(d) == m_whole) ? 0.5 * (h + frac) : h;
            coeff[d + m_whole] = w * kernel.value(d * h);
        }
        const double endpoint_coeff = 0.5 * frac * edge;
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int d = -m_whole; d <= m_whole; ++d)
                acc += coeff[d + m_whole] * samples[clamp(i + d)];
            // the field is interpolated linearly to x_i -+ R before any clipping
            double v_left =
                field[clamp(i - m_whole - 1)] * t + field[clamp(i - m_whole)] * (1.0 - t);
            double v_right =
                field[clamp(i + m_whole)] * (1.0 - t) + field[clamp(i + m_whole + 1)] * t;
            if (ClipPositive) {
                v_left = std::max(v_left, 0.0);
                v_right = std::max(v_right, 0.0);
            }
            acc += endpoint_coeff * (v_left + v_right);
            out[i] = acc;
        }
    }
    return Field(field.grid, std::move(out));
}

}  // namespace

Field convolve_plus(const Field& field, const Kernel& kernel) {
    if (kernel.is_dirac()) {
        Field out(field.grid);
        for (int i = 0; i < field.size(); ++i) out[i] = std::max(field[i], 0.0);
        return out;
    }
    return conv_impl<true>(field, kernel);
}

Field convolve(const Field& field, const Kernel& kernel) {
    if (kernel.is_dirac()) return field;
    return conv_impl<false>(field, kernel);
}

}  // namespace pyrofront
