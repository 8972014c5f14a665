#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace pyrofront {

/// A caller passed an out-of-contract value (bad index, mismatched grids, ...).
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A run was configured inconsistently (CFL violated, kernel unresolvable, ...).
struct ConfigurationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A computation produced non-finite values where none are admissible.
struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reading or writing a file failed.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Uniform 1-D sample grid; node i sits at x_min + i*h.
struct Grid1D {
    double x_min = 0.0;
    double x_max = 1.0;
    int n_points = 2;

    double h() const { return (x_max - x_min) / (n_points - 1); }
    double x(int i) const { return x_min + i * h(); }

    void validate() const {
        if (n_points < 2) throw ArgumentError("Grid1D: n_points must be >= 2");
        if (!(x_min < x_max)) throw ArgumentError("Grid1D: requires x_min < x_max");
    }

    /// Index of the node nearest to x.
    int nearest_index(double xq) const {
        double t = (xq - x_min) / h();
        int i = static_cast<int>(std::lround(t));
        if (i < 0) i = 0;
        if (i >= n_points) i = n_points - 1;
        return i;
    }

    /// Index of the node at x, requiring x to lie on the grid (relative snap 1e-9*h).
    int index_of(double xq) const {
        int i = nearest_index(xq);
        if (std::abs(x(i) - xq) > 1e-9 * (std::abs(h()) + std::abs(xq)))
            throw ArgumentError("Grid1D: x=" + std::to_string(xq) + " is not a grid node");
        return i;
    }

    bool operator==(const Grid1D&) const = default;
};

/// Real-valued samples on a Grid1D.
struct Field {
    Grid1D grid;
    std::vector<double> values;

    Field() = default;
    Field(Grid1D g, std::vector<double> v) : grid(g), values(std::move(v)) {
        if (static_cast<int>(values.size()) != grid.n_points)
            throw ArgumentError("Field: values length must equal grid.n_points");
    }
    /// Zero field on g.
    explicit Field(Grid1D g) : grid(g), values(static_cast<size_t>(g.n_points), 0.0) {}

    double operator[](int i) const { return values[static_cast<size_t>(i)]; }
    double& operator[](int i) { return values[static_cast<size_t>(i)]; }
    int size() const { return grid.n_points; }

    /// Value at arbitrary x by linear interpolation, clamped to the end values
    /// outside [x_min, x_max] (constant extension).
    double interpolate(double xq) const {
        const double h = grid.h();
        double t = (xq - grid.x_min) / h;
        if (t <= 0.0) return values.front();
        if (t >= grid.n_points - 1) return values.back();
        int j = static_cast<int>(t);
        double f = t - j;
        return (1.0 - f) * values[static_cast<size_t>(j)] + f * values[static_cast<size_t>(j) + 1];
    }

    bool all_finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

/// Build the sample field of a callable on a grid.
template <class F>
Field sample(const Grid1D& g, F&& f) {
    Field out(g);
    for (int i = 0; i < g.n_points; ++i) out[i] = f(g.x(i));
    return out;
}

}  // namespace pyrofront
