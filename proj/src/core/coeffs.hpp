#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace sldg::core {

/// Modal coefficient matrix: one column per cell/element, dof_per_cell rows.
/// Column j holds the modal expansion of the field on element j.
struct DGCoefficients {
    int dof = 0;
    int n_elems = 0;
    std::vector<double> data; // column-major: data[m + dof*j]

    DGCoefficients() = default;
    DGCoefficients(int dof_, int n_) : dof(dof_), n_elems(n_), data(static_cast<size_t>(dof_) * n_, 0.0) {}

    double& operator()(int m, int j) { return data[m + static_cast<size_t>(dof) * j]; }
    double operator()(int m, int j) const { return data[m + static_cast<size_t>(dof) * j]; }

    const double* col(int j) const { return data.data() + static_cast<size_t>(dof) * j; }
    double* col(int j) { return data.data() + static_cast<size_t>(dof) * j; }

    void set_zero() { std::fill(data.begin(), data.end(), 0.0); }

    bool all_finite() const {
        for (double v : data)
            if (!std::isfinite(v)) return false;
        return true;
    }

    DGCoefficients& axpy(double a, const DGCoefficients& x) {
        if (x.data.size() != data.size()) throw std::invalid_argument("axpy: shape mismatch");
        for (size_t i = 0; i < data.size(); ++i) data[i] += a * x.data[i];
        return *this;
    }

    DGCoefficients& scale(double a) {
        for (double& v : data) v *= a;
        return *this;
    }
};

} // namespace sldg::core
