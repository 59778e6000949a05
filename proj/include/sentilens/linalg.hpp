#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace sentilens {

using Vec = std::vector<double>;

// Dense row-major matrix. Small enough to live in a std::vector; all the
// model tensors go through this type so the checkpoint writer can treat
// them uniformly.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

    double* row(int r) { return a.data() + static_cast<std::size_t>(r) * cols; }
    const double* row(int r) const { return a.data() + static_cast<std::size_t>(r) * cols; }

    double& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    double operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

    void zero() { std::fill(a.begin(), a.end(), 0.0); }
};

// The reduction order in these kernels is fixed by the source; `omp simd`
// lets the compiler vectorize them without global -ffast-math, and the
// lane order is frozen per build, so results are run-to-run identical.

inline double dot(const double* x, const double* y, int n) {
    double acc = 0.0;
#pragma omp simd reduction(+ : acc)
    for (int i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

inline double dot(const Vec& x, const Vec& y) {
    assert(x.size() == y.size());
    return dot(x.data(), y.data(), static_cast<int>(x.size()));
}

// y += a * x
inline void axpy(double a, const double* x, double* y, int n) {
#pragma omp simd
    for (int i = 0; i < n; ++i) y[i] += a * x[i];
}

inline void axpy(double a, const Vec& x, Vec& y) {
    assert(x.size() == y.size());
    axpy(a, x.data(), y.data(), static_cast<int>(x.size()));
}

// out += M x
inline void matvec_add(const Mat& m, const Vec& x, Vec& out) {
    assert(static_cast<int>(x.size()) == m.cols);
    assert(static_cast<int>(out.size()) == m.rows);
    for (int r = 0; r < m.rows; ++r) out[r] += dot(m.row(r), x.data(), m.cols);
}

// out += M^T y; iterates rows so the inner loop is a contiguous axpy.
inline void matvec_t_add(const Mat& m, const Vec& y, Vec& out) {
    assert(static_cast<int>(y.size()) == m.rows);
    assert(static_cast<int>(out.size()) == m.cols);
    for (int r = 0; r < m.rows; ++r) axpy(y[r], m.row(r), out.data(), m.cols);
}

// M += y x^T
inline void outer_add(Mat& m, const Vec& y, const Vec& x) {
    assert(static_cast<int>(y.size()) == m.rows);
    assert(static_cast<int>(x.size()) == m.cols);
    for (int r = 0; r < m.rows; ++r) axpy(y[r], x.data(), m.row(r), m.cols);
}

inline void add_scaled(Vec& y, const Vec& x, double a = 1.0) { axpy(a, x, y); }

// Stable on both tails.
inline double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

}  // namespace sentilens
