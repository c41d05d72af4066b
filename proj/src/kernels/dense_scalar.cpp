#include "smad/kernels/dense.hpp"

#include <cmath>

namespace smad::kernels::scalar {

void matmul(const double* a, std::size_t rs, std::size_t cs, const double* b, double* c, std::size_t n, std::size_t k,
            std::size_t m, bool accumulate) {
    for (std::size_t i = 0; i < n; ++i) {
        double* row = c + i * m;
        if (!accumulate) {
            for (std::size_t j = 0; j < m; ++j) {
                row[j] = 0.0;
            }
        }
        for (std::size_t p = 0; p < k; ++p) {
            const double scale = a[i * rs + p * cs];
            const double* b_row = b + p * m;
            for (std::size_t j = 0; j < m; ++j) {
                row[j] += scale * b_row[j];
            }
        }
    }
}

void add_row_bias(double* c, const double* bias, std::size_t n, std::size_t m) {
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            c[i * m + j] += bias[j];
        }
    }
}

void column_sums(const double* a, std::size_t n, std::size_t m, double* out) {
    for (std::size_t j = 0; j < m; ++j) {
        out[j] = 0.0;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            out[j] += a[i * m + j];
        }
    }
}

void tanh_inplace(double* x, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
        x[i] = std::tanh(x[i]);
    }
}

void tanh_backward(double* grad, const double* t, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
        grad[i] *= 1.0 - t[i] * t[i];
    }
}

double dot(const double* x, const double* y, std::size_t count) {
    double sum = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        sum += x[i] * y[i];
    }
    return sum;
}

} // namespace smad::kernels::scalar
