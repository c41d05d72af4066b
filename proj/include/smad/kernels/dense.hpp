#pragma once

// Dense double-precision kernels behind the MLP. Every kernel has a scalar
// reference implementation plus AVX2+FMA and AVX-512 implementations; the
// active backend is the widest one the CPU supports and can be overridden (for
// tests, or via SMAD_KERNELS=scalar|avx2|avx512). Results agree between backends
// to rounding, not bit for bit: FMA contraction and lane-wise accumulation
// reorder the sums.

#include <cstddef>
#include <string_view>

namespace smad::kernels {

enum class Backend { Scalar, Avx2, Avx512 };

std::string_view to_string(Backend backend);
/// Throws std::invalid_argument for an unknown name.
Backend parse_backend(std::string_view name);
bool backend_available(Backend backend) noexcept;
Backend active_backend() noexcept;
/// Throws std::runtime_error when the CPU lacks the backend.
void set_backend(Backend backend);

/// C[n x m] = A[n x k] * B[k x m]   (accumulate: C += A * B)
/// A is addressed as a[i * a_row_stride + p * a_col_stride], so passing
/// (1, lda) reads A transposed. B and C are dense row-major.
void matmul(const double* a, std::size_t a_row_stride, std::size_t a_col_stride, const double* b, double* c,
            std::size_t n, std::size_t k, std::size_t m, bool accumulate);

/// c[i, j] += bias[j] for an n x m row-major matrix.
void add_row_bias(double* c, const double* bias, std::size_t n, std::size_t m);

/// out[j] = sum_i a[i, j]
void column_sums(const double* a, std::size_t n, std::size_t m, double* out);

void tanh_inplace(double* x, std::size_t count);

/// grad[i] *= 1 - t[i]^2
void tanh_backward(double* grad, const double* t, std::size_t count);

double dot(const double* x, const double* y, std::size_t count);

/// Direct entry points, used by the equivalence tests.
namespace scalar {
void matmul(const double* a, std::size_t rs, std::size_t cs, const double* b, double* c, std::size_t n, std::size_t k,
            std::size_t m, bool accumulate);
void add_row_bias(double* c, const double* bias, std::size_t n, std::size_t m);
void column_sums(const double* a, std::size_t n, std::size_t m, double* out);
void tanh_inplace(double* x, std::size_t count);
void tanh_backward(double* grad, const double* t, std::size_t count);
double dot(const double* x, const double* y, std::size_t count);
} // namespace scalar

namespace avx2 {
void matmul(const double* a, std::size_t rs, std::size_t cs, const double* b, double* c, std::size_t n, std::size_t k,
            std::size_t m, bool accumulate);
void add_row_bias(double* c, const double* bias, std::size_t n, std::size_t m);
void column_sums(const double* a, std::size_t n, std::size_t m, double* out);
void tanh_inplace(double* x, std::size_t count);
void tanh_backward(double* grad, const double* t, std::size_t count);
double dot(const double* x, const double* y, std::size_t count);
} // namespace avx2

namespace avx512 {
void matmul(const double* a, std::size_t rs, std::size_t cs, const double* b, double* c, std::size_t n, std::size_t k,
            std::size_t m, bool accumulate);
void add_row_bias(double* c, const double* bias, std::size_t n, std::size_t m);
void column_sums(const double* a, std::size_t n, std::size_t m, double* out);
void tanh_inplace(double* x, std::size_t count);
void tanh_backward(double* grad, const double* t, std::size_t count);
double dot(const double* x, const double* y, std::size_t count);
} // namespace avx512

} // namespace smad::kernels
