// Compiled with -mavx2 -mfma. Nothing here may be called unless the dispatcher
// has confirmed CPU support.

#include "smad/kernels/dense.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cstdint>

namespace smad::kernels::avx2 {

namespace {

inline __m256i tail_mask(std::size_t lanes) {
    alignas(32) static const std::int64_t table[8] = {-1, -1, -1, -1, 0, 0, 0, 0};
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(table + 4 - lanes));
}

inline double horizontal_sum(__m256d v) {
    const __m128d low = _mm256_castpd256_pd128(v);
    const __m128d high = _mm256_extractf128_pd(v, 1);
    const __m128d pair = _mm_add_pd(low, high);
    return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

// Accumulates an R x (4 V) tile of C; when Masked only `width` columns are touched.
template <int R, int V, bool Masked>
inline void tile(const double* a, std::size_t rs, std::size_t cs, const double* b, double* c, std::size_t k,
                 std::size_t m, std::size_t width, bool accumulate) {
    __m256i mask[V];
#pragma GCC unroll 2
    for (int v = 0; v < V; ++v) {
        const std::size_t offset = 4 * static_cast<std::size_t>(v);
        const std::size_t lanes = width > offset ? width - offset : 0;
        mask[v] = tail_mask(lanes > 4 ? 4 : lanes);
    }
    __m256d acc[R][V];
#pragma GCC unroll 4
    for (int r = 0; r < R; ++r) {
#pragma GCC unroll 2
        for (int v = 0; v < V; ++v) {
            if (!accumulate) {
                acc[r][v] = _mm256_setzero_pd();
            } else if constexpr (Masked) {
                acc[r][v] = _mm256_maskload_pd(c + r * m + 4 * v, mask[v]);
            } else {
                acc[r][v] = _mm256_loadu_pd(c + r * m + 4 * v);
            }
        }
    }
    for (std::size_t p = 0; p < k; ++p) {
        __m256d bv[V];
#pragma GCC unroll 2
        for (int v = 0; v < V; ++v) {
            if constexpr (Masked) {
                bv[v] = _mm256_maskload_pd(b + p * m + 4 * v, mask[v]);
            } else {
                bv[v] = _mm256_loadu_pd(b + p * m + 4 * v);
            }
        }
#pragma GCC unroll 4
        for (int r = 0; r < R; ++r) {
            const __m256d scale = _mm256_broadcast_sd(a + r * rs + p * cs);
#pragma GCC unroll 2
            for (int v = 0; v < V; ++v) {
                acc[r][v] = _mm256_fmadd_pd(scale, bv[v], acc[r][v]);
            }
        }
    }
#pragma GCC unroll 4
    for (int r = 0; r < R; ++r) {
#pragma GCC unroll 2
        for (int v = 0; v < V; ++v) {
            if constexpr (Masked) {
                _mm256_maskstore_pd(c + r * m + 4 * v, mask[v], acc[r][v]);
            } else {
                _mm256_storeu_pd(c + r * m + 4 * v, acc[r][v]);
            }
        }
    }
}

template <int R>
inline void row_block(const double* a, std::size_t rs, std::size_t cs, const double* b, double* c, std::size_t k,
                      std::size_t m, bool accumulate) {
    std::size_t j = 0;
    for (; j + 8 <= m; j += 8) {
        tile<R, 2, false>(a, rs, cs, b + j, c + j, k, m, 8, accumulate);
    }
    if (m - j > 4) {
        tile<R, 2, true>(a, rs, cs, b + j, c + j, k, m, m - j, accumulate);
    } else if (m - j == 4) {
        tile<R, 1, false>(a, rs, cs, b + j, c + j, k, m, 4, accumulate);
    } else if (j < m) {
        tile<R, 1, true>(a, rs, cs, b + j, c + j, k, m, m - j, accumulate);
    }
}

// expm1(y) for y in [0, 45]: y = k ln2 + r with |r| <= ln2/2, so
// expm1(y) = 2^k q(r) + (2^k - 1) where q(r) = e^r - 1 is a degree-13 Taylor
// polynomial. Its even and odd halves are evaluated as two independent chains.
inline __m256d expm1_nonnegative(__m256d y) {
    const __m256d inv_ln2 = _mm256_set1_pd(1.4426950408889634074);
    const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
    const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
    const __m256d k = _mm256_round_pd(_mm256_mul_pd(y, inv_ln2), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(k, ln2_hi, y);
    r = _mm256_fnmadd_pd(k, ln2_lo, r);
    const __m256d r2 = _mm256_mul_pd(r, r);

    // q(r) / r = sum_{j=0}^{12} r^j / (j+1)!
    __m256d even = _mm256_set1_pd(1.0 / 6227020800.0);
    even = _mm256_fmadd_pd(even, r2, _mm256_set1_pd(1.0 / 39916800.0));
    even = _mm256_fmadd_pd(even, r2, _mm256_set1_pd(1.0 / 362880.0));
    even = _mm256_fmadd_pd(even, r2, _mm256_set1_pd(1.0 / 5040.0));
    even = _mm256_fmadd_pd(even, r2, _mm256_set1_pd(1.0 / 120.0));
    even = _mm256_fmadd_pd(even, r2, _mm256_set1_pd(1.0 / 6.0));
    even = _mm256_fmadd_pd(even, r2, _mm256_set1_pd(1.0));
    __m256d odd = _mm256_set1_pd(1.0 / 479001600.0);
    odd = _mm256_fmadd_pd(odd, r2, _mm256_set1_pd(1.0 / 3628800.0));
    odd = _mm256_fmadd_pd(odd, r2, _mm256_set1_pd(1.0 / 40320.0));
    odd = _mm256_fmadd_pd(odd, r2, _mm256_set1_pd(1.0 / 720.0));
    odd = _mm256_fmadd_pd(odd, r2, _mm256_set1_pd(1.0 / 24.0));
    odd = _mm256_fmadd_pd(odd, r2, _mm256_set1_pd(1.0 / 2.0));
    const __m256d q = _mm256_mul_pd(r, _mm256_fmadd_pd(odd, r, even));

    const __m128i k32 = _mm256_cvtpd_epi32(k);
    __m256i bits = _mm256_cvtepi32_epi64(k32);
    bits = _mm256_slli_epi64(_mm256_add_epi64(bits, _mm256_set1_epi64x(1023)), 52);
    const __m256d scale = _mm256_castsi256_pd(bits);
    return _mm256_fmadd_pd(scale, q, _mm256_sub_pd(scale, _mm256_set1_pd(1.0)));
}

// tanh|x| = expm1(2|x|) / (expm1(2|x|) + 2), sign restored afterwards. Inputs
// beyond 22 are clamped; tanh(22) already rounds to 1.
inline __m256d tanh4(__m256d x) {
    const __m256d sign_bit = _mm256_set1_pd(-0.0);
    const __m256d ax = _mm256_min_pd(_mm256_andnot_pd(sign_bit, x), _mm256_set1_pd(22.0));
    const __m256d em = expm1_nonnegative(_mm256_add_pd(ax, ax));
    const __m256d t = _mm256_div_pd(em, _mm256_add_pd(em, _mm256_set1_pd(2.0)));
    return _mm256_or_pd(t, _mm256_and_pd(sign_bit, x));
}

} // namespace

void matmul(const double* a, std::size_t rs, std::size_t cs, const double* b, double* c, std::size_t n, std::size_t k,
            std::size_t m, bool accumulate) {
    if (m == 1 && cs == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            const double value = dot(a + i * rs, b, k);
            c[i] = accumulate ? c[i] + value : value;
        }
        return;
    }
    if (m == 1 && rs == 1) {
        if (!accumulate) {
            std::fill(c, c + n, 0.0);
        }
        for (std::size_t p = 0; p < k; ++p) {
            const double* row = a + p * cs;
            const __m256d scale = _mm256_set1_pd(b[p]);
            std::size_t i = 0;
            for (; i + 4 <= n; i += 4) {
                _mm256_storeu_pd(c + i, _mm256_fmadd_pd(scale, _mm256_loadu_pd(row + i), _mm256_loadu_pd(c + i)));
            }
            for (; i < n; ++i) {
                c[i] += b[p] * row[i];
            }
        }
        return;
    }
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        row_block<4>(a + i * rs, rs, cs, b, c + i * m, k, m, accumulate);
    }
    const double* rest = a + i * rs;
    double* out = c + i * m;
    switch (n - i) {
    case 3:
        row_block<3>(rest, rs, cs, b, out, k, m, accumulate);
        break;
    case 2:
        row_block<2>(rest, rs, cs, b, out, k, m, accumulate);
        break;
    case 1:
        row_block<1>(rest, rs, cs, b, out, k, m, accumulate);
        break;
    default:
        break;
    }
}

void add_row_bias(double* c, const double* bias, std::size_t n, std::size_t m) {
    for (std::size_t i = 0; i < n; ++i) {
        double* row = c + i * m;
        std::size_t j = 0;
        for (; j + 4 <= m; j += 4) {
            _mm256_storeu_pd(row + j, _mm256_add_pd(_mm256_loadu_pd(row + j), _mm256_loadu_pd(bias + j)));
        }
        for (; j < m; ++j) {
            row[j] += bias[j];
        }
    }
}

void column_sums(const double* a, std::size_t n, std::size_t m, double* out) {
    std::size_t j = 0;
    for (; j + 4 <= m; j += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t i = 0; i < n; ++i) {
            acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i * m + j));
        }
        _mm256_storeu_pd(out + j, acc);
    }
    for (; j < m; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sum += a[i * m + j];
        }
        out[j] = sum;
    }
}

void tanh_inplace(double* x, std::size_t count) {
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        _mm256_storeu_pd(x + i, tanh4(_mm256_loadu_pd(x + i)));
    }
    if (i < count) {
        const __m256i mask = tail_mask(count - i);
        _mm256_maskstore_pd(x + i, mask, tanh4(_mm256_maskload_pd(x + i, mask)));
    }
}

void tanh_backward(double* grad, const double* t, std::size_t count) {
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        const __m256d tv = _mm256_loadu_pd(t + i);
        const __m256d derivative = _mm256_fnmadd_pd(tv, tv, one);
        _mm256_storeu_pd(grad + i, _mm256_mul_pd(_mm256_loadu_pd(grad + i), derivative));
    }
    for (; i < count; ++i) {
        grad[i] *= 1.0 - t[i] * t[i];
    }
}

double dot(const double* x, const double* y, std::size_t count) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= count; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
    }
    double sum = horizontal_sum(_mm256_add_pd(acc0, acc1));
    for (; i < count; ++i) {
        sum += x[i] * y[i];
    }
    return sum;
}

} // namespace smad::kernels::avx2
