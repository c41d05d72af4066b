// Compiled with -mavx512f -mfma. Nothing here may be called unless the
// dispatcher has confirmed CPU support.

#include "smad/kernels/dense.hpp"

#include <immintrin.h>

#include <algorithm>

namespace smad::kernels::avx512 {

namespace {

inline __mmask8 lanes_mask(std::size_t lanes) {
    return lanes >= 8 ? static_cast<__mmask8>(0xFF) : static_cast<__mmask8>((1u << lanes) - 1u);
}

// Accumulates an R x (8 V) tile of C; when Masked only `width` columns are touched.
template <int R, int V, bool Masked>
inline void tile(const double* a, std::size_t rs, std::size_t cs, const double* b, double* c, std::size_t k,
                 std::size_t m, std::size_t width, bool accumulate) {
    __mmask8 mask[V];
#pragma GCC unroll 2
    for (int v = 0; v < V; ++v) {
        const std::size_t offset = 8 * static_cast<std::size_t>(v);
        mask[v] = Masked ? lanes_mask(width > offset ? width - offset : 0) : static_cast<__mmask8>(0xFF);
    }
    __m512d acc[R][V];
#pragma GCC unroll 8
    for (int r = 0; r < R; ++r) {
#pragma GCC unroll 2
        for (int v = 0; v < V; ++v) {
            acc[r][v] = accumulate ? _mm512_maskz_loadu_pd(mask[v], c + r * m + 8 * v) : _mm512_setzero_pd();
        }
    }
    for (std::size_t p = 0; p < k; ++p) {
        __m512d bv[V];
#pragma GCC unroll 2
        for (int v = 0; v < V; ++v) {
            bv[v] = Masked ? _mm512_maskz_loadu_pd(mask[v], b + p * m + 8 * v) : _mm512_loadu_pd(b + p * m + 8 * v);
        }
#pragma GCC unroll 8
        for (int r = 0; r < R; ++r) {
            const __m512d scale = _mm512_set1_pd(a[r * rs + p * cs]);
#pragma GCC unroll 2
            for (int v = 0; v < V; ++v) {
                acc[r][v] = _mm512_fmadd_pd(scale, bv[v], acc[r][v]);
            }
        }
    }
#pragma GCC unroll 8
    for (int r = 0; r < R; ++r) {
#pragma GCC unroll 2
        for (int v = 0; v < V; ++v) {
            _mm512_mask_storeu_pd(c + r * m + 8 * v, mask[v], acc[r][v]);
        }
    }
}

template <int R>
inline void row_block(const double* a, std::size_t rs, std::size_t cs, const double* b, double* c, std::size_t k,
                      std::size_t m, bool accumulate) {
    std::size_t j = 0;
    for (; j + 16 <= m; j += 16) {
        tile<R, 2, false>(a, rs, cs, b + j, c + j, k, m, 16, accumulate);
    }
    if (m - j > 8) {
        tile<R, 2, true>(a, rs, cs, b + j, c + j, k, m, m - j, accumulate);
    } else if (m - j == 8) {
        tile<R, 1, false>(a, rs, cs, b + j, c + j, k, m, 8, accumulate);
    } else if (j < m) {
        tile<R, 1, true>(a, rs, cs, b + j, c + j, k, m, m - j, accumulate);
    }
}

// Same construction as the AVX2 variant; 2^k is applied with scalef.
inline __m512d expm1_nonnegative(__m512d y) {
    const __m512d k = _mm512_roundscale_pd(_mm512_mul_pd(y, _mm512_set1_pd(1.4426950408889634074)),
                                           _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m512d r = _mm512_fnmadd_pd(k, _mm512_set1_pd(6.93147180369123816490e-01), y);
    r = _mm512_fnmadd_pd(k, _mm512_set1_pd(1.90821492927058770002e-10), r);
    const __m512d r2 = _mm512_mul_pd(r, r);

    __m512d even = _mm512_set1_pd(1.0 / 6227020800.0);
    even = _mm512_fmadd_pd(even, r2, _mm512_set1_pd(1.0 / 39916800.0));
    even = _mm512_fmadd_pd(even, r2, _mm512_set1_pd(1.0 / 362880.0));
    even = _mm512_fmadd_pd(even, r2, _mm512_set1_pd(1.0 / 5040.0));
    even = _mm512_fmadd_pd(even, r2, _mm512_set1_pd(1.0 / 120.0));
    even = _mm512_fmadd_pd(even, r2, _mm512_set1_pd(1.0 / 6.0));
    even = _mm512_fmadd_pd(even, r2, _mm512_set1_pd(1.0));
    __m512d odd = _mm512_set1_pd(1.0 / 479001600.0);
    odd = _mm512_fmadd_pd(odd, r2, _mm512_set1_pd(1.0 / 3628800.0));
    odd = _mm512_fmadd_pd(odd, r2, _mm512_set1_pd(1.0 / 40320.0));
    odd = _mm512_fmadd_pd(odd, r2, _mm512_set1_pd(1.0 / 720.0));
    odd = _mm512_fmadd_pd(odd, r2, _mm512_set1_pd(1.0 / 24.0));
    odd = _mm512_fmadd_pd(odd, r2, _mm512_set1_pd(1.0 / 2.0));
    const __m512d q = _mm512_mul_pd(r, _mm512_fmadd_pd(odd, r, even));

    const __m512d one = _mm512_set1_pd(1.0);
    const __m512d scale = _mm512_scalef_pd(one, k);
    return _mm512_fmadd_pd(scale, q, _mm512_sub_pd(scale, one));
}

inline __m512d tanh8(__m512d x) {
    const __m512d ax = _mm512_min_pd(_mm512_abs_pd(x), _mm512_set1_pd(22.0));
    const __m512d em = expm1_nonnegative(_mm512_add_pd(ax, ax));
    const __m512d t = _mm512_div_pd(em, _mm512_add_pd(em, _mm512_set1_pd(2.0)));
    // copy the sign of x onto t
    const __m512i sign =
        _mm512_and_si512(_mm512_castpd_si512(x), _mm512_set1_epi64(static_cast<long long>(1ULL << 63)));
    return _mm512_castsi512_pd(_mm512_or_si512(_mm512_castpd_si512(t), sign));
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
            const __m512d scale = _mm512_set1_pd(b[p]);
            for (std::size_t i = 0; i < n; i += 8) {
                const __mmask8 mask = lanes_mask(n - i);
                const __m512d updated =
                    _mm512_fmadd_pd(scale, _mm512_maskz_loadu_pd(mask, row + i), _mm512_maskz_loadu_pd(mask, c + i));
                _mm512_mask_storeu_pd(c + i, mask, updated);
            }
        }
        return;
    }
    std::size_t i = 0;
    for (; i + 6 <= n; i += 6) {
        row_block<6>(a + i * rs, rs, cs, b, c + i * m, k, m, accumulate);
    }
    const double* rest = a + i * rs;
    double* out = c + i * m;
    switch (n - i) {
    case 5:
        row_block<5>(rest, rs, cs, b, out, k, m, accumulate);
        break;
    case 4:
        row_block<4>(rest, rs, cs, b, out, k, m, accumulate);
        break;
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
        for (std::size_t j = 0; j < m; j += 8) {
            const __mmask8 mask = lanes_mask(m - j);
            const __m512d sum =
                _mm512_add_pd(_mm512_maskz_loadu_pd(mask, row + j), _mm512_maskz_loadu_pd(mask, bias + j));
            _mm512_mask_storeu_pd(row + j, mask, sum);
        }
    }
}

void column_sums(const double* a, std::size_t n, std::size_t m, double* out) {
    for (std::size_t j = 0; j < m; j += 8) {
        const __mmask8 mask = lanes_mask(m - j);
        __m512d acc = _mm512_setzero_pd();
        for (std::size_t i = 0; i < n; ++i) {
            acc = _mm512_add_pd(acc, _mm512_maskz_loadu_pd(mask, a + i * m + j));
        }
        _mm512_mask_storeu_pd(out + j, mask, acc);
    }
}

void tanh_inplace(double* x, std::size_t count) {
    for (std::size_t i = 0; i < count; i += 8) {
        const __mmask8 mask = lanes_mask(count - i);
        _mm512_mask_storeu_pd(x + i, mask, tanh8(_mm512_maskz_loadu_pd(mask, x + i)));
    }
}

void tanh_backward(double* grad, const double* t, std::size_t count) {
    const __m512d one = _mm512_set1_pd(1.0);
    for (std::size_t i = 0; i < count; i += 8) {
        const __mmask8 mask = lanes_mask(count - i);
        const __m512d tv = _mm512_maskz_loadu_pd(mask, t + i);
        const __m512d derivative = _mm512_fnmadd_pd(tv, tv, one);
        _mm512_mask_storeu_pd(grad + i, mask, _mm512_mul_pd(_mm512_maskz_loadu_pd(mask, grad + i), derivative));
    }
}

double dot(const double* x, const double* y, std::size_t count) {
    __m512d acc0 = _mm512_setzero_pd();
    __m512d acc1 = _mm512_setzero_pd();
    std::size_t i = 0;
    for (; i + 16 <= count; i += 16) {
        acc0 = _mm512_fmadd_pd(_mm512_loadu_pd(x + i), _mm512_loadu_pd(y + i), acc0);
        acc1 = _mm512_fmadd_pd(_mm512_loadu_pd(x + i + 8), _mm512_loadu_pd(y + i + 8), acc1);
    }
    for (; i < count; i += 8) {
        const __mmask8 mask = lanes_mask(count - i);
        acc0 = _mm512_fmadd_pd(_mm512_maskz_loadu_pd(mask, x + i), _mm512_maskz_loadu_pd(mask, y + i), acc0);
    }
    return _mm512_reduce_add_pd(_mm512_add_pd(acc0, acc1));
}

} // namespace smad::kernels::avx512
