#include "pedyn/kernels.hpp"

#include <cmath>
#include <stdexcept>

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace pedyn::kernels::avx2 {

bool compiled() { return true; }

namespace {

double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

} // namespace

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    }
    double out = hsum(acc);
    for (; i < n; ++i) {
        out += a[i] * b[i];
    }
    return out;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) {
        y[i] += alpha * x[i];
    }
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double out = hsum(acc);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        out += d * d;
    }
    return out;
}

void lerp_toward(double* w, const double* x, double coeff, std::size_t n) {
    const __m256d vc = _mm256_set1_pd(coeff);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vw = _mm256_loadu_pd(w + i);
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), vw);
        vw = _mm256_fmadd_pd(vc, d, vw);
        _mm256_storeu_pd(w + i, vw);
    }
    for (; i < n; ++i) {
        w[i] += coeff * (x[i] - w[i]);
    }
}

void adadelta_step(double* theta, const double* grad, double* eg2, double* ed2,
                   double rho, double eps, std::size_t n) {
    const __m256d vrho = _mm256_set1_pd(rho);
    const __m256d vone_m_rho = _mm256_set1_pd(1.0 - rho);
    const __m256d veps = _mm256_set1_pd(eps);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d g = _mm256_loadu_pd(grad + i);
        __m256d vg2 = _mm256_loadu_pd(eg2 + i);
        vg2 = _mm256_fmadd_pd(vone_m_rho, _mm256_mul_pd(g, g), _mm256_mul_pd(vrho, vg2));
        _mm256_storeu_pd(eg2 + i, vg2);

        __m256d vd2 = _mm256_loadu_pd(ed2 + i);
        const __m256d num = _mm256_sqrt_pd(_mm256_add_pd(vd2, veps));
        const __m256d den = _mm256_sqrt_pd(_mm256_add_pd(vg2, veps));
        const __m256d d = _mm256_sub_pd(_mm256_setzero_pd(),
                                        _mm256_mul_pd(_mm256_div_pd(num, den), g));

        vd2 = _mm256_fmadd_pd(vone_m_rho, _mm256_mul_pd(d, d), _mm256_mul_pd(vrho, vd2));
        _mm256_storeu_pd(ed2 + i, vd2);

        __m256d vt = _mm256_loadu_pd(theta + i);
        _mm256_storeu_pd(theta + i, _mm256_add_pd(vt, d));
    }
    for (; i < n; ++i) {
        const double g = grad[i];
        eg2[i] = rho * eg2[i] + (1.0 - rho) * g * g;
        const double d = -std::sqrt(ed2[i] + eps) / std::sqrt(eg2[i] + eps) * g;
        ed2[i] = rho * ed2[i] + (1.0 - rho) * d * d;
        theta[i] += d;
    }
}

} // namespace pedyn::kernels::avx2

#else

namespace pedyn::kernels::avx2 {

bool compiled() { return false; }

namespace {
[[noreturn]] void unavailable() {
    throw std::runtime_error("AVX2 kernels were not compiled into this build");
}
} // namespace

double dot(const double*, const double*, std::size_t) { unavailable(); }
void axpy(double, const double*, double*, std::size_t) { unavailable(); }
double sum_sq_diff(const double*, const double*, std::size_t) { unavailable(); }
void lerp_toward(double*, const double*, double, std::size_t) { unavailable(); }
void adadelta_step(double*, const double*, double*, double*, double, double, std::size_t) {
    unavailable();
}

} // namespace pedyn::kernels::avx2

#endif
