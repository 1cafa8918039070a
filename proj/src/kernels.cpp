#include "pedyn/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace pedyn::kernels {

namespace scalar {

double dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        y[i] += alpha * x[i];
    }
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

void lerp_toward(double* w, const double* x, double coeff, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        w[i] += coeff * (x[i] - w[i]);
    }
}

void adadelta_step(double* theta, const double* grad, double* eg2, double* ed2,
                   double rho, double eps, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double g = grad[i];
        eg2[i] = rho * eg2[i] + (1.0 - rho) * g * g;
        const double d = -std::sqrt(ed2[i] + eps) / std::sqrt(eg2[i] + eps) * g;
        ed2[i] = rho * ed2[i] + (1.0 - rho) * d * d;
        theta[i] += d;
    }
}

} // namespace scalar

namespace {

struct Dispatch {
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    double (*sum_sq_diff)(const double*, const double*, std::size_t);
    void (*lerp_toward)(double*, const double*, double, std::size_t);
    void (*adadelta_step)(double*, const double*, double*, double*, double, double, std::size_t);
};

constexpr Dispatch kScalar = {
    &scalar::dot, &scalar::axpy, &scalar::sum_sq_diff,
    &scalar::lerp_toward, &scalar::adadelta_step,
};

constexpr Dispatch kAvx2 = {
    &avx2::dot, &avx2::axpy, &avx2::sum_sq_diff,
    &avx2::lerp_toward, &avx2::adadelta_step,
};

bool cpu_runs_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

struct State {
    Backend backend;
    const Dispatch* table;
};

State initial_state() {
    Backend picked = avx2_available() ? Backend::avx2 : Backend::scalar;
    if (const char* env = std::getenv("PEDYN_KERNELS")) {
        const std::string want(env);
        if (want == "scalar") {
            picked = Backend::scalar;
        } else if (want == "avx2") {
            if (!avx2_available()) {
                throw std::runtime_error(
                    "PEDYN_KERNELS=avx2 but AVX2 kernels are not available");
            }
            picked = Backend::avx2;
        } else {
            throw std::runtime_error(
                "PEDYN_KERNELS must be \"scalar\" or \"avx2\", got \"" + want + "\"");
        }
    }
    return {picked, picked == Backend::avx2 ? &kAvx2 : &kScalar};
}

State& state() {
    static State s = initial_state();
    return s;
}

} // namespace

bool avx2_available() {
    return avx2::compiled() && cpu_runs_avx2();
}

Backend active_backend() {
    return state().backend;
}

const char* backend_name() {
    return state().backend == Backend::avx2 ? "avx2" : "scalar";
}

void set_backend(Backend b) {
    if (b == Backend::avx2 && !avx2_available()) {
        throw std::invalid_argument("AVX2 kernels are not available");
    }
    state() = {b, b == Backend::avx2 ? &kAvx2 : &kScalar};
}

double dot(const double* a, const double* b, std::size_t n) {
    return state().table->dot(a, b, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    state().table->axpy(alpha, x, y, n);
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
    return state().table->sum_sq_diff(a, b, n);
}

void lerp_toward(double* w, const double* x, double coeff, std::size_t n) {
    state().table->lerp_toward(w, x, coeff, n);
}

void adadelta_step(double* theta, const double* grad, double* eg2, double* ed2,
                   double rho, double eps, std::size_t n) {
    state().table->adadelta_step(theta, grad, eg2, ed2, rho, eps, n);
}

} // namespace pedyn::kernels
