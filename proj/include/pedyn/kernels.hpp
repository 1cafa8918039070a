#ifndef PEDYN_KERNELS_HPP
#define PEDYN_KERNELS_HPP

#include <cstddef>
#include <string>

namespace pedyn::kernels {

/// The inner loops of the library (network mat-vec, AdaDelta element
/// updates, codebook distances and pulls) run through these entry points.
/// Each has a scalar reference implementation and, on x86 builds, an AVX2
/// variant compiled in its own translation unit. The backend is picked once
/// at startup: the PEDYN_KERNELS environment variable ("scalar" or "avx2")
/// wins if set, otherwise the CPU is probed.

enum class Backend { scalar, avx2 };

/// Backend currently routing the kernel calls.
Backend active_backend();

/// Name of the active backend, "scalar" or "avx2".
const char* backend_name();

/// True when this build carries the AVX2 kernels and the CPU runs them.
bool avx2_available();

/// Force a backend. Throws std::invalid_argument if the backend is not
/// available in this build or on this CPU. Intended for tests and for the
/// PEDYN_KERNELS override.
void set_backend(Backend b);

/// Sum of a[i]*b[i].
double dot(const double* a, const double* b, std::size_t n);

/// y[i] += alpha * x[i].
void axpy(double alpha, const double* x, double* y, std::size_t n);

/// Sum of (a[i]-b[i])^2.
double sum_sq_diff(const double* a, const double* b, std::size_t n);

/// w[i] += coeff * (x[i] - w[i]). Codebook pull toward a sample.
void lerp_toward(double* w, const double* x, double coeff, std::size_t n);

/// One AdaDelta update per element:
///   eg2 = rho*eg2 + (1-rho)*g^2
///   d   = -sqrt(ed2+eps)/sqrt(eg2+eps) * g
///   ed2 = rho*ed2 + (1-rho)*d^2
///   theta += d
void adadelta_step(double* theta, const double* grad, double* eg2, double* ed2,
                   double rho, double eps, std::size_t n);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double sum_sq_diff(const double* a, const double* b, std::size_t n);
void lerp_toward(double* w, const double* x, double coeff, std::size_t n);
void adadelta_step(double* theta, const double* grad, double* eg2, double* ed2,
                   double rho, double eps, std::size_t n);
} // namespace scalar

namespace avx2 {
/// True when this translation unit was built with AVX2 code generation.
/// When false the functions below are stubs that throw std::runtime_error.
bool compiled();
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double sum_sq_diff(const double* a, const double* b, std::size_t n);
void lerp_toward(double* w, const double* x, double coeff, std::size_t n);
void adadelta_step(double* theta, const double* grad, double* eg2, double* ed2,
                   double rho, double eps, std::size_t n);
} // namespace avx2

} // namespace pedyn::kernels

#endif // PEDYN_KERNELS_HPP
