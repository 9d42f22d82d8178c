#pragma once
#include <cstddef>
#include <cstdint>

// Data-parallel kernels behind the eigensolver inner loops. Every kernel has a
// scalar reference implementation and (on x86-64 builds) an AVX2/FMA variant;
// the public entry points dispatch once, at first use, on runtime CPU support.
// Variants are equivalence-tested against the scalar reference.
namespace trapgauss::kernels {

enum class Isa { Scalar, Avx2 };

bool avx2_supported();
Isa active_isa();
// Test hook. Selecting Avx2 on a CPU without it is ignored.
void force_isa(Isa isa);
const char* isa_name(Isa isa);

double dot(const double* x, const double* y, std::size_t n);
double nrm2_sq(const double* x, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);     // y += a*x
void scal(double a, double* x, std::size_t n);
void waxpby(double a, const double* x, double b, const double* y, double* w, std::size_t n);
void spmv_csr(const std::int32_t* row_ptr, const std::int32_t* cols, const double* vals,
              std::size_t nrows, const double* x, double* y);

namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
double nrm2_sq(const double* x, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scal(double a, double* x, std::size_t n);
void waxpby(double a, const double* x, double b, const double* y, double* w, std::size_t n);
void spmv_csr(const std::int32_t* row_ptr, const std::int32_t* cols, const double* vals,
              std::size_t nrows, const double* x, double* y);
}  // namespace scalar

#if defined(TRAPGAUSS_HAVE_AVX2)
namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
double nrm2_sq(const double* x, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scal(double a, double* x, std::size_t n);
void waxpby(double a, const double* x, double b, const double* y, double* w, std::size_t n);
void spmv_csr(const std::int32_t* row_ptr, const std::int32_t* cols, const double* vals,
              std::size_t nrows, const double* x, double* y);
}  // namespace avx2
#endif

}  // namespace trapgauss::kernels
