#include "trapgauss/kernels.hpp"

namespace trapgauss::kernels {

namespace {
Isa pick_default() {
#if defined(TRAPGAUSS_HAVE_AVX2)
  if (avx2_supported()) return Isa::Avx2;
#endif
  return Isa::Scalar;
}
Isa g_isa = pick_default();
}  // namespace

bool avx2_supported() {
#if defined(TRAPGAUSS_HAVE_AVX2) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() { return g_isa; }

void force_isa(Isa isa) {
  if (isa == Isa::Avx2 && !avx2_supported()) return;
  g_isa = isa;
}

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

#if defined(TRAPGAUSS_HAVE_AVX2)
#define TRAPGAUSS_DISPATCH(fn, ...) \
  return g_isa == Isa::Avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__)
#else
#define TRAPGAUSS_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

double dot(const double* x, const double* y, std::size_t n) { TRAPGAUSS_DISPATCH(dot, x, y, n); }
double nrm2_sq(const double* x, std::size_t n) { TRAPGAUSS_DISPATCH(nrm2_sq, x, n); }
void axpy(double a, const double* x, double* y, std::size_t n) {
  TRAPGAUSS_DISPATCH(axpy, a, x, y, n);
}
void scal(double a, double* x, std::size_t n) { TRAPGAUSS_DISPATCH(scal, a, x, n); }
void waxpby(double a, const double* x, double b, const double* y, double* w, std::size_t n) {
  TRAPGAUSS_DISPATCH(waxpby, a, x, b, y, w, n);
}
void spmv_csr(const std::int32_t* row_ptr, const std::int32_t* cols, const double* vals,
              std::size_t nrows, const double* x, double* y) {
  TRAPGAUSS_DISPATCH(spmv_csr, row_ptr, cols, vals, nrows, x, y);
}

#undef TRAPGAUSS_DISPATCH

}  // namespace trapgauss::kernels
