#include "trapgauss/kernels.hpp"

namespace trapgauss::kernels::scalar {

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double nrm2_sq(const double* x, std::size_t n) {
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void waxpby(double a, const double* x, double b, const double* y, double* w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) w[i] = a * x[i] + b * y[i];
}

void spmv_csr(const std::int32_t* row_ptr, const std::int32_t* cols, const double* vals,
              std::size_t nrows, const double* x, double* y) {
  for (std::size_t r = 0; r < nrows; ++r) {
    double s = 0;
    for (std::int32_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s += vals[k] * x[cols[k]];
    y[r] = s;
  }
}

}  // namespace trapgauss::kernels::scalar
