#pragma once

#include <cstddef>

namespace fedrep::kernels {

// Dense row-major GEMM kernels. Each output element is a single serial dot
// product, so the OpenMP variants (which only split the row loop) are
// bit-identical to the serial references for any thread count. Tests assert
// that equality; the bench target compares their throughput.
//
// accumulate=false writes C, accumulate=true adds into C.

/// C[m x n] = (or +=) A[m x k] * B[k x n]
void gemm_nn_serial(const double* a, const double* b, double* c,
                    std::size_t m, std::size_t k, std::size_t n, bool accumulate);
void gemm_nn_omp(const double* a, const double* b, double* c,
                 std::size_t m, std::size_t k, std::size_t n, bool accumulate);

/// C[m x n] = (or +=) A[m x k] * B[n x k]^T
void gemm_nt_serial(const double* a, const double* b, double* c,
                    std::size_t m, std::size_t k, std::size_t n, bool accumulate);
void gemm_nt_omp(const double* a, const double* b, double* c,
                 std::size_t m, std::size_t k, std::size_t n, bool accumulate);

/// C[m x n] = (or +=) A[k x m]^T * B[k x n]
void gemm_tn_serial(const double* a, const double* b, double* c,
                    std::size_t m, std::size_t k, std::size_t n, bool accumulate);
void gemm_tn_omp(const double* a, const double* b, double* c,
                 std::size_t m, std::size_t k, std::size_t n, bool accumulate);

// Dispatchers: route to the OpenMP kernel when the problem is large enough to
// amortize the fork, otherwise to the serial reference. Results are
// bit-identical either way.
void gemm_nn(const double* a, const double* b, double* c,
             std::size_t m, std::size_t k, std::size_t n, bool accumulate = false);
void gemm_nt(const double* a, const double* b, double* c,
             std::size_t m, std::size_t k, std::size_t n, bool accumulate = false);
void gemm_tn(const double* a, const double* b, double* c,
             std::size_t m, std::size_t k, std::size_t n, bool accumulate = false);

/// Flop count below which the dispatchers stay serial.
inline constexpr std::size_t kOmpFlopThreshold = 1u << 15;

} // namespace fedrep::kernels
