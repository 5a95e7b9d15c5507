#include "fedrep/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fedrep::kernels {

namespace {

inline double dot_strided(const double* x, const double* y,
                          std::size_t n, std::size_t stride_y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i * stride_y];
    return acc;
}

inline double dot(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

} // namespace

void gemm_nn_serial(const double* a, const double* b, double* c,
                    std::size_t m, std::size_t k, std::size_t n, bool accumulate) {
    for (std::size_t i = 0; i < m; ++i) {
        const double* arow = a + i * k;
        double* crow = c + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            double v = dot_strided(arow, b + j, k, n);
            crow[j] = accumulate ? crow[j] + v : v;
        }
    }
}

void gemm_nn_omp(const double* a, const double* b, double* c,
                 std::size_t m, std::size_t k, std::size_t n, bool accumulate) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < m; ++i) {
        const double* arow = a + i * k;
        double* crow = c + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            double v = dot_strided(arow, b + j, k, n);
            crow[j] = accumulate ? crow[j] + v : v;
        }
    }
}

void gemm_nt_serial(const double* a, const double* b, double* c,
                    std::size_t m, std::size_t k, std::size_t n, bool accumulate) {
    for (std::size_t i = 0; i < m; ++i) {
        const double* arow = a + i * k;
        double* crow = c + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            double v = dot(arow, b + j * k, k);
            crow[j] = accumulate ? crow[j] + v : v;
        }
    }
}

void gemm_nt_omp(const double* a, const double* b, double* c,
                 std::size_t m, std::size_t k, std::size_t n, bool accumulate) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < m; ++i) {
        const double* arow = a + i * k;
        double* crow = c + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            double v = dot(arow, b + j * k, k);
            crow[j] = accumulate ? crow[j] + v : v;
        }
    }
}

void gemm_tn_serial(const double* a, const double* b, double* c,
                    std::size_t m, std::size_t k, std::size_t n, bool accumulate) {
    for (std::size_t i = 0; i < m; ++i) {
        double* crow = c + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t l = 0; l < k; ++l) acc += a[l * m + i] * b[l * n + j];
            crow[j] = accumulate ? crow[j] + acc : acc;
        }
    }
}

void gemm_tn_omp(const double* a, const double* b, double* c,
                 std::size_t m, std::size_t k, std::size_t n, bool accumulate) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < m; ++i) {
        double* crow = c + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t l = 0; l < k; ++l) acc += a[l * m + i] * b[l * n + j];
            crow[j] = accumulate ? crow[j] + acc : acc;
        }
    }
}

namespace {

inline bool use_omp(std::size_t m, std::size_t k, std::size_t n) {
#ifdef _OPENMP
    return m * k * n >= kOmpFlopThreshold && omp_get_max_threads() > 1;
#else
    (void)m;
    (void)k;
    (void)n;
    return false;
#endif
}

} // namespace

void gemm_nn(const double* a, const double* b, double* c,
             std::size_t m, std::size_t k, std::size_t n, bool accumulate) {
    if (use_omp(m, k, n))
        gemm_nn_omp(a, b, c, m, k, n, accumulate);
    else
        gemm_nn_serial(a, b, c, m, k, n, accumulate);
}

void gemm_nt(const double* a, const double* b, double* c,
             std::size_t m, std::size_t k, std::size_t n, bool accumulate) {
    if (use_omp(m, k, n))
        gemm_nt_omp(a, b, c, m, k, n, accumulate);
    else
        gemm_nt_serial(a, b, c, m, k, n, accumulate);
}

void gemm_tn(const double* a, const double* b, double* c,
             std::size_t m, std::size_t k, std::size_t n, bool accumulate) {
    if (use_omp(m, k, n))
        gemm_tn_omp(a, b, c, m, k, n, accumulate);
    else
        gemm_tn_serial(a, b, c, m, k, n, accumulate);
}

} // namespace fedrep::kernels
