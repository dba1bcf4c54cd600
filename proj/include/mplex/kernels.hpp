#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version; an
// AVX2/FMA (x86-64) or NEON (aarch64) variant is picked at first use when the
// CPU supports it. Results of the vector variants differ from the scalar ones
// only by floating-point reassociation.

#include <cstddef>
#include <string_view>

namespace mplex::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
    // sum_i a[i] * b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    // sum_i w[i] * v[i]^2
    double (*weighted_sum_squares)(const double* v, const double* w, std::size_t n);
    // y[i] += alpha * x[i]
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    // max_i |a[i] - b[i]|
    double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
    // y = M x, M row-major rows x cols
    void (*matvec)(const double* m, const double* x, double* y, std::size_t rows, std::size_t cols);
    // C = A B, A is n x k, B is k x m, all row-major; C must not alias A or B
    void (*gemm)(const double* a, const double* b, double* c, std::size_t n, std::size_t k, std::size_t m);
};

/// The table for the best ISA available on this CPU (or the forced one).
const KernelTable& active() noexcept;
Isa active_isa() noexcept;

/// Table for a specific ISA; nullptr when it is not compiled in or not supported by the CPU.
const KernelTable* table_for(Isa isa) noexcept;

/// Pins dispatch to one ISA (tests, reproducibility runs). Returns false if unavailable.
bool force_isa(Isa isa) noexcept;
/// Returns to automatic selection.
void reset_isa() noexcept;

namespace detail {
extern const KernelTable scalar_table;
#if defined(MPLEX_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif
#if defined(MPLEX_HAVE_NEON)
extern const KernelTable neon_table;
#endif
}  // namespace detail

}  // namespace mplex::kernels
