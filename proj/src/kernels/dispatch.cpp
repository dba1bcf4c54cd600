#include "mplex/kernels.hpp"

#include <atomic>

namespace mplex::kernels {
namespace {

bool cpu_supports(Isa isa) noexcept
{
    switch (isa) {
    case Isa::scalar:
        return true;
    case Isa::avx2:
#if defined(MPLEX_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    case Isa::neon:
#if defined(MPLEX_HAVE_NEON)
        return true;  // mandatory on aarch64
#else
        return false;
#endif
    }
    return false;
}

Isa detect() noexcept
{
    if (cpu_supports(Isa::avx2)) return Isa::avx2;
    if (cpu_supports(Isa::neon)) return Isa::neon;
    return Isa::scalar;
}

std::atomic<const KernelTable*> g_table{nullptr};
std::atomic<Isa> g_isa{Isa::scalar};

}  // namespace

std::string_view isa_name(Isa isa) noexcept
{
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
    }
    return "unknown";
}

const KernelTable* table_for(Isa isa) noexcept
{
    if (!cpu_supports(isa)) return nullptr;
    switch (isa) {
    case Isa::scalar: return &detail::scalar_table;
#if defined(MPLEX_HAVE_AVX2)
    case Isa::avx2: return &detail::avx2_table;
#endif
#if defined(MPLEX_HAVE_NEON)
    case Isa::neon: return &detail::neon_table;
#endif
    default: return nullptr;
    }
}

const KernelTable& active() noexcept
{
    const KernelTable* t = g_table.load(std::memory_order_acquire);
    if (t == nullptr) {
        reset_isa();
        t = g_table.load(std::memory_order_acquire);
    }
    return *t;
}

Isa active_isa() noexcept
{
    active();
    return g_isa.load(std::memory_order_acquire);
}

bool force_isa(Isa isa) noexcept
{
    const KernelTable* t = table_for(isa);
    if (t == nullptr) return false;
    g_isa.store(isa, std::memory_order_release);
    g_table.store(t, std::memory_order_release);
    return true;
}

void reset_isa() noexcept
{
    const Isa isa = detect();
    g_isa.store(isa, std::memory_order_release);
    g_table.store(table_for(isa), std::memory_order_release);
}

}  // namespace mplex::kernels
