#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace explab::par {

/// Execution policy for the data-parallel kernels. Every kernel produces
/// bit-identical results under both policies: reductions are blocked, each
/// block is accumulated serially in index order, and the block partials are
/// folded serially. OpenMP only distributes whole blocks.
enum class Exec { serial, openmp };

inline constexpr std::size_t kBlock = 1024;

/// Apply f(i) for i in [0,n). f must be safe to run concurrently and must not
/// throw across the parallel region (capture errors inside f).
template <class F>
void index_apply(std::size_t n, F&& f, Exec exec) {
#ifdef _OPENMP
    if (exec == Exec::openmp) {
        #pragma omp parallel for schedule(dynamic, 16)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            f(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)exec;
#endif
    for (std::size_t i = 0; i < n; ++i) f(i);
}

/// Deterministic blocked sum of f(0..n-1).
template <class F>
double block_sum(std::size_t n, F&& f, Exec exec) {
    if (n == 0) return 0.0;
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<double> partial(nblocks, 0.0);
    auto body = [&](std::size_t b) {
        const std::size_t lo = b * kBlock;
        const std::size_t hi = std::min(n, lo + kBlock);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += f(i);
        partial[b] = s;
    };
    index_apply(nblocks, body, exec);
    double total = 0.0;
    for (double s : partial) total += s;
    return total;
}

struct ArgExtreme {
    double value = 0.0;
    std::size_t index = 0;
};

/// Minimum of f over [0,n) with lexicographic tie-break on the index.
template <class F>
ArgExtreme min_scan(std::size_t n, F&& f, Exec exec) {
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<ArgExtreme> partial(nblocks);
    auto body = [&](std::size_t b) {
        const std::size_t lo = b * kBlock;
        const std::size_t hi = std::min(n, lo + kBlock);
        ArgExtreme best{f(lo), lo};
        for (std::size_t i = lo + 1; i < hi; ++i) {
            double v = f(i);
            if (v < best.value) best = {v, i};
        }
        partial[b] = best;
    };
    index_apply(nblocks, body, exec);
    ArgExtreme best = partial[0];
    for (std::size_t b = 1; b < nblocks; ++b)
        if (partial[b].value < best.value) best = partial[b];
    return best;
}

/// Maximum of f over [0,n) with lexicographic tie-break on the index.
template <class F>
ArgExtreme max_scan(std::size_t n, F&& f, Exec exec) {
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<ArgExtreme> partial(nblocks);
    auto body = [&](std::size_t b) {
        const std::size_t lo = b * kBlock;
        const std::size_t hi = std::min(n, lo + kBlock);
        ArgExtreme best{f(lo), lo};
        for (std::size_t i = lo + 1; i < hi; ++i) {
            double v = f(i);
            if (v > best.value) best = {v, i};
        }
        partial[b] = best;
    };
    index_apply(nblocks, body, exec);
    ArgExtreme best = partial[0];
    for (std::size_t b = 1; b < nblocks; ++b)
        if (partial[b].value > best.value) best = partial[b];
    return best;
}

} // namespace explab::par
