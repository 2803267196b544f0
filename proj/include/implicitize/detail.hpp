#pragma once

#include <array>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace implicitize::detail {

/// Binomial coefficient in floating point, by the ratio recurrence
/// C(n,k+1) = C(n,k)*(n-k)/(k+1); no factorials are formed.
inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return r;
}

/// Multinomial coefficient d! / (k1! k2! ... ), |k| = d.
template <std::size_t N>
double multinomial(int d, const std::array<int, N>& k) {
    double r = 1.0;
    int rem = d;
    for (std::size_t i = 0; i + 1 < N; ++i) {
        r *= binomial(rem, k[i]);
        rem -= k[i];
    }
    return r;
}

/// All multi-indices (k_1,...,k_parts) with sum = degree, in the fixed
/// ordering used throughout: descending lexicographic on (k_1, k_2, ...).
/// Unused trailing components are zero (parts <= 4).
inline std::vector<std::array<int, 4>> multi_indices(int degree, int parts) {
    if (parts < 2 || parts > 4) throw std::invalid_argument("multi_indices: parts must be 2..4");
    std::vector<std::array<int, 4>> out;
    if (parts == 2) {
        for (int k1 = degree; k1 >= 0; --k1) out.push_back({k1, degree - k1, 0, 0});
    } else if (parts == 3) {
        for (int k1 = degree; k1 >= 0; --k1)
            for (int k2 = degree - k1; k2 >= 0; --k2)
                out.push_back({k1, k2, degree - k1 - k2, 0});
    } else {
        for (int k1 = degree; k1 >= 0; --k1)
            for (int k2 = degree - k1; k2 >= 0; --k2)
                for (int k3 = degree - k1 - k2; k3 >= 0; --k3)
                    out.push_back({k1, k2, k3, degree - k1 - k2 - k3});
    }
    return out;
}

/// Thread cap from IMPLICITIZE_THREADS; defaults to 1 (serial) so that
/// results are reproducible without opting in.
inline int thread_cap() {
    const char* env = std::getenv("IMPLICITIZE_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    return n < 1 ? 1 : n;
}

/// Runs fn(i) for i in [0,count). Work items must write to disjoint
/// locations; the partition is by index block, so output is identical
/// for every thread count.
inline void parallel_for(int count, const std::function<void(int)>& fn) {
    int nthreads = std::min(thread_cap(), count);
    if (nthreads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t]() {
            for (int i = t; i < count; i += nthreads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace implicitize::detail
