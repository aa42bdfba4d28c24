#pragma once
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pmlab/arith.hpp"
#include "pmlab/constants.hpp"
#include "pmlab/parallel.hpp"
#include "pmlab/summation.hpp"

namespace pmlab::montecarlo {

using std::complex;

namespace detail {

inline uint64_t mix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Counter-based generator: the phase at (seed, sample, prime) is a pure
// function of its key, so any work partition reproduces the same stream.
inline double unit_interval(uint64_t seed, uint64_t sample, uint64_t prime) {
    uint64_t h = mix64(seed ^ 0x8EBC6AF09C88C6E3ULL);
    h = mix64(h ^ (sample * 0xA24BAED4963EE407ULL));
    h = mix64(h ^ (prime * 0x9FB21C651E98DF25ULL));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// X(n) for n <= N: independent uniform phases at primes, extended by
// complete multiplicativity X(n) = X(n/spf(n)) X(spf(n)) in increasing n.
inline void fill_character(std::vector<complex<double>>& X, int64_t N,
                           const arith::PrimeTable& table, uint64_t seed, uint64_t counter) {
    X.resize(static_cast<size_t>(N) + 1);
    X[0] = 0.0;
    if (N >= 1) X[1] = 1.0;
    for (int64_t n = 2; n <= N; ++n) {
        const int64_t p = table.spf[static_cast<size_t>(n)];
        if (n == p) {
            const double theta = 2.0 * MathConstants::pi
                               * unit_interval(seed, counter, static_cast<uint64_t>(p));
            X[static_cast<size_t>(n)] = {std::cos(theta), std::sin(theta)};
        } else {
            X[static_cast<size_t>(n)] = X[static_cast<size_t>(n / p)] * X[static_cast<size_t>(p)];
        }
    }
}

constexpr int64_t kBlockSize = 4096;

struct Moments {
    double mean = 0.0;
    double std_err = 0.0;
    double max_w = 0.0;
};

// Common engine: per_sample(X, w) writes n_stats weights for one character.
// Per-block Neumaier partials are combined by index-ordered pairwise
// reduction, so results are bit-identical for any thread count.
template <class PerSample>
std::vector<Moments> run(int64_t limit, int64_t samples, uint64_t seed,
                         const arith::PrimeTable& table, int threads, int n_stats,
                         PerSample&& per_sample) {
    if (samples < 100) throw std::invalid_argument("monte carlo: samples must be >= 100");
    if (limit > table.limit) throw std::out_of_range("monte carlo: N exceeds sieve limit");
    const int64_t nb = block_count(samples, kBlockSize);
    std::vector<double> sums(static_cast<size_t>(n_stats) * nb, 0.0);
    std::vector<double> sums2(static_cast<size_t>(n_stats) * nb, 0.0);
    std::vector<double> maxs(static_cast<size_t>(n_stats) * nb, 0.0);

    run_blocks(samples, kBlockSize, threads, [&](int64_t b, int64_t lo, int64_t hi) {
        std::vector<complex<double>> X;
        std::vector<NeumaierSum> acc(static_cast<size_t>(n_stats));
        std::vector<NeumaierSum> acc2(static_cast<size_t>(n_stats));
        std::vector<double> mx(static_cast<size_t>(n_stats), 0.0);
        std::vector<double> w(static_cast<size_t>(n_stats));
        for (int64_t i = lo; i < hi; ++i) {
            fill_character(X, limit, table, seed, static_cast<uint64_t>(i));
            per_sample(X, w.data());
            for (int j = 0; j < n_stats; ++j) {
                acc[static_cast<size_t>(j)].add(w[static_cast<size_t>(j)]);
                acc2[static_cast<size_t>(j)].add(w[static_cast<size_t>(j)] * w[static_cast<size_t>(j)]);
                mx[static_cast<size_t>(j)] = std::max(mx[static_cast<size_t>(j)], w[static_cast<size_t>(j)]);
            }
        }
        for (int j = 0; j < n_stats; ++j) {
            sums[static_cast<size_t>(j * nb + b)] = acc[static_cast<size_t>(j)].value();
            sums2[static_cast<size_t>(j * nb + b)] = acc2[static_cast<size_t>(j)].value();
            maxs[static_cast<size_t>(j * nb + b)] = mx[static_cast<size_t>(j)];
        }
    });

    std::vector<Moments> out(static_cast<size_t>(n_stats));
    for (int j = 0; j < n_stats; ++j) {
        std::span<const double> s(sums.data() + j * nb, static_cast<size_t>(nb));
        std::span<const double> s2(sums2.data() + j * nb, static_cast<size_t>(nb));
        std::span<const double> m(maxs.data() + j * nb, static_cast<size_t>(nb));
        const double S = pairwise_sum(s);
        const double S2 = pairwise_sum(s2);
        const double mean = S / static_cast<double>(samples);
        const double var = std::max(0.0, (S2 - S * S / static_cast<double>(samples))
                                             / static_cast<double>(samples - 1));
        out[static_cast<size_t>(j)] = {mean, std::sqrt(var / static_cast<double>(samples)),
                                       pairwise_max(m)};
    }
    return out;
}

}  // namespace detail

// One random completely multiplicative unimodular character, reproducible
// from (seed, counter).
struct CharacterSample {
    uint64_t seed = 0;
    uint64_t counter = 0;
    std::vector<complex<double>> values;  // values[n] = X(n), n <= N; values[0] unused
};

inline CharacterSample sample_character(int64_t N, const arith::PrimeTable& table,
                                        uint64_t seed, uint64_t counter) {
    if (N < 1) throw std::invalid_argument("sample_character: N must be >= 1");
    if (N > table.limit) throw std::out_of_range("sample_character: N exceeds sieve limit");
    CharacterSample s{seed, counter, {}};
    detail::fill_character(s.values, N, table, seed, counter);
    return s;
}

struct NormEstimate {
    double q = 0.0;
    double mean = 0.0;
    double std_err = 0.0;
    int64_t samples = 0;
    uint64_t seed = 0;
    int64_t N = 0;
    int64_t Y = -1;            // -1 when no mollifier is involved
    double max_over_mean = 0;  // heavy-tail diagnostic
};

// mean of |sum_{n<=N} X(n)/sqrt(n)|^q for each q, all on the same samples.
inline std::vector<NormEstimate> estimate_norm_q(int64_t N, const std::vector<double>& qs,
                                                 int64_t samples, uint64_t seed,
                                                 const arith::PrimeTable& table, int threads = 1) {
    if (qs.empty()) return {};
    for (double q : qs)
        if (!(q > 0.0)) throw std::domain_error("estimate_norm_q: q must be positive");
    std::vector<double> inv_sqrt(static_cast<size_t>(N) + 1, 0.0);
    for (int64_t n = 1; n <= N; ++n) inv_sqrt[static_cast<size_t>(n)] = 1.0 / std::sqrt(static_cast<double>(n));

    auto stats = detail::run(N, samples, seed, table, threads, static_cast<int>(qs.size()),
                             [&](const std::vector<complex<double>>& X, double* w) {
                                 complex<double> A{0.0, 0.0};
                                 for (int64_t n = 1; n <= N; ++n)
                                     A += X[static_cast<size_t>(n)] * inv_sqrt[static_cast<size_t>(n)];
                                 const double absA = std::abs(A);
                                 for (size_t j = 0; j < qs.size(); ++j) w[j] = std::pow(absA, qs[j]);
                             });
    std::vector<NormEstimate> out(qs.size());
    for (size_t j = 0; j < qs.size(); ++j) {
        out[j] = {qs[j], stats[j].mean, stats[j].std_err, samples, seed, N, -1,
                  stats[j].mean > 0.0 ? stats[j].max_w / stats[j].mean : 0.0};
    }
    return out;
}

inline NormEstimate estimate_norm_q(int64_t N, double q, int64_t samples, uint64_t seed,
                                    const arith::PrimeTable& table, int threads = 1) {
    return estimate_norm_q(N, std::vector<double>{q}, samples, seed, table, threads)[0];
}

// mean of |A B|^2 with A = sum_{n<=N} X(n)/sqrt(n) and the mollifier
// B = prod_{p<=Y} (1 - X(p)/sqrt(p))^{1/2}, principal square roots (each
// argument has real part >= 1 - 1/sqrt(2) > 0, so no cut is crossed).
inline NormEstimate estimate_I(int64_t N, int64_t Y, int64_t samples, uint64_t seed,
                               const arith::PrimeTable& table, int threads = 1) {
    const int64_t limit = std::max(N, Y);
    if (Y > table.limit) throw std::out_of_range("estimate_I: Y exceeds sieve limit");
    std::vector<double> inv_sqrt(static_cast<size_t>(limit) + 1, 0.0);
    for (int64_t n = 1; n <= limit; ++n) inv_sqrt[static_cast<size_t>(n)] = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<int64_t> mollifier_primes;
    for (int64_t p : table.primes) {
        if (p > Y) break;
        mollifier_primes.push_back(p);
    }

    auto stats = detail::run(limit, samples, seed, table, threads, 1,
                             [&](const std::vector<complex<double>>& X, double* w) {
                                 complex<double> A{0.0, 0.0};
                                 for (int64_t n = 1; n <= N; ++n)
                                     A += X[static_cast<size_t>(n)] * inv_sqrt[static_cast<size_t>(n)];
                                 complex<double> B{1.0, 0.0};
                                 for (int64_t p : mollifier_primes)
                                     B *= std::sqrt(1.0 - X[static_cast<size_t>(p)] * inv_sqrt[static_cast<size_t>(p)]);
                                 w[0] = std::norm(A * B);
                             });
    return {2.0, stats[0].mean, stats[0].std_err, samples, seed, N, Y,
            stats[0].mean > 0.0 ? stats[0].max_w / stats[0].mean : 0.0};
}

// mean of prod_{p<=Y} |1 - X(p)/sqrt(p)|^{-beta}.
inline NormEstimate estimate_J(int64_t Y, double beta, int64_t samples, uint64_t seed,
                               const arith::PrimeTable& table, int threads = 1) {
    if (beta > 4.0) throw std::domain_error("estimate_J: beta must be <= 4 (variance)");
    if (Y > table.limit) throw std::out_of_range("estimate_J: Y exceeds sieve limit");
    const int64_t limit = std::max<int64_t>(Y, 1);
    std::vector<double> inv_sqrt(static_cast<size_t>(limit) + 1, 0.0);
    for (int64_t n = 1; n <= limit; ++n) inv_sqrt[static_cast<size_t>(n)] = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<int64_t> mollifier_primes;
    for (int64_t p : table.primes) {
        if (p > Y) break;
        mollifier_primes.push_back(p);
    }

    auto stats = detail::run(limit, samples, seed, table, threads, 1,
                             [&](const std::vector<complex<double>>& X, double* w) {
                                 double m = 1.0;
                                 for (int64_t p : mollifier_primes)
                                     m *= std::abs(1.0 - X[static_cast<size_t>(p)] * inv_sqrt[static_cast<size_t>(p)]);
                                 w[0] = std::pow(m, -beta);
                             });
    return {beta, stats[0].mean, stats[0].std_err, samples, seed, 0, Y,
            stats[0].mean > 0.0 ? stats[0].max_w / stats[0].mean : 0.0};
}

// The q=1 Hoelder chain evaluated with common random numbers: per sample,
// |f|, |f M|^2 and prod |1 - X(p)/sqrt(p)|^{-1} share one character, so the
// empirical Cauchy-Schwarz inequality mean|f| <= sqrt(I J) holds exactly.
struct HolderChain {
    NormEstimate one_norm;  // mean |f|
    NormEstimate I;         // mean |f M|^2
    NormEstimate J;         // mean prod |1 - X(p)/sqrt(p)|^{-1}

    double bound() const { return std::sqrt(I.mean * J.mean); }
    bool holds() const { return one_norm.mean <= bound() * (1.0 + 1e-12); }
};

inline HolderChain estimate_holder_chain(int64_t N, int64_t Y, int64_t samples, uint64_t seed,
                                         const arith::PrimeTable& table, int threads = 1) {
    const int64_t limit = std::max(N, Y);
    if (Y > table.limit) throw std::out_of_range("estimate_holder_chain: Y exceeds sieve limit");
    std::vector<double> inv_sqrt(static_cast<size_t>(limit) + 1, 0.0);
    for (int64_t n = 1; n <= limit; ++n) inv_sqrt[static_cast<size_t>(n)] = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<int64_t> mollifier_primes;
    for (int64_t p : table.primes) {
        if (p > Y) break;
        mollifier_primes.push_back(p);
    }

    auto stats = detail::run(limit, samples, seed, table, threads, 3,
                             [&](const std::vector<complex<double>>& X, double* w) {
                                 complex<double> A{0.0, 0.0};
                                 for (int64_t n = 1; n <= N; ++n)
                                     A += X[static_cast<size_t>(n)] * inv_sqrt[static_cast<size_t>(n)];
                                 complex<double> B{1.0, 0.0};
                                 double m = 1.0;
                                 for (int64_t p : mollifier_primes) {
                                     const complex<double> factor =
                                         1.0 - X[static_cast<size_t>(p)] * inv_sqrt[static_cast<size_t>(p)];
                                     B *= std::sqrt(factor);
                                     m *= std::abs(factor);
                                 }
                                 w[0] = std::abs(A);
                                 w[1] = std::norm(A * B);
                                 w[2] = 1.0 / m;
                             });
    HolderChain chain;
    chain.one_norm = {1.0, stats[0].mean, stats[0].std_err, samples, seed, N, Y,
                      stats[0].mean > 0.0 ? stats[0].max_w / stats[0].mean : 0.0};
    chain.I = {2.0, stats[1].mean, stats[1].std_err, samples, seed, N, Y,
               stats[1].mean > 0.0 ? stats[1].max_w / stats[1].mean : 0.0};
    chain.J = {1.0, stats[2].mean, stats[2].std_err, samples, seed, 0, Y,
               stats[2].mean > 0.0 ? stats[2].max_w / stats[2].mean : 0.0};
    return chain;
}

}
