#pragma once
// Test-side oracles, deliberately independent of the library implementations
// they check: trial division instead of sieves, literal enumeration instead
// of parametrizations, exact fractions instead of floating point.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracles {

inline bool is_prime_trial(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<int64_t> primes_trial(int64_t limit) {
    std::vector<int64_t> ps;
    for (int64_t n = 2; n <= limit; ++n)
        if (is_prime_trial(n)) ps.push_back(n);
    return ps;
}

inline int64_t divisor_count_brute(int64_t n) {
    int64_t c = 0;
    for (int64_t d = 1; d <= n; ++d)
        if (n % d == 0) ++c;
    return c;
}

// Largest prime factor by trial division; 1 for n = 1.
inline int64_t largest_prime_factor(int64_t n) {
    int64_t best = 1;
    for (int64_t d = 2; d * d <= n; ++d)
        while (n % d == 0) { best = d; n /= d; }
    return n > 1 ? n : best;
}

// d_{-1/2}(p^m) determined by its defining identity alone: the sequence must
// convolve with itself to the coefficients of (1 - x), i.e. [1, -1, 0, ...].
inline std::vector<double> sqrt_series_coefficients(int m_max) {
    std::vector<double> c(static_cast<size_t>(m_max) + 1, 0.0);
    c[0] = 1.0;
    for (int m = 1; m <= m_max; ++m) {
        double target = (m == 1) ? -1.0 : 0.0;
        double cross = 0.0;
        for (int i = 1; i < m; ++i) cross += c[static_cast<size_t>(i)] * c[static_cast<size_t>(m - i)];
        c[static_cast<size_t>(m)] = (target - cross) / 2.0;
    }
    return c;
}

// Direct-sum zeta oracle: 1e8 terms plus the integral tail.
inline double zeta_direct(double s, int64_t M = 100'000'000) {
    double sum = 0.0;
    for (int64_t n = M - 1; n >= 1; --n) sum += std::pow(static_cast<double>(n), -s);
    return sum + std::pow(static_cast<double>(M), 1.0 - s) / (s - 1.0)
         + 0.5 * std::pow(static_cast<double>(M), -s);
}

// O(N^4) quadruple enumeration of the 4th pseudomoment.
inline double pseudomoment4_brute(int64_t N) {
    double sum = 0.0;
    for (int64_t a = 1; a <= N; ++a)
        for (int64_t b = 1; b <= N; ++b)
            for (int64_t c = 1; c <= N; ++c)
                for (int64_t d = 1; d <= N; ++d)
                    if (a * b == c * d)
                        sum += 1.0 / std::sqrt(static_cast<double>(a) * b * c * d);
    return sum;
}

// Golden-section minimizer for a unimodal function on [lo, hi]. Runs in
// long double: comparison noise limits localization to sqrt(eps), which in
// double would sit right at the 1e-8 tolerances this oracle backs.
template <class F>
long double golden_minimize(F&& f, long double lo, long double hi, long double tol = 1e-13L) {
    const long double phi = (std::sqrt(5.0L) - 1.0L) / 2.0L;
    long double a = lo, b = hi;
    long double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    long double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - phi * (b - a); f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + phi * (b - a); f2 = f(x2);
        }
    }
    return 0.5L * (a + b);
}

// g(B) = sqrt(B) e^{-gamma} + 1/(pi sqrt(B)) reimplemented in long double.
inline long double one_norm_g_ld(long double B) {
    const long double gamma = 0.57721566490153286061L;
    const long double pi = 3.14159265358979323846L;
    return std::sqrt(B) * std::exp(-gamma) + 1.0L / (pi * std::sqrt(B));
}

}
