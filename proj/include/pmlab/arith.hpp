#pragma once
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace pmlab::arith {

// Sieve state: ascending primes <= limit and the smallest prime factor of
// every integer in [2, limit]. Immutable after construction; share freely.
struct PrimeTable {
    int64_t limit = 0;
    std::vector<int64_t> primes;
    std::vector<uint32_t> spf;  // spf[n] valid for 2 <= n <= limit

    uint32_t smallest_factor(int64_t n) const {
        if (n < 2 || n > limit)
            throw std::out_of_range("smallest_factor: n outside sieve range");
        return spf[static_cast<size_t>(n)];
    }
    bool is_prime(int64_t n) const {
        return n >= 2 && smallest_factor(n) == n;
    }
};

inline PrimeTable build_prime_table(int64_t limit) {
    if (limit < 2)
        throw std::invalid_argument("build_prime_table: limit must be >= 2");
    PrimeTable t;
    t.limit = limit;
    t.spf.assign(static_cast<size_t>(limit) + 1, 0);
    for (int64_t i = 2; i <= limit; ++i) {
        if (t.spf[static_cast<size_t>(i)] == 0) {
            t.primes.push_back(i);
            for (int64_t j = i; j <= limit; j += i)
                if (t.spf[static_cast<size_t>(j)] == 0)
                    t.spf[static_cast<size_t>(j)] = static_cast<uint32_t>(i);
        }
    }
    return t;
}

struct PrimeFactor {
    int64_t prime;
    int exponent;
    bool operator==(const PrimeFactor&) const = default;
};

// Ordered prime factorization; the empty list is n = 1.
struct Factorization {
    std::vector<PrimeFactor> factors;

    int64_t value() const {
        int64_t n = 1;
        for (const auto& f : factors)
            for (int e = 0; e < f.exponent; ++e) n *= f.prime;
        return n;
    }
    bool operator==(const Factorization&) const = default;
};

inline Factorization factorize(int64_t n, const PrimeTable& table) {
    if (n < 1) throw std::invalid_argument("factorize: n must be positive");
    if (n > table.limit) throw std::out_of_range("factorize: n exceeds sieve limit");
    Factorization f;
    while (n > 1) {
        int64_t p = table.spf[static_cast<size_t>(n)];
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        f.factors.push_back({p, e});
    }
    std::sort(f.factors.begin(), f.factors.end(),
              [](const PrimeFactor& a, const PrimeFactor& b) { return a.prime < b.prime; });
    return f;
}

// Order of a generalized divisor function d_alpha (the coefficients of
// zeta(s)^alpha). Any finite real alpha is legal.
struct DivisorOrder {
    double alpha;
    explicit DivisorOrder(double a) : alpha(a) {
        if (!std::isfinite(a))
            throw std::invalid_argument("DivisorOrder: alpha must be finite");
    }
};

// d_alpha(p^m) = binomial(alpha+m-1, m), the binomial-series coefficient of
// (1-x)^{-alpha}; independent of p.
inline double divisor_coefficient_prime_power(double alpha, int m) {
    double c = 1.0;
    for (int j = 0; j < m; ++j) c *= (alpha + j) / (j + 1);
    return c;
}

// First max_m+1 coefficients d_alpha(p^0..p^max_m) by the same recurrence.
inline std::vector<double> divisor_coefficients(double alpha, int max_m) {
    std::vector<double> c(static_cast<size_t>(max_m) + 1);
    c[0] = 1.0;
    for (int m = 1; m <= max_m; ++m)
        c[static_cast<size_t>(m)] = c[static_cast<size_t>(m) - 1] * (alpha + m - 1) / m;
    return c;
}

inline double divisor_coefficient(DivisorOrder order, const Factorization& f) {
    double d = 1.0;
    for (const auto& pf : f.factors)
        d *= divisor_coefficient_prime_power(order.alpha, pf.exponent);
    return d;
}

// All Y-smooth integers in [1, X], ascending. Generated by recursive
// prime-power products, so X may exceed any sieve limit.
inline std::vector<int64_t> enumerate_smooth(int64_t Y, int64_t X) {
    if (X < 1) return {};
    std::vector<int64_t> primes;
    if (Y >= 2) {
        int64_t bound = std::min(Y, X);
        std::vector<bool> comp(static_cast<size_t>(bound) + 1, false);
        for (int64_t i = 2; i <= bound; ++i) {
            if (!comp[static_cast<size_t>(i)]) {
                primes.push_back(i);
                for (int64_t j = i * i; j <= bound; j += i) comp[static_cast<size_t>(j)] = true;
            }
        }
    }
    std::vector<int64_t> out;
    auto gen = [&](auto&& self, size_t idx, int64_t value) -> void {
        out.push_back(value);
        for (size_t i = idx; i < primes.size(); ++i) {
            if (value > X / primes[i]) break;
            self(self, i, value * primes[i]);
        }
    };
    gen(gen, 0, 1);
    std::sort(out.begin(), out.end());
    return out;
}

// Sum_{n<=N} 1/n, accumulated smallest-term-first.
inline double harmonic_sum(int64_t N) {
    if (N < 1) throw std::invalid_argument("harmonic_sum: N must be >= 1");
    double s = 0.0;
    for (int64_t n = N; n >= 1; --n) s += 1.0 / static_cast<double>(n);
    return s;
}

}
