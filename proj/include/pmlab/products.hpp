#pragma once
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pmlab/arith.hpp"
#include "pmlab/constants.hpp"
#include "pmlab/summation.hpp"

namespace pmlab::products {

using std::complex;

// A point s = sigma + i t.
struct ComplexPoint {
    double sigma = 0.0;
    double t = 0.0;
    complex<double> value() const { return {sigma, t}; }
};

// Truncated Euler-product value plus a certified bound on
// |log(true/computed)| covering both omitted primes and omitted
// local-series terms, and the truncation parameters that produced it.
struct EulerProductValue {
    complex<double> value{0.0, 0.0};
    double tail_bound = 0.0;
    int64_t prime_limit = 0;
    int series_cutoff = 0;

    double real() const { return value.real(); }
    // Certified bound on |true - value| implied by the log-scale bound.
    double abs_error() const { return std::abs(value) * std::expm1(tail_bound); }
};

namespace detail {

struct LocalSeries {
    double sum = 0.0;       // sum_{m<=M} d_alpha(p^m)^2 p^{-m}
    double rel_tail = 0.0;  // certified bound on omitted-terms / sum
    int terms = 0;
};

// Local factor sum_m d_alpha(p^m)^2 / p^m truncated at `cutoff`, with a
// certified geometric tail from |d_alpha(p^m)| <= (m+1)^c, c = ceil(|alpha|)-1
// (the standard divisor-function bound; c=0 covers |alpha| <= 1).
// Stops early once the certificate drops below 1e-17 of the partial sum.
inline LocalSeries divisor_square_series(double alpha, double p, int cutoff) {
    int c = std::max(0, static_cast<int>(std::ceil(std::abs(alpha))) - 1);
    double d = 1.0, pinv = 1.0 / p, pm = 1.0;
    double sum = 1.0;
    double tail = -1.0;
    int m = 0;
    while (m < cutoff) {
        ++m;
        d *= (alpha + m - 1) / m;
        pm *= pinv;
        sum += d * d * pm;
        double ratio = std::pow(1.0 + 1.0 / (m + 2), 2 * c) * pinv;
        if (ratio >= 1.0) { tail = -1.0; continue; }
        tail = std::pow(static_cast<double>(m + 2), 2 * c) * pm * pinv / (1.0 - ratio);
        if (tail < 1e-17 * sum) break;
    }
    if (!(tail >= 0.0) || tail >= sum)
        throw std::invalid_argument("divisor_square_series: cutoff too small to certify tail");
    return {sum, tail / sum, m + 1};
}

}  // namespace detail

// Exact finite product prod_{p<=Y} (1 - 1/p)^{-1}.
inline double mertens_product(int64_t Y, const arith::PrimeTable& table) {
    if (Y > table.limit) throw std::out_of_range("mertens_product: Y exceeds sieve limit");
    double prod = 1.0;
    for (int64_t p : table.primes) {
        if (p > Y) break;
        prod *= static_cast<double>(p) / (p - 1);
    }
    return prod;
}

// The Euler-product constant
//   a_beta = prod_p (1-1/p)^{beta^2/4} sum_m d_{beta/2}(p^m)^2 / p^m
// truncated at prime_limit / series_cutoff. The tail bound combines (a) the
// certified local-series tails, (b) an omitted-primes term K/prime_limit,
// where K is measured as max |log local(p)| p^2 over the top decade of
// computed primes and inflated by 2 (local factors are 1 + O(p^-2)), and
// (c) a worst-case rounding allowance; truncation alone has no margin left
// at the 1e-13 scale of the beta=2 cancellation.
inline EulerProductValue a_beta(double beta, int64_t prime_limit, int series_cutoff) {
    if (prime_limit < 2) throw std::invalid_argument("a_beta: prime_limit must be >= 2");
    if (series_cutoff < 2) throw std::invalid_argument("a_beta: series_cutoff must be >= 2");
    const double alpha = beta / 2.0;
    const double expo = beta * beta / 4.0;
    arith::PrimeTable table = arith::build_prime_table(prime_limit);

    double value = 1.0;
    double tail = 0.0;
    double rounding_ops = 0.0;
    double k_measured = 0.0;
    // measuring down to p = 2 when the table is tiny keeps K conservative
    const int64_t decade_start = std::max<int64_t>(prime_limit / 10, 2);
    for (int64_t p : table.primes) {
        auto local = detail::divisor_square_series(alpha, static_cast<double>(p), series_cutoff);
        double factor = std::pow(1.0 - 1.0 / p, expo) * local.sum;
        value *= factor;
        tail += local.rel_tail;
        rounding_ops += 3.0 * local.terms + 8.0;
        if (p >= decade_start)
            k_measured = std::max(k_measured, std::abs(std::log(factor)) * static_cast<double>(p) * p);
    }
    tail += 2.0 * k_measured / static_cast<double>(prime_limit);
    tail += rounding_ops * 0x1p-53;
    return {complex<double>(value, 0.0), tail, prime_limit, series_cutoff};
}

// zeta(s) on the real axis, s > 1: direct sum to M plus the tail correction
// M^{1-s}/(s-1) + M^{-s}/2, doubling M until stable to 1e-12.
inline double zeta_real(double s) {
    if (!(s > 1.0)) throw std::domain_error("zeta_real: requires s > 1");
    double prev = 0.0;
    for (int64_t M = 64;; M *= 2) {
        double sum = 0.0;
        for (int64_t n = M - 1; n >= 1; --n) sum += std::pow(static_cast<double>(n), -s);
        double v = sum + std::pow(static_cast<double>(M), 1.0 - s) / (s - 1.0)
                 + 0.5 * std::pow(static_cast<double>(M), -s);
        if (std::abs(v - prev) < 1e-12 || M >= (1 << 26)) return v;
        prev = v;
    }
}

// Reciprocal of the truncated zeta product: prod_{p<=Y} (1 - p^{-s}).
inline complex<double> zeta_Y_recip(ComplexPoint s, int64_t Y, const arith::PrimeTable& table) {
    if (Y > table.limit) throw std::out_of_range("zeta_Y_recip: Y exceeds sieve limit");
    complex<double> prod{1.0, 0.0};
    const complex<double> sc = s.value();
    for (int64_t p : table.primes) {
        if (p > Y) break;
        complex<double> factor = 1.0 - std::exp(-sc * std::log(static_cast<double>(p)));
        if (std::abs(factor) == 0.0)
            throw std::domain_error("zeta_Y: singular local factor");
        prod *= factor;
    }
    return prod;
}

// Truncated zeta product zeta(s, Y) = prod_{p<=Y} (1 - p^{-s})^{-1}.
inline complex<double> zeta_Y(ComplexPoint s, int64_t Y, const arith::PrimeTable& table) {
    return 1.0 / zeta_Y_recip(s, Y, table);
}

// Evaluator for the arithmetic factor A(s1, s2, Y): per-prime prefactor
//   (1-1/p)^{1/4} (1-p^{-1-s1-s2}) / ((1-p^{-1-s1})^{1/2} (1-p^{-1-s2})^{1/2})
// times the constrained double series over e1+f1 = e2+f2 = m, which for each
// total degree m factorizes into two single sums handled by the recurrences
//   U_m = q1 U_{m-1} + d_{-1/2}(p^m) p^{-m/2},   q1 = p^{-1/2-s1}
// (likewise V_m with q2). Square roots are principal; the admissible region
// Re(s) > -1/4 keeps their arguments in the right half-plane.
class ArithmeticFactor {
public:
    ArithmeticFactor(int64_t Y, const arith::PrimeTable& table, int series_cutoff = 40)
        : Y_(Y), cutoff_(series_cutoff) {
        if (Y > table.limit) throw std::out_of_range("ArithmeticFactor: Y exceeds sieve limit");
        if (series_cutoff < 8)
            throw std::invalid_argument("ArithmeticFactor: series_cutoff must be >= 8");
        for (int64_t p : table.primes) {
            if (p > Y) break;
            double pd = static_cast<double>(p);
            p_.push_back(pd);
            ln_p_.push_back(std::log(pd));
            inv_sqrt_p_.push_back(1.0 / std::sqrt(pd));
            quarter_root_.push_back(std::pow(1.0 - 1.0 / pd, 0.25));
        }
        dd_ = arith::divisor_coefficients(-0.5, series_cutoff);
    }

    EulerProductValue eval(ComplexPoint s1, ComplexPoint s2) const {
        if (!(s1.sigma > -0.25) || !(s2.sigma > -0.25))
            throw std::domain_error("A_factor: requires Re(s1), Re(s2) > -1/4");
        complex<double> value{1.0, 0.0};
        double tail_bound = 0.0;
        const complex<double> z1 = s1.value(), z2 = s2.value();
        for (size_t i = 0; i < p_.size(); ++i) {
            const double lp = ln_p_[i];
            const complex<double> q1 = std::exp(-(0.5 + z1) * lp);
            const complex<double> q2 = std::exp(-(0.5 + z2) * lp);
            // series by total degree
            complex<double> U{1.0, 0.0}, V{1.0, 0.0}, S{1.0, 0.0};
            const double rho12 = std::pow(p_[i], -(0.5 + std::min(0.0, s1.sigma)))
                               * std::pow(p_[i], -(0.5 + std::min(0.0, s2.sigma)));
            double pm_half = 1.0, r12m = 1.0;
            double tail = 0.0;
            int m = 0;
            while (m < cutoff_) {
                ++m;
                pm_half *= inv_sqrt_p_[i];
                r12m *= rho12;
                U = q1 * U + dd_[static_cast<size_t>(m)] * pm_half;
                V = q2 * V + dd_[static_cast<size_t>(m)] * pm_half;
                S += U * V;
                double ratio = (1.0 + 1.0 / (m + 2)) * (1.0 + 1.0 / (m + 2)) * rho12;
                if (ratio >= 1.0) { tail = -1.0; continue; }
                double first = static_cast<double>(m + 2) * (m + 2) * r12m * rho12;
                tail = first / (1.0 - ratio);
                if (tail < 1e-17 * std::abs(S)) break;
            }
            double rel = tail / std::abs(S);
            if (!(rel >= 0.0) || rel >= 0.9)
                throw std::invalid_argument("A_factor: series_cutoff too small to certify tail");
            tail_bound += -std::log1p(-rel);

            const complex<double> w1 = 1.0 - q1 * inv_sqrt_p_[i];      // 1 - p^{-1-s1}
            const complex<double> w2 = 1.0 - q2 * inv_sqrt_p_[i];      // 1 - p^{-1-s2}
            const complex<double> w12 = 1.0 - q1 * q2;                 // 1 - p^{-1-s1-s2}
            const complex<double> pref = quarter_root_[i] * w12 / (std::sqrt(w1) * std::sqrt(w2));
            value *= pref * S;
        }
        return {value, tail_bound, Y_, cutoff_};
    }

private:
    int64_t Y_;
    int cutoff_;
    std::vector<double> p_, ln_p_, inv_sqrt_p_, quarter_root_;
    std::vector<double> dd_;  // d_{-1/2}(p^m), independent of p
};

inline EulerProductValue A_factor(ComplexPoint s1, ComplexPoint s2, int64_t Y,
                                  const arith::PrimeTable& table, int series_cutoff = 40) {
    return ArithmeticFactor(Y, table, series_cutoff).eval(s1, s2);
}

// Factored form of F: A(s1,s2,Y) zeta(1+s1+s2) prod_{p<=Y} (1-1/p)^{-1/4}
// (1-p^{-1-s1})^{1/2} (1-p^{-1-s2})^{1/2}. Real-axis points only, since the
// zeta factor is evaluated by zeta_real.
inline complex<double> F_factored(ComplexPoint s1, ComplexPoint s2, int64_t Y,
                                  const arith::PrimeTable& table, int series_cutoff = 40) {
    if (s1.t != 0.0 || s2.t != 0.0)
        throw std::domain_error("F_factored: off-axis points need complex zeta (unsupported)");
    if (!(s1.sigma + s2.sigma > 0.0))
        throw std::domain_error("F_factored: requires Re(s1+s2) > 0");
    EulerProductValue A = (Y >= 2) ? A_factor(s1, s2, Y, table, series_cutoff)
                                   : EulerProductValue{{1.0, 0.0}, 0.0, Y, series_cutoff};
    double prod = 1.0;
    for (int64_t p : table.primes) {
        if (p > Y) break;
        double pd = static_cast<double>(p);
        prod *= std::pow(1.0 - 1.0 / pd, -0.25)
              * std::sqrt(1.0 - std::pow(pd, -1.0 - s1.sigma))
              * std::sqrt(1.0 - std::pow(pd, -1.0 - s2.sigma));
    }
    return A.value * zeta_real(1.0 + s1.sigma + s2.sigma) * prod;
}

// Defining series of F, brute-forced over m_j in S(Y) cap [1, m_limit] and
// n_j <= n_limit under the constraint m1 n1 = m2 n2. Truncation-only
// accuracy; used as the cross-check oracle for F_factored.
inline complex<double> F_series(ComplexPoint s1, ComplexPoint s2, int64_t Y,
                                int64_t m_limit, int64_t n_limit) {
    std::vector<int64_t> smooth = arith::enumerate_smooth(Y, m_limit);
    arith::PrimeTable table = arith::build_prime_table(std::max<int64_t>(2, m_limit));
    std::vector<double> dsm(smooth.size());
    for (size_t i = 0; i < smooth.size(); ++i)
        dsm[i] = arith::divisor_coefficient(arith::DivisorOrder(-0.5),
                                            arith::factorize(smooth[i], table));

    const complex<double> e1 = -(0.5 + s1.value());
    const complex<double> e2 = -(0.5 + s2.value());
    std::vector<complex<double>> pw1(static_cast<size_t>(n_limit) + 1),
                                 pw2(static_cast<size_t>(n_limit) + 1);
    for (int64_t n = 1; n <= n_limit; ++n) {
        double ln = std::log(static_cast<double>(n));
        pw1[static_cast<size_t>(n)] = std::exp(e1 * ln);
        pw2[static_cast<size_t>(n)] = std::exp(e2 * ln);
    }

    NeumaierComplexSum acc;
    for (size_t i = 0; i < smooth.size(); ++i) {
        const int64_t m1 = smooth[i];
        const double c1 = dsm[i] / std::sqrt(static_cast<double>(m1));
        for (int64_t n1 = 1; n1 <= n_limit; ++n1) {
            const int64_t l = m1 * n1;
            const complex<double> base = c1 * pw1[static_cast<size_t>(n1)];
            for (size_t j = 0; j < smooth.size(); ++j) {
                const int64_t m2 = smooth[j];
                if (m2 > l) break;
                if (l % m2 != 0) continue;
                const int64_t n2 = l / m2;
                if (n2 > n_limit) continue;
                acc.add(base * (dsm[j] / std::sqrt(static_cast<double>(m2)))
                             * pw2[static_cast<size_t>(n2)]);
            }
        }
    }
    return acc.value();
}

}
