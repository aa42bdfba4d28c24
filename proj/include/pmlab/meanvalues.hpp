#pragma once
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "pmlab/arith.hpp"
#include "pmlab/constants.hpp"
#include "pmlab/errors.hpp"
#include "pmlab/products.hpp"
#include "pmlab/summation.hpp"

namespace pmlab::meanvalues {

// Exact mean-value result. truncation_error is certified unless `certified`
// says otherwise; `order` carries k or beta depending on the quantity.
struct DiagonalSumResult {
    double value = 0.0;
    int64_t terms_used = 0;
    double truncation_error = 0.0;
    bool certified = true;
    int64_t N = 0;
    int64_t Y = 0;
    double order = 0.0;
};

struct QuadratureSpec {
    int node_budget = 1 << 16;
    int refinement_factor = 2;
    double tolerance = 1e-7;

    void validate() const {
        if (node_budget < 16) throw std::invalid_argument("QuadratureSpec: node budget must be >= 16");
        if (refinement_factor < 2) throw std::invalid_argument("QuadratureSpec: refinement factor must be >= 2");
        if (!(tolerance > 0.0)) throw std::invalid_argument("QuadratureSpec: tolerance must be positive");
    }
};

// 2k-th pseudomoment diagonal sum. k=1 is the harmonic sum; k=2 groups the
// O(N^2) pairs (n1, n2) by their product l and sums r(l)^2 / l, where r(l)
// counts ordered factorizations l = n1 n2 with both factors <= N.
inline DiagonalSumResult pseudomoment_2k_exact(int64_t N, int k) {
    if (k != 1 && k != 2)
        throw std::invalid_argument("pseudomoment_2k_exact: only k in {1,2} supported");
    if (N < 1) throw std::invalid_argument("pseudomoment_2k_exact: N must be >= 1");
    if (k == 1) {
        if (N > 10'000'000) throw std::out_of_range("pseudomoment_2k_exact: k=1 requires N <= 1e7");
        return {arith::harmonic_sum(N), N, 0.0, true, N, 0, 1.0};
    }
    if (N > 5000) throw std::out_of_range("pseudomoment_2k_exact: k=2 requires N <= 5000");
    const int64_t L = N * N;
    std::vector<uint16_t> count(static_cast<size_t>(L) + 1, 0);
    for (int64_t n1 = 1; n1 <= N; ++n1)
        for (int64_t l = n1; l <= n1 * N; l += n1) ++count[static_cast<size_t>(l)];
    NeumaierSum acc;
    int64_t terms = 0;
    for (int64_t l = 1; l <= L; ++l) {
        uint32_t r = count[static_cast<size_t>(l)];
        if (r == 0) continue;
        ++terms;
        acc.add(static_cast<double>(r) * r / static_cast<double>(l));
    }
    return {acc.value(), terms, 0.0, true, N, 0, 2.0};
}

// J(Y, beta) = prod_{p<=Y} sum_m d_{beta/2}(p^m)^2 / p^m with certified
// geometric tails per local factor (plus a rounding allowance).
inline DiagonalSumResult J_exact(int64_t Y, double beta, const arith::PrimeTable& table,
                                 int series_cutoff = 40) {
    if (beta < 0.0) throw std::invalid_argument("J_exact: beta must be >= 0");
    if (Y > table.limit) throw std::out_of_range("J_exact: Y exceeds sieve limit");
    double value = 1.0;
    double rel = 0.0;
    int64_t terms = 0;
    for (int64_t p : table.primes) {
        if (p > Y) break;
        auto local = products::detail::divisor_square_series(beta / 2.0, static_cast<double>(p),
                                                             series_cutoff);
        value *= local.sum;
        rel += local.rel_tail + (2.0 * local.terms + 4.0) * 0x1p-53;
        terms += local.terms;
    }
    return {value, terms, value * std::expm1(rel), true, 0, Y, beta};
}

namespace detail {

// Local factor of the t-sum in the pair decomposition of I(N, Y):
//   L(p, a, b) = sum_{k>=0} d_{-1/2}(p^{k+a}) d_{-1/2}(p^{k+b}) p^{-k}.
struct TLocal {
    double value;
    double abs_tail;  // certified bound on the omitted k-tail
};

inline TLocal t_local_factor(const std::vector<double>& dd, double p, int a, int b, int cutoff) {
    double sum = 0.0, pk = 1.0;
    int k = 0;
    for (; k <= cutoff; ++k) {
        sum += dd[static_cast<size_t>(k + a)] * dd[static_cast<size_t>(k + b)] * pk;
        pk /= p;
    }
    // |d_{-1/2}| <= 1, so the omitted tail is at most sum_{j>cutoff} p^{-j}
    return {sum, pk * p / (p - 1.0)};
}

inline DiagonalSumResult i_exact_impl(int64_t N, int64_t Y, const arith::PrimeTable& table,
                                      int series_cutoff, bool swap_loops) {
    if (N < 1) throw std::invalid_argument("I_exact: N must be >= 1");
    if (N > 3000) throw std::out_of_range("I_exact: N must be <= 3000 (O(N^2) pair loop)");
    if (Y > table.limit || N > table.limit)
        throw std::out_of_range("I_exact: N and Y must be within the sieve limit");

    if (Y < 2) {
        // mollifier is the empty product
        return {arith::harmonic_sum(N), N, 0.0, true, N, Y, 2.0};
    }

    std::vector<int64_t> primes;
    for (int64_t p : table.primes) {
        if (p > Y) break;
        primes.push_back(p);
    }
    const std::vector<double> dd = arith::divisor_coefficients(-0.5, series_cutoff + 40);

    std::unordered_map<uint64_t, TLocal> memo;
    auto local = [&](int64_t p, int a, int b) -> const TLocal& {
        uint64_t key = (static_cast<uint64_t>(p) << 24)
                     | (static_cast<uint64_t>(a) << 12) | static_cast<uint64_t>(b);
        auto it = memo.find(key);
        if (it == memo.end())
            it = memo.emplace(key, t_local_factor(dd, static_cast<double>(p), a, b, series_cutoff)).first;
        return it->second;
    };

    double base_product = 1.0;
    double base_rel = 0.0;
    for (int64_t p : primes) {
        const TLocal& f = local(p, 0, 0);
        base_product *= f.value;
        base_rel += f.abs_tail / f.value;  // L(p,0,0) >= 1
    }

    // prime factors (p, ord) of x, or empty if x has a prime factor > Y
    auto smooth_factors = [&](int64_t x, std::vector<std::pair<int64_t, int>>& out) -> bool {
        out.clear();
        while (x > 1) {
            int64_t p = table.spf[static_cast<size_t>(x)];
            if (p > Y) return false;
            int e = 0;
            while (x % p == 0) { x /= p; ++e; }
            out.push_back({p, e});
        }
        return true;
    };

    NeumaierSum acc;
    double err = 0.0;
    int64_t terms = 0;
    std::vector<std::pair<int64_t, int>> fu, fv;
    for (int64_t outer = 1; outer <= N; ++outer) {
        for (int64_t inner = 1; inner <= N; ++inner) {
            const int64_t n1 = swap_loops ? inner : outer;
            const int64_t n2 = swap_loops ? outer : inner;
            const int64_t g = std::gcd(n1, n2);
            const int64_t u = n1 / g, v = n2 / g;
            if (!smooth_factors(u, fu) || !smooth_factors(v, fv)) continue;
            double T = base_product;
            double rel = base_rel;
            for (const auto& [p, e] : fv) {  // a_p = ord_p(v)
                const TLocal& num = local(p, e, 0);
                const TLocal& den = local(p, 0, 0);
                T *= num.value / den.value;
                rel += (num.abs_tail + den.abs_tail) / std::max(std::abs(num.value), 1e-3);
            }
            for (const auto& [p, e] : fu) {  // b_p = ord_p(u)
                const TLocal& num = local(p, 0, e);
                const TLocal& den = local(p, 0, 0);
                T *= num.value / den.value;
                rel += (num.abs_tail + den.abs_tail) / std::max(std::abs(num.value), 1e-3);
            }
            const double contrib =
                T / (std::sqrt(static_cast<double>(n1) * n2) * std::sqrt(static_cast<double>(u) * v));
            acc.add(contrib);
            err += std::abs(contrib) * rel * 2.0;
            ++terms;
        }
    }
    return {acc.value(), terms, err, true, N, Y, 2.0};
}

// 8-point Gauss-Legendre rule on [-1, 1].
inline constexpr double kGL8Node[8] = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
     0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
inline constexpr double kGL8Weight[8] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

}  // namespace detail

// I(N, Y) as the exact defining sum, evaluated through the gcd/coprime-part
// parametrization: a pair (n1, n2) with u = n1/g, v = n2/g contributes only
// when u and v are Y-smooth, and then contributes
//   (n1 n2)^{-1/2} (u v)^{-1/2} prod_{p<=Y} L(p, ord_p(v), ord_p(u)).
inline DiagonalSumResult I_exact(int64_t N, int64_t Y, const arith::PrimeTable& table,
                                 int series_cutoff = 40) {
    return detail::i_exact_impl(N, Y, table, series_cutoff, false);
}

struct I2Stats {
    double value = 0.0;
    double previous = 0.0;   // value at the previous refinement level
    double last_delta = 0.0;
    int64_t nodes = 0;
    int panels = 0;
    double min_integrand = 0.0;
    double max_abs_imag = 0.0;
};

// Diagnostic integral I2(Y): adaptive Gauss-Legendre panels, geometrically
// graded toward t = 1/log Y, of (1/pi) A(it,-it,Y) |prod_{p<=Y}(1-p^{-1-it})| / t^2
// over [1/log Y, log Y]. Refines until successive values agree to `tolerance`.
inline double I2_numeric(int64_t Y, const QuadratureSpec& spec, const arith::PrimeTable& table,
                         I2Stats* stats = nullptr) {
    spec.validate();
    if (Y < 3) throw std::domain_error("I2_numeric: requires Y >= 3");
    if (Y > table.limit) throw std::out_of_range("I2_numeric: Y exceeds sieve limit");

    const products::ArithmeticFactor A(Y, table, 40);
    const double t0 = 1.0 / std::log(static_cast<double>(Y));
    const double t1 = std::log(static_cast<double>(Y));

    double min_integrand = std::numeric_limits<double>::infinity();
    double max_imag = 0.0;
    auto integrand = [&](double t) {
        products::EulerProductValue a = A.eval({0.0, t}, {0.0, -t});
        max_imag = std::max(max_imag, std::abs(a.value.imag()));
        double zr = std::abs(products::zeta_Y_recip({1.0, t}, Y, table));
        double f = a.value.real() * zr / (MathConstants::pi * t * t);
        min_integrand = std::min(min_integrand, f);
        return f;
    };

    auto level = [&](int panels) {
        const double r = std::pow(t1 / t0, 1.0 / panels);
        NeumaierSum total;
        double a = t0;
        for (int i = 0; i < panels; ++i) {
            const double b = a * r;
            const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            for (int j = 0; j < 8; ++j)
                total.add(detail::kGL8Weight[j] * half * integrand(mid + half * detail::kGL8Node[j]));
            a = b;
        }
        return total.value();
    };

    int panels = 16;
    while (static_cast<int64_t>(panels) * 8 > spec.node_budget && panels > 1) panels /= 2;
    int64_t nodes = 0;
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (;;) {
        double value = level(panels);
        nodes += static_cast<int64_t>(panels) * 8;
        if (!std::isnan(prev) && std::abs(value - prev) < spec.tolerance) {
            if (stats) {
                *stats = {value, prev, std::abs(value - prev), nodes, panels,
                          min_integrand, max_imag};
            }
            return value;
        }
        int next = panels * spec.refinement_factor;
        if (nodes + static_cast<int64_t>(next) * 8 > spec.node_budget)
            throw budget_exceeded("I2_numeric: node budget exceeded before convergence",
                                  prev, value);
        prev = value;
        panels = next;
    }
}

}
