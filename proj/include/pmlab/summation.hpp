#pragma once
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace pmlab {

// Neumaier-compensated accumulator. Error stays O(eps) independent of the
// number of terms, which the 1e-10..1e-12 assertions on O(N^2) sums need.
class NeumaierSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class NeumaierComplexSum {
public:
    void add(std::complex<double> z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    NeumaierSum re_, im_;
};

// Pairwise reduction with a shape fixed by element index only. Combining
// per-block partials through this gives results independent of how many
// workers produced them.
inline double pairwise_sum(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    if (xs.size() == 1) return xs[0];
    size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

inline double pairwise_max(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    if (xs.size() == 1) return xs[0];
    size_t half = xs.size() / 2;
    return std::max(pairwise_max(xs.first(half)), pairwise_max(xs.subspan(half)));
}

}
