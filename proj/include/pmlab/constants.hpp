#pragma once
#include <cmath>

namespace pmlab {

// Shared mathematical constants. gamma is a 20-digit literal; e^gamma is
// derived from it once at first use so the two can never disagree.
struct MathConstants {
    static constexpr double euler_gamma = 0.57721566490153286061;

    static double exp_gamma() {
        static const double value = std::exp(euler_gamma);
        return value;
    }

    static constexpr double pi = 3.14159265358979323846;
};

}
