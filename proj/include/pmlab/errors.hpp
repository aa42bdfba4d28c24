#pragma once
#include <stdexcept>
#include <string>

namespace pmlab {

// Thrown when an adaptive routine exhausts its node/iteration budget.
// Carries the last two iterates so the caller can judge how close it got.
class budget_exceeded : public std::runtime_error {
public:
    budget_exceeded(const std::string& what, double previous, double last)
        : std::runtime_error(what), previous_iterate(previous), last_iterate(last) {}

    double previous_iterate;
    double last_iterate;
};

}
