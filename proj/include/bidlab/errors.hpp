#pragma once

#include <stdexcept>
#include <string>

namespace bidlab {

// Numeric kernel failures.
struct NoSignChange : std::runtime_error {
    explicit NoSignChange(const std::string& msg) : std::runtime_error(msg) {}
};
struct MaxIterExceeded : std::runtime_error {
    explicit MaxIterExceeded(const std::string& msg) : std::runtime_error(msg) {}
};
struct NonFiniteIntegrand : std::runtime_error {
    explicit NonFiniteIntegrand(const std::string& msg) : std::runtime_error(msg) {}
};

// Landscape / valuation construction and evaluation.
struct InvalidFamily : std::invalid_argument {
    explicit InvalidFamily(const std::string& msg) : std::invalid_argument(msg) {}
};
struct DivergentTail : std::runtime_error {
    explicit DivergentTail(const std::string& msg) : std::runtime_error(msg) {}
};
struct InfiniteTotalVolume : std::runtime_error {
    explicit InfiniteTotalVolume(const std::string& msg) : std::runtime_error(msg) {}
};
struct NoDensity : std::runtime_error {
    explicit NoDensity(const std::string& msg) : std::runtime_error(msg) {}
};
struct Irregular : std::runtime_error {
    explicit Irregular(const std::string& msg) : std::runtime_error(msg) {}
};
struct DomainViolation : std::invalid_argument {
    explicit DomainViolation(const std::string& msg) : std::invalid_argument(msg) {}
};

// Equilibrium solvers.
struct TargetBelowReserve : std::invalid_argument {
    explicit TargetBelowReserve(const std::string& msg) : std::invalid_argument(msg) {}
};
struct ZeroVolume : std::runtime_error {
    explicit ZeroVolume(const std::string& msg) : std::runtime_error(msg) {}
};
struct ViolationFound : std::runtime_error {
    explicit ViolationFound(const std::string& msg) : std::runtime_error(msg) {}
};
struct NoRootInBracket : std::runtime_error {
    explicit NoRootInBracket(const std::string& msg) : std::runtime_error(msg) {}
};

// Simulator.
struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& msg) : std::runtime_error(msg) {}
};
struct AssertionFailure : std::runtime_error {
    explicit AssertionFailure(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace bidlab
