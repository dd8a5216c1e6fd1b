#pragma once

#include <stdexcept>
#include <string>

namespace qs {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : Error {
    using Error::Error;
};
struct DivisionByZero : Error {
    using Error::Error;
};
struct NotConverged : Error {
    using Error::Error;
};
struct OutsideAnnulus : Error {
    using Error::Error;
};
struct DegenerateNodes : Error {
    using Error::Error;
};
struct ZeroCountMismatch : Error {
    using Error::Error;
};
struct NewtonStall : Error {
    using Error::Error;
};
struct ProbeDegenerate : Error {
    using Error::Error;
};
struct BranchJump : Error {
    using Error::Error;
};
struct NearBranchPoint : Error {
    using Error::Error;
};
struct QuadratureFail : Error {
    using Error::Error;
};
struct BranchPointHit : Error {
    using Error::Error;
};
struct PoleHit : Error {
    using Error::Error;
};
struct GuardFailed : Error {
    using Error::Error;
};

}  // namespace qs
