#pragma once

#include <stdexcept>
#include <string>

namespace equising {

// Failure categories map onto CLI exit codes (see cli.hpp).
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct usage_error : error {
    using error::error;
};
struct resource_error : error {
    using error::error;
};
struct precondition_error : error {
    using error::error;
};
struct verification_error : error {
    using error::error;
};

struct ZeroDivision : precondition_error {
    ZeroDivision() : precondition_error("division by zero") {}
};
struct FieldTooLarge : resource_error {
    using resource_error::resource_error;
};
struct PrecisionCap : resource_error {
    using resource_error::resource_error;
};
struct BoxTooLarge : resource_error {
    using resource_error::resource_error;
};
struct DenominatorCap : resource_error {
    using resource_error::resource_error;
};

struct ParseError : usage_error {
    ParseError(const std::string& what, std::size_t pos)
        : usage_error(what + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};
struct NonPositiveWeight : usage_error {
    using usage_error::usage_error;
};

struct NotApproximableInput : precondition_error {
    using precondition_error::precondition_error;
};
struct EpsilonTooLarge : precondition_error {
    using precondition_error::precondition_error;
};
struct PreconditionMemberExponent : precondition_error {
    using precondition_error::precondition_error;
};
struct NonIntegrableTerm : precondition_error {
    using precondition_error::precondition_error;
};
struct DegenerateRegion : precondition_error {
    using precondition_error::precondition_error;
};

struct CertificateMismatch : verification_error {
    using verification_error::verification_error;
};
struct MonotonicityViolation : verification_error {
    using verification_error::verification_error;
};

}  // namespace equising
