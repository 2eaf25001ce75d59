#pragma once

#include <stdexcept>
#include <string>

namespace igusa {

// Error categories map to CLI exit codes: validation -> 2,
// engine precondition -> 3, resource ceiling -> 4.
enum class ErrorCategory { Validation, Precondition, Resource, Internal };

class Error : public std::runtime_error {
public:
    Error(ErrorCategory cat, const std::string& what)
        : std::runtime_error(what), category_(cat) {}
    ErrorCategory category() const { return category_; }

private:
    ErrorCategory category_;
};

struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error(ErrorCategory::Validation, "parse error: " + w) {}
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& w) : Error(ErrorCategory::Validation, "validation error: " + w) {}
};

struct CertificateMissing : Error {
    explicit CertificateMissing(const std::string& w)
        : Error(ErrorCategory::Validation, "certificate missing: " + w) {}
};

struct PreconditionViolated : Error {
    explicit PreconditionViolated(const std::string& w)
        : Error(ErrorCategory::Precondition, "precondition violated: " + w) {}
};

struct HypothesisViolated : Error {
    explicit HypothesisViolated(const std::string& w)
        : Error(ErrorCategory::Precondition, "hypothesis violated: " + w) {}
};

struct DegenerateInput : Error {
    explicit DegenerateInput(const std::string& w)
        : Error(ErrorCategory::Precondition, "degenerate input: " + w) {}
};

struct DegenerateFace : Error {
    explicit DegenerateFace(const std::string& w)
        : Error(ErrorCategory::Precondition, "degenerate face: " + w) {}
};

struct DepthLimitExceeded : Error {
    explicit DepthLimitExceeded(const std::string& w)
        : Error(ErrorCategory::Precondition, "depth limit exceeded: " + w) {}
};

struct EnumLimitExceeded : Error {
    explicit EnumLimitExceeded(const std::string& w)
        : Error(ErrorCategory::Resource, "enumeration limit exceeded: " + w) {}
};

struct DimensionTooLarge : Error {
    explicit DimensionTooLarge(const std::string& w)
        : Error(ErrorCategory::Resource, "dimension too large: " + w) {}
};

} // namespace igusa
