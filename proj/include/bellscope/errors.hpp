#pragma once

#include <stdexcept>
#include <string>

namespace bellscope {

// Base class for all library errors. `code()` is stable across versions and
// is what the CLI prints next to the message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

struct NonNormalizedModel : Error {
    explicit NonNormalizedModel(const std::string& what)
        : Error("non-normalized-model", what) {}
};

struct NonNormalized : Error {
    explicit NonNormalized(const std::string& what) : Error("non-normalized", what) {}
};

struct ScenarioMismatch : Error {
    explicit ScenarioMismatch(const std::string& what)
        : Error("scenario-mismatch", what) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error("domain-error", what) {}
};

struct OutcomeArityError : Error {
    explicit OutcomeArityError(const std::string& what)
        : Error("outcome-arity", what) {}
};

struct CapExceeded : Error {
    explicit CapExceeded(const std::string& what) : Error("cap-exceeded", what) {}
};

struct NotMember : Error {
    explicit NotMember(const std::string& what) : Error("not-member", what) {}
};

struct NotLocallyCausal : Error {
    explicit NotLocallyCausal(const std::string& what)
        : Error("not-locally-causal", what) {}
};

struct InvalidState : Error {
    explicit InvalidState(const std::string& what) : Error("invalid-state", what) {}
};

struct EnsembleMismatch : Error {
    explicit EnsembleMismatch(const std::string& what)
        : Error("ensemble-mismatch", what) {}
};

struct MissingCpt : Error {
    explicit MissingCpt(const std::string& what) : Error("missing-cpt", what) {}
};

struct InsufficientSamples : Error {
    explicit InsufficientSamples(const std::string& what)
        : Error("insufficient-samples", what) {}
};

struct UnknownVersion : Error {
    explicit UnknownVersion(const std::string& what)
        : Error("unknown-version", what) {}
};

// Parse errors carry a 1-based line and column.
class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& what)
        : Error("parse-error",
                "line " + std::to_string(line) + ", col " + std::to_string(column) +
                    ": " + what),
          line_(line), column_(column) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

} // namespace bellscope
