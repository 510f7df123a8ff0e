#pragma once

#include <stdexcept>
#include <string>

namespace crossfam {

// Error taxonomy shared by all modules. Everything derives from std::runtime_error
// so callers that don't care can catch one type.

struct InvalidSubset : std::runtime_error {
    explicit InvalidSubset(const std::string& what) : std::runtime_error(what) {}
};

struct SpecMismatch : std::runtime_error {
    explicit SpecMismatch(const std::string& what) : std::runtime_error(what) {}
};

// Raised whenever an enumeration / solver call would exceed its budget.
// Budgets are strict: we never silently truncate.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct NotIndependent : std::runtime_error {
    explicit NotIndependent(const std::string& what) : std::runtime_error(what) {}
};

struct EmptySubset : std::runtime_error {
    explicit EmptySubset(const std::string& what) : std::runtime_error(what) {}
};

struct PreconditionFailed : std::runtime_error {
    explicit PreconditionFailed(const std::string& what) : std::runtime_error(what) {}
};

struct NoImprimitiveShape : std::runtime_error {
    explicit NoImprimitiveShape(const std::string& what) : std::runtime_error(what) {}
};

} // namespace crossfam
