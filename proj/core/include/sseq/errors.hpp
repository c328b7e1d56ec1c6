#pragma once

#include <stdexcept>
#include <string>

namespace sseq {

struct SubgroupViolation : std::runtime_error {
    explicit SubgroupViolation(const std::string& what) : std::runtime_error(what) {}
};

struct NotWellDefined : std::runtime_error {
    explicit NotWellDefined(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidGroupTable : std::runtime_error {
    explicit InvalidGroupTable(const std::string& what) : std::runtime_error(what) {}
};

struct ExactnessViolation : std::runtime_error {
    explicit ExactnessViolation(const std::string& what) : std::runtime_error(what) {}
};

struct NoPeriodicityDeclared : std::runtime_error {
    explicit NoPeriodicityDeclared(const std::string& what) : std::runtime_error(what) {}
};

struct NontrivialActionUnsupported : std::runtime_error {
    explicit NontrivialActionUnsupported(const std::string& what) : std::runtime_error(what) {}
};

struct NotACover : std::runtime_error {
    explicit NotACover(const std::string& what) : std::runtime_error(what) {}
};

struct NotFiltrationAdditive : std::runtime_error {
    explicit NotFiltrationAdditive(const std::string& what) : std::runtime_error(what) {}
};

/* Malformed input files / schema violations. */
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sseq
