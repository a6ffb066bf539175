#pragma once

#include <stdexcept>
#include <string>

namespace demonwalk {

/// Invalid experiment/CLI configuration. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A precondition of a domain operation was violated (bad grid index,
/// degenerate geometry, forced-move scoring, ...). CLI exit code 1.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace demonwalk
