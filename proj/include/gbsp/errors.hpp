#pragma once

#include <stdexcept>
#include <string>

namespace gbsp {

// Input file could not be parsed or violates a format contract.
struct GraphError : std::runtime_error {
    explicit GraphError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid run configuration (flags, generator specs, mode mismatches).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Fatal condition raised while an engine is executing.
struct EngineError : std::runtime_error {
    explicit EngineError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gbsp
