#pragma once

#include <stdexcept>
#include <string>

namespace specband {

// Invalid or inconsistent experiment configuration. The message names the
// offending field so CLI diagnostics can be acted on directly.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem-level failure (unreadable config, unwritable output directory).
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace specband
