#pragma once

#include <stdexcept>
#include <string>

namespace defalg {

/* Base error for all contract violations. */
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/* A window/cap was too small to represent an exact result.  Never silently truncated. */
struct WindowError : Error {
    explicit WindowError(const std::string& msg) : Error(msg) {}
};

/* Structural validation failure (axioms, identities) carrying a witness description. */
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw Error(msg);
}

} // namespace defalg
