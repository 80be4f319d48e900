#pragma once

#include <stdexcept>
#include <string>

namespace chaocipher {

/// Unreadable file, unsupported or lossy container, malformed pixel data.
class ImageError : public std::runtime_error {
public:
    explicit ImageError(const std::string& what) : std::runtime_error(what) {}
};

/// Missing or malformed key material.
class KeyError : public std::runtime_error {
public:
    explicit KeyError(const std::string& what) : std::runtime_error(what) {}
};

/// The permutation stage requires M == N.
class NonSquareError : public std::runtime_error {
public:
    explicit NonSquareError(const std::string& what) : std::runtime_error(what) {}
};

/// A chaotic trajectory escaped to a non-finite value; the key is unusable.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, std::size_t step)
        : std::runtime_error(what), step_(step) {}
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// Two images that must share dimensions do not.
class DimensionMismatchError : public std::runtime_error {
public:
    explicit DimensionMismatchError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace chaocipher
