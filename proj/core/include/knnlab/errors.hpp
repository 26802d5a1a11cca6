#pragma once

#include <stdexcept>
#include <string>

namespace knnlab {

// Mathematically infeasible parameters (L > L_max, ln g >= 0, trap outside
// the square, ...). Maps to CLI exit code 2.
class infeasible_error : public std::runtime_error {
public:
    explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failures, always carrying the offending path. Exit code 3.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace knnlab
