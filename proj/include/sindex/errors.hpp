#pragma once

#include <stdexcept>
#include <string>

namespace sindex {

// Numerical failures (singularity, non-convergence, separation).
// Domain/validation problems use std::invalid_argument / std::domain_error.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

class singular_error : public numeric_error {
public:
    explicit singular_error(const std::string& msg) : numeric_error(msg) {}
};

class convergence_error : public numeric_error {
public:
    explicit convergence_error(const std::string& msg) : numeric_error(msg) {}
};

class separation_error : public numeric_error {
public:
    explicit separation_error(const std::string& msg) : numeric_error(msg) {}
};

}  // namespace sindex
