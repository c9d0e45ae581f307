#pragma once

#include <stdexcept>
#include <string>

namespace torgeo {

enum class errc {
    not_prime,
    not_primitive_polynomial,
    no_default_modulus,
    equal_points,
    zero_vector,
    not_prime_power,
    modulus_too_large,
    dimension_mismatch,
    budget_exceeded,
    bad_decomposition,
    bad_input,
};

/// Library-wide error type carrying a machine-readable code.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace torgeo
