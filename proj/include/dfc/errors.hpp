#pragma once

#include <stdexcept>
#include <string>

namespace dfc {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input (L, P) violates one of the standing assumptions on the pair.
struct validation_error : error {
    enum class kind { not_squarefree, constant_field_divisor, leading_coeff_clash, bad_shape };
    kind which;
    validation_error(kind k, const std::string& msg) : error(msg), which(k) {}
};

// Modular arithmetic hit a denominator divisible by the chosen prime.
struct bad_prime_error : error {
    unsigned long long prime;
    explicit bad_prime_error(unsigned long long p)
        : error("bad prime " + std::to_string(p) + " divides a denominator"), prime(p) {}
};

struct singular_point_error : error {
    using error::error;
};

struct truncation_error : error {
    using error::error;
};

struct internal_error : error {
    using error::error;
};

} // namespace dfc
