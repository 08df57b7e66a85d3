#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gch {

// Error categories map onto CLI exit codes: input 2, verification 3, capacity 4.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct capacity_error : std::runtime_error {
    explicit capacity_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct certification_error : std::runtime_error {
    explicit certification_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Runtime limits. Defaults keep the heaviest supported computation (k = 7
// complexes) inside desktop memory; everything beyond raises capacity_error.
struct limits {
    static constexpr int max_nodes = 12;                 // edge slots must fit the 128-bit mask
    static constexpr int64_t max_exact_nonzeros = 50000; // ExactInt refusal threshold
    static constexpr int64_t max_scan_masks = 1 << 26;   // combinations scanned per complex build
    static constexpr int64_t max_generators_per_degree = 5000000;
    static constexpr int64_t max_dense_solve_dim = 512;  // dense integer SNF with transforms
    static constexpr int lambda_max_part = 7;            // largest factor complex in a join
    static constexpr uint32_t cert_prime_1 = 2147483647; // default certified primes
    static constexpr uint32_t cert_prime_2 = 2147483629;
};

int64_t binomial(int n, int r);

// ExactInt refusal threshold; defaults to limits::max_exact_nonzeros.
int64_t exact_nonzero_limit();
void set_exact_nonzero_limit(int64_t n);

} // namespace gch
