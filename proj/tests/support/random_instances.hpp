#pragma once

#include <hrql/instance.hpp>

#include <cstdint>
#include <random>

namespace hrql::test {

struct RandomSpec {
    int max_n = 7;
    int max_m = 5;
    int max_lower = 2;
    int min_lower = 1;
    double density_lo = 0.3, density_hi = 0.9; // acceptability probability range
    double bounded_prob = 0.5;                 // chance a hospital gets a finite upper quota
    bool resident_ties = false;
    bool hospital_ties = false;
    bool indifferent = false;                  // HA shape
    int min_n = 1, min_m = 1;
};

Instance random_instance(const RandomSpec &spec, std::mt19937_64 &rng);

// Large strict instance with every l <= 2 for the performance check.
Instance random_large_q2(int n, int m, int list_len, std::uint64_t seed);

} // namespace hrql::test
