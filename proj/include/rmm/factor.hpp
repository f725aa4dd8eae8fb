#pragma once

#include "rmm/arith.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace rmm {

/// Effort limits for integer factorization.
///
/// Trial division runs up to `trial_bound`; whatever cofactor remains is split
/// with Pollard-Brent, each attempt capped at `rho_iterations` steps. When all
/// `rho_attempts` fail the factorization raises FactorizationTooHard.
struct FactorOptions {
    std::uint64_t trial_bound = 1'000'000;
    std::uint64_t rho_iterations = 2'000'000;
    unsigned rho_attempts = 8;
};

using Factorization = std::vector<std::pair<Integer, unsigned long>>;

// Prime factorization of |n| in increasing prime order. n must be nonzero.
Factorization factorize(const Integer& n, const FactorOptions& options = {});

std::vector<Integer> prime_support(const Integer& n, const FactorOptions& options = {});

bool is_squarefree(const Integer& n, const FactorOptions& options = {});
bool is_cubefree(const Integer& n, const FactorOptions& options = {});

}  // namespace rmm
