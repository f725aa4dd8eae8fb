#include "rmm/factor.hpp"

#include "rmm/error.hpp"

#include <algorithm>
#include <map>
#include <span>

namespace rmm {
namespace {

constexpr std::uint64_t kDefaultSieveLimit = 1'000'000;
// p*p must fit in 64 bits during trial division.
constexpr std::uint64_t kMaxTrialBound = 4'000'000'000ULL;

std::vector<std::uint64_t> sieve(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

const std::vector<std::uint64_t>& default_primes() {
    static const std::vector<std::uint64_t> primes = sieve(kDefaultSieveLimit);
    return primes;
}

using FactorMap = std::map<Integer, unsigned long>;

std::optional<Integer> pollard_brent(const Integer& n, unsigned long c, std::uint64_t max_steps) {
    Integer y = 2, x, ys, q = 1, g = 1, diff;
    std::uint64_t r = 1, steps = 0;
    const std::uint64_t m = 128;
    auto step = [&](Integer& v) {
        v = v * v + c;
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    do {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) step(y);
        std::uint64_t k = 0;
        do {
            ys = y;
            std::uint64_t batch = std::min(m, r - k);
            for (std::uint64_t i = 0; i < batch; ++i) {
                step(y);
                diff = x - y;
                mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
                q *= diff;
                mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            g = gcd_of(q, n);
            k += batch;
            steps += batch;
            if (steps > max_steps) return std::nullopt;
        } while (k < r && g == 1);
        r *= 2;
    } while (g == 1);
    if (g == n) {
        do {
            step(ys);
            diff = x - ys;
            mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
            g = gcd_of(diff, n);
        } while (g == 1);
    }
    if (g == n) return std::nullopt;
    return g;
}

// n > 1 and free of primes below the trial bound.
void split_cofactor(const Integer& n, unsigned long multiplicity, FactorMap& out,
                    const FactorOptions& options) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
        out[n] += multiplicity;
        return;
    }
    if (mpz_perfect_power_p(n.get_mpz_t()) != 0) {
        const auto bits = mpz_sizeinbase(n.get_mpz_t(), 2);
        for (unsigned long k = bits; k >= 2; --k) {
            Integer root;
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
                split_cofactor(root, multiplicity * k, out, options);
                return;
            }
        }
    }
    for (unsigned attempt = 0; attempt < options.rho_attempts; ++attempt) {
        auto g = pollard_brent(n, 1 + 2 * attempt, options.rho_iterations);
        if (!g) continue;
        Integer rest = n / *g;
        split_cofactor(*g, multiplicity, out, options);
        split_cofactor(rest, multiplicity, out, options);
        return;
    }
    fail(ErrorCode::FactorizationTooHard,
         "could not split " + n.get_str() + " within the configured effort");
}

}  // namespace

Factorization factorize(const Integer& n, const FactorOptions& options) {
    if (n == 0) fail(ErrorCode::InvalidArgument, "cannot factor zero");
    Integer rest = abs(n);
    FactorMap out;

    const std::uint64_t bound = std::min(options.trial_bound, kMaxTrialBound);
    std::vector<std::uint64_t> local;
    std::span<const std::uint64_t> primes;
    if (bound <= kDefaultSieveLimit) {
        const auto& all = default_primes();
        primes = std::span(all.begin(), std::upper_bound(all.begin(), all.end(), bound));
    } else {
        local = sieve(bound);
        primes = local;
    }

    bool cofactor_is_prime = false;
    for (std::uint64_t p : primes) {
        if (rest == 1) break;
        if (mpz_cmp_ui(rest.get_mpz_t(), p * p) < 0) {
            cofactor_is_prime = true;
            break;
        }
        if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
        unsigned long e = 0;
        do {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++e;
        } while (mpz_divisible_ui_p(rest.get_mpz_t(), p));
        out[Integer(static_cast<unsigned long>(p))] += e;
    }
    if (rest != 1) {
        if (cofactor_is_prime) {
            out[rest] += 1;
        } else {
            split_cofactor(rest, 1, out, options);
        }
    }
    return Factorization(out.begin(), out.end());
}

std::vector<Integer> prime_support(const Integer& n, const FactorOptions& options) {
    std::vector<Integer> primes;
    for (auto& [p, e] : factorize(n, options)) primes.push_back(p);
    return primes;
}

bool is_squarefree(const Integer& n, const FactorOptions& options) {
    if (n == 0) return false;
    for (auto& [p, e] : factorize(n, options)) {
        if (e > 1) return false;
    }
    return true;
}

bool is_cubefree(const Integer& n, const FactorOptions& options) {
    if (n == 0) return false;
    for (auto& [p, e] : factorize(n, options)) {
        if (e > 2) return false;
    }
    return true;
}

}  // namespace rmm
