#include "rmm/arith.hpp"

#include "rmm/error.hpp"

#include <cctype>

namespace rmm {

std::optional<unsigned long> valuation(const Integer& n, unsigned long p) {
    if (n == 0) return std::nullopt;
    if (p == 2) return mpz_scan1(n.get_mpz_t(), 0);
    Integer m = n;
    unsigned long v = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++v;
    }
    return v;
}

std::optional<unsigned long> valuation(const Integer& n, const Integer& p) {
    if (n == 0) return std::nullopt;
    if (p.fits_ulong_p()) return valuation(n, p.get_ui());
    Integer rest;
    return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

bool valuation_at_least(const Integer& n, unsigned long p, unsigned long k) {
    auto v = valuation(n, p);
    return !v || *v >= k;
}

unsigned long residue(const Integer& n, unsigned long m) {
    return mpz_fdiv_ui(n.get_mpz_t(), m);
}

std::optional<Integer> exact_quotient(const Integer& n, const Integer& d) {
    if (d == 0 || !mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) return std::nullopt;
    Integer q;
    mpz_divexact(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

Integer power(const Integer& base, unsigned long exponent) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

Integer gcd_of(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer parse_integer(std::string_view text) {
    std::size_t start = 0;
    if (!text.empty() && (text[0] == '-' || text[0] == '+')) start = 1;
    if (start == text.size()) fail(ErrorCode::InvalidArgument, "empty integer literal");
    for (std::size_t i = start; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            fail(ErrorCode::InvalidArgument,
                 "not an integer: '" + std::string(text) + "'");
        }
    }
    std::string digits(text[0] == '+' ? text.substr(1) : text);
    return Integer(digits, 10);
}

std::string to_string(const Integer& n) { return n.get_str(); }

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace rmm
