#pragma once

#include "rmm/curve.hpp"
#include "rmm/factor.hpp"

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace rmm {

/// Subset of the class indices 1..12.
class IndexSet {
public:
    constexpr IndexSet() = default;
    constexpr IndexSet(std::initializer_list<int> indices) {
        for (int i : indices) bits_ |= static_cast<std::uint16_t>(1u << i);
    }
    static constexpr IndexSet range(int lo, int hi) {
        IndexSet s;
        for (int i = lo; i <= hi; ++i) s.bits_ |= static_cast<std::uint16_t>(1u << i);
        return s;
    }

    constexpr bool contains(int i) const { return i >= 1 && i <= 12 && (bits_ >> i) & 1u; }
    constexpr void insert(int i) { bits_ |= static_cast<std::uint16_t>(1u << i); }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr IndexSet operator|(IndexSet o) const { return from_bits(bits_ | o.bits_); }
    constexpr IndexSet operator&(IndexSet o) const { return from_bits(bits_ & o.bits_); }
    constexpr bool subset_of(IndexSet o) const { return (bits_ & ~o.bits_) == 0; }
    int size() const;
    std::vector<int> to_vector() const;
    // "1,3,5,7-12"
    std::string to_string() const;

    friend constexpr bool operator==(IndexSet, IndexSet) = default;

private:
    static constexpr IndexSet from_bits(unsigned bits) {
        IndexSet s;
        s.bits_ = static_cast<std::uint16_t>(bits);
        return s;
    }
    std::uint16_t bits_ = 0;
};

/// One of R1..R12: the (a1, a2, a3) of a reduced minimal model.
struct RmmClass {
    int index;
    int a1;
    int a2;
    int a3;

    static RmmClass from_index(int index);
    static RmmClass from_triple(int a1, int a2, int a3);

    friend bool operator==(const RmmClass&, const RmmClass&) = default;
};

/// alpha * c4 + beta * c6 + gamma
struct AffineForm {
    long c4;
    long c6;
    long constant;

    Integer eval(const Integer& c4v, const Integer& c6v) const;
};

struct CongruenceProfile {
    int index;
    unsigned c4_residue;   // modulo 48
    unsigned c6_residue;   // modulo c6_modulus
    unsigned c6_modulus;   // 864, 288 or 72
    unsigned c6_mod24_key; // 2^(a1-1) c6 mod 24
    AffineForm a;          // a4 = -A / 48
    AffineForm b;          // a6 = -B / 1728
};

// Kraus's conditions at 2 and 3. Throws NotASignature when 1728 does not
// divide c4^3 - c6^2 or the difference is zero.
bool kraus_admissible(const Integer& c4, const Integer& c6);

// Local part of the conditions at p in {2, 3}; includes v_p(c4^3 - c6^2)
// being large enough for Delta to be integral at p.
bool admissible_at(unsigned long p, const Integer& c4, const Integer& c6);

struct Minimization {
    Signature minimal;
    Integer u;
};

// Largest u with (c4/u^4, c6/u^6) still the signature of an integral model.
Minimization minimize(const Signature& sig, const FactorOptions& options = {});

// Laska-Kraus-Connell reduction of a minimal signature. Throws NotMinimal.
WeierstrassModel lkc_reduce(const Signature& minimal);

// Class from the residue of 2^(a1-1) c6 mod 24. Throws NotMinimal.
RmmClass rmm_index(const Signature& minimal);

// Class whose 2^(a1-1) c6 mod 24 key equals `key`, if any.
std::optional<int> class_from_key(unsigned key);

// Closed-form reduced model a4 = -A_i/48, a6 = -B_i/1728. Throws NotMinimal.
WeierstrassModel reduced_model(const Signature& minimal);

const CongruenceProfile& congruence_profile(int index);

// Classes compatible with the given reduction type at p in {2, 3}.
IndexSet allowed_indices_for_reduction(unsigned long p, ReductionType type);

}  // namespace rmm
