#pragma once

#include "rmm/curve.hpp"
#include "rmm/error.hpp"
#include "rmm/factor.hpp"
#include "rmm/minimal.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace rmm {

/// Mazur's fifteen torsion groups plus the marker C3^0 for the j = 0
/// subfamily y^2 + a y = x^3.
enum class TorsionStructure {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    C9,
    C10,
    C12,
    C2xC2,
    C2xC4,
    C2xC6,
    C2xC8,
    C3_0,
};

inline constexpr std::array<TorsionStructure, 15> kMazurGroups = {
    TorsionStructure::C1,    TorsionStructure::C2,    TorsionStructure::C3,
    TorsionStructure::C4,    TorsionStructure::C5,    TorsionStructure::C6,
    TorsionStructure::C7,    TorsionStructure::C8,    TorsionStructure::C9,
    TorsionStructure::C10,   TorsionStructure::C12,   TorsionStructure::C2xC2,
    TorsionStructure::C2xC4, TorsionStructure::C2xC6, TorsionStructure::C2xC8,
};

std::string_view to_string(TorsionStructure t) noexcept;
// Accepts "C5", "c2xc4", "C2×C8", "C3^0", "C3_0". Throws UnsupportedTorsion.
TorsionStructure parse_torsion(std::string_view name);
unsigned group_order(TorsionStructure t) noexcept;
// Number of parameters a family takes: 1 for C3^0, 3 for C1, C2, C2xC2, else 2.
int parameter_count(TorsionStructure t) noexcept;

/// a = c^3 d^2 e (C3) or a = c^2 d (C4); e is 1 for C4.
struct Decomposition {
    Integer c;
    Integer d;
    Integer e;
};

/// Validated parameters of E_T.
///
/// `d` is the twist parameter for C2 and C2xC2 and the class prefix 1..12 for
/// the generic C1 family; it is zero otherwise.
struct FamilyParameters {
    TorsionStructure torsion;
    Integer a;
    Integer b;
    Integer d;
    std::optional<Decomposition> decomposition;

    std::string to_string() const;
};

// Throws the violated constraint's error code, or DegenerateCurve if the
// resulting model is singular.
FamilyParameters validate_params(TorsionStructure t, const Integer& a, const Integer& b,
                                 const Integer& d = Integer(0), const FactorOptions& options = {});

// Same checks without throwing; std::nullopt means valid and nondegenerate.
std::optional<ErrorCode> parameter_violation(TorsionStructure t, const Integer& a,
                                             const Integer& b, const Integer& d = Integer(0),
                                             const FactorOptions& options = {});

// Normalized parameters for a tuple already accepted by parameter_violation.
FamilyParameters normalized_params(TorsionStructure t, const Integer& a, const Integer& b,
                                   const Integer& d = Integer(0), const FactorOptions& options = {});

// Raw coefficient vector of E_T; no singularity check.
std::array<Integer, 5> family_coefficients(TorsionStructure t, const Integer& a, const Integer& b,
                                           const Integer& d);

// Throws DegenerateCurve.
WeierstrassModel build_model(const FamilyParameters& params);

Signature family_signature(const FamilyParameters& params);

// c^2 d for C3, c for C4, 1 otherwise: the part of the minimizing scale that
// comes from the normalization of a.
Integer base_scale(const FamilyParameters& params);

// Values u / base_scale may take for the family.
std::vector<long> expected_scale_ratios(TorsionStructure t);

}  // namespace rmm
