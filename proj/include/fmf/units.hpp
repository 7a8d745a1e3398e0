#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fmf/rational.hpp"

namespace fmf {

// ---------------------------------------------------------------------------
// Dimension algebra
// ---------------------------------------------------------------------------

enum class BaseDimension : std::size_t {
    length = 0,       // m
    mass,             // kg
    time,             // s
    current,          // A
    temperature,      // K
    amount,           // mol
    luminosity,       // cd
    currency,         // EUR
};

inline constexpr std::size_t kDimensionCount = 8;
inline constexpr std::size_t kPhysicalDimensionCount = 7;

/// Symbols of the base units, indexed by BaseDimension.
inline constexpr std::array<std::string_view, kDimensionCount> kBaseUnitSymbols = {
    "m", "kg", "s", "A", "K", "mol", "cd", "EUR"};

/// Exponents over (m, kg, s, A, K, mol, cd, EUR). Arithmetic is exact.
class DimensionVector {
public:
    DimensionVector() = default;
    explicit DimensionVector(std::array<Rational, kDimensionCount> exponents) : exponents_(exponents) {}

    static DimensionVector of(BaseDimension base, Rational power = 1);

    const Rational& operator[](BaseDimension base) const { return exponents_[static_cast<std::size_t>(base)]; }
    const Rational& operator[](std::size_t i) const { return exponents_[i]; }
    const std::array<Rational, kDimensionCount>& exponents() const { return exponents_; }

    bool is_dimensionless() const;
    bool has_currency() const { return !(*this)[BaseDimension::currency].is_zero(); }

    /// Canonical exponent form, e.g. "m^2*kg*s^-2". Empty for dimensionless.
    std::string to_string() const;

    friend bool operator==(const DimensionVector&, const DimensionVector&) = default;
    friend auto operator<=>(const DimensionVector&, const DimensionVector&) = default;

private:
    std::array<Rational, kDimensionCount> exponents_{};
};

enum class DimOp { mul, div };

DimensionVector dim_combine(const DimensionVector& a, const DimensionVector& b, DimOp op);
DimensionVector dim_pow(const DimensionVector& a, Rational n);

inline DimensionVector operator*(const DimensionVector& a, const DimensionVector& b) {
    return dim_combine(a, b, DimOp::mul);
}
inline DimensionVector operator/(const DimensionVector& a, const DimensionVector& b) {
    return dim_combine(a, b, DimOp::div);
}

// ---------------------------------------------------------------------------
// Units
// ---------------------------------------------------------------------------

enum class UnitKind { linear, affine };

/// A resolved unit. Linear units map x to x*si_scale; affine temperature
/// scales map x to x*si_scale + si_offset and may only be used standalone.
struct Unit {
    UnitKind kind = UnitKind::linear;
    double si_scale = 1.0;
    double si_offset = 0.0;
    DimensionVector dim;
    std::string source_text;
    /// Set when si_scale is exactly 10^pow10 (SI units and prefixes only).
    std::optional<int> pow10 = 0;
    /// "a.u.": dimensionless but not comparable across files.
    bool arbitrary = false;

    bool is_affine() const { return kind == UnitKind::affine; }
    bool is_dimensionless() const { return dim.is_dimensionless(); }

    /// The SI-coherent unit for a dimension, e.g. "m^2*kg*s^-2".
    static Unit si(const DimensionVector& dim);

    friend bool operator==(const Unit&, const Unit&) = default;
};

struct Prefix {
    std::string_view symbol;
    std::string_view name;
    int exponent;
};

/// The metric prefixes, transcribed as published (including "da" = 10^2).
std::span<const Prefix> standard_prefixes();

enum class NameCategory { unit, affine, constant, currency, arbitrary };

/// Result of resolving a single unit name.
struct NamedUnit {
    NameCategory category = NameCategory::unit;
    Unit unit;
    std::string prefix;     // empty unless resolved by prefix split
    std::string base_name;  // the exact table name the resolution ended on
};

/// Exchange rates as currency units per one EUR.
class CurrencyTable {
public:
    CurrencyTable() = default;

    /// One "CODE<tab>rate-per-EUR" record per line; blank lines and lines
    /// starting with '#' are skipped.
    static CurrencyTable parse(std::string_view text);
    static CurrencyTable load(const std::string& path);

    void set(std::string code, double rate_per_eur);
    const std::map<std::string, double, std::less<>>& rates() const { return rates_; }

private:
    std::map<std::string, double, std::less<>> rates_;
};

struct RegistryOptions {
    /// Additionally accept "h" = 10^2 and remap "da" to 10^1.
    bool lenient_prefixes = false;
};

/// Immutable table of unit names, constants, currencies and prefixes.
class UnitRegistry {
public:
    explicit UnitRegistry(RegistryOptions options = {}, const CurrencyTable& currencies = {});
    ~UnitRegistry();
    UnitRegistry(UnitRegistry&&) noexcept;
    UnitRegistry& operator=(UnitRegistry&&) noexcept;

    /// Shared default registry (verbatim prefixes, EUR only).
    static const UnitRegistry& standard();

    /// Whole-name match first, then prefix + exact name. Throws UnknownUnit.
    NamedUnit resolve_name(std::string_view name) const;
    std::optional<NamedUnit> find(std::string_view name) const;
    /// Exact table lookup, no prefix split.
    std::optional<NamedUnit> find_exact(std::string_view name) const;

    std::span<const Prefix> prefixes() const;
    /// All exact names, sorted.
    std::vector<std::string> names() const;
    const RegistryOptions& options() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One factor of a unit expression: name^exponent (exponent already signed
/// by a preceding '/').
struct UnitFactor {
    std::string name;
    int exponent = 1;
    NamedUnit resolved;
};

struct UnitExpr {
    std::string text;
    std::vector<UnitFactor> factors;

    /// Product of all factors. Throws UnknownUnit when an affine unit is
    /// used inside a product or power.
    Unit unit() const;
};

/// factor { ('*'|'/') factor }, factor = name [('**'|'^') integer].
/// Throws UnknownUnit or BadExponent.
UnitExpr parse_unit_expr(std::string_view text, const UnitRegistry& registry = UnitRegistry::standard());

/// parse_unit_expr(text).unit().
Unit parse_unit(std::string_view text, const UnitRegistry& registry = UnitRegistry::standard());
/// Non-throwing parse_unit.
std::optional<Unit> try_parse_unit(std::string_view text, const UnitRegistry& registry = UnitRegistry::standard());

// ---------------------------------------------------------------------------
// Quantities
// ---------------------------------------------------------------------------

struct Uncertainty {
    enum class Kind { absolute, relative };
    Kind kind = Kind::absolute;
    /// Absolute: in the unit of the value it belongs to. Relative: a fraction.
    double magnitude = 0.0;
    /// Literal as written (percent value for relative). Informational only.
    std::string text;

    friend bool operator==(const Uncertainty& a, const Uncertainty& b);
};

struct QuantityValue {
    double magnitude = 0.0;
    /// Decimal literal as written; used for exact SI scaling and output.
    std::string magnitude_text;
    Unit unit;
    std::optional<Uncertainty> uncertainty;
    std::optional<std::string> symbol;

    /// Absolute uncertainty converted to SI, if any.
    std::optional<double> uncertainty_si() const;

    friend bool operator==(const QuantityValue& a, const QuantityValue& b);
};

struct SiValue {
    double value = 0.0;
    DimensionVector dim;
};

SiValue to_si(const QuantityValue& q);

/// (q0; q1..q7): measure in base SI plus the physical exponents.
struct FeatureVector {
    double q0 = 0.0;
    std::array<Rational, kPhysicalDimensionCount> exponents{};

    DimensionVector dimension() const;

    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// Throws CurrencyNotComparable when the currency exponent is non-zero.
FeatureVector feature_vector(const QuantityValue& q);

/// True iff the full dimension vectors are equal.
bool compatible(const QuantityValue& a, const QuantityValue& b);

/// Magnitude of q expressed in target. Throws IncompatibleDimensions.
double convert(const QuantityValue& q, std::string_view target,
               const UnitRegistry& registry = UnitRegistry::standard());
double convert(const QuantityValue& q, const Unit& target);

/// Scale a decimal literal by 10^k without an intermediate rounding step.
std::optional<double> scale_decimal(std::string_view literal, int k);

}  // namespace fmf
