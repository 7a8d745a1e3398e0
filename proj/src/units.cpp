#include "fmf/units.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "fmf/error.hpp"
#include "text_util.hpp"

namespace fmf {

// ---------------------------------------------------------------------------
// DimensionVector
// ---------------------------------------------------------------------------

DimensionVector DimensionVector::of(BaseDimension base, Rational power) {
    DimensionVector d;
    d.exponents_[static_cast<std::size_t>(base)] = power;
    return d;
}

bool DimensionVector::is_dimensionless() const {
    return std::all_of(exponents_.begin(), exponents_.end(), [](const Rational& r) { return r.is_zero(); });
}

std::string DimensionVector::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < kDimensionCount; ++i) {
        const Rational& e = exponents_[i];
        if (e.is_zero()) continue;
        if (!out.empty()) out += '*';
        out += kBaseUnitSymbols[i];
        if (e == Rational(1)) continue;
        out += '^';
        out += e.is_integer() ? std::to_string(e.num()) : "(" + e.to_string() + ")";
    }
    return out;
}

DimensionVector dim_combine(const DimensionVector& a, const DimensionVector& b, DimOp op) {
    std::array<Rational, kDimensionCount> r{};
    for (std::size_t i = 0; i < kDimensionCount; ++i) r[i] = op == DimOp::mul ? a[i] + b[i] : a[i] - b[i];
    return DimensionVector(r);
}

DimensionVector dim_pow(const DimensionVector& a, Rational n) {
    std::array<Rational, kDimensionCount> r{};
    for (std::size_t i = 0; i < kDimensionCount; ++i) r[i] = a[i] * n;
    return DimensionVector(r);
}

// ---------------------------------------------------------------------------
// Scale arithmetic used to build the registry
// ---------------------------------------------------------------------------

namespace {

double exact_pow10(int k) {
    const std::string s = "1e" + std::to_string(k);
    double v = 0;
    std::from_chars(s.data(), s.data() + s.size(), v);
    return v;
}

// Linear scale factor with dimension; pow10 survives while every operand is
// an exact power of ten.
struct Lin {
    double scale = 1.0;
    DimensionVector dim;
    std::optional<int> pow10 = 0;
};

Lin decimal(int k) { return Lin{exact_pow10(k), {}, k}; }
Lin number(double v) { return Lin{v, {}, std::nullopt}; }
Lin base(BaseDimension b) { return Lin{1.0, DimensionVector::of(b), 0}; }

Lin operator*(const Lin& a, const Lin& b) {
    Lin r;
    r.dim = a.dim * b.dim;
    if (a.pow10 && b.pow10) {
        r.pow10 = *a.pow10 + *b.pow10;
        r.scale = exact_pow10(*r.pow10);
    } else {
        r.pow10 = std::nullopt;
        r.scale = a.scale * b.scale;
    }
    return r;
}

Lin operator/(const Lin& a, const Lin& b) {
    Lin r;
    r.dim = a.dim / b.dim;
    if (a.pow10 && b.pow10) {
        r.pow10 = *a.pow10 - *b.pow10;
        r.scale = exact_pow10(*r.pow10);
    } else {
        r.pow10 = std::nullopt;
        r.scale = a.scale / b.scale;
    }
    return r;
}

Lin operator*(double k, const Lin& a) { return number(k) * a; }
Lin operator/(double k, const Lin& a) { return number(k) / a; }
Lin operator/(const Lin& a, double k) { return a / number(k); }

Lin power(const Lin& a, int n) {
    Lin r;
    r.dim = dim_pow(a.dim, n);
    if (a.pow10) {
        r.pow10 = *a.pow10 * n;
        r.scale = exact_pow10(*r.pow10);
    } else {
        r.pow10 = std::nullopt;
        r.scale = std::pow(a.scale, n);
    }
    return r;
}

Lin to_lin(const Unit& u) { return Lin{u.si_scale, u.dim, u.pow10}; }

Unit to_unit(const Lin& l, std::string source) {
    Unit u;
    u.si_scale = l.scale;
    u.dim = l.dim;
    u.pow10 = l.pow10;
    u.source_text = std::move(source);
    return u;
}

constexpr Prefix kPrefixes[] = {
    {"Y", "yotta", 24}, {"Z", "zetta", 21}, {"E", "exa", 18},    {"P", "peta", 15},   {"T", "tera", 12},
    {"G", "giga", 9},   {"M", "mega", 6},   {"k", "kilo", 3},    {"da", "hecto", 2},  {"d", "deci", -1},
    {"c", "centi", -2}, {"m", "milli", -3}, {"mu", "micro", -6}, {"n", "nano", -9},   {"p", "pico", -12},
    {"f", "femto", -15}, {"a", "atto", -18}, {"z", "zepto", -21}, {"y", "yocto", -24},
};

constexpr Prefix kLenientPrefixes[] = {
    {"Y", "yotta", 24}, {"Z", "zetta", 21}, {"E", "exa", 18},    {"P", "peta", 15},   {"T", "tera", 12},
    {"G", "giga", 9},   {"M", "mega", 6},   {"k", "kilo", 3},    {"h", "hecto", 2},   {"da", "deca", 1},
    {"d", "deci", -1},  {"c", "centi", -2}, {"m", "milli", -3},  {"mu", "micro", -6}, {"n", "nano", -9},
    {"p", "pico", -12}, {"f", "femto", -15}, {"a", "atto", -18}, {"z", "zepto", -21}, {"y", "yocto", -24},
};

}  // namespace

std::span<const Prefix> standard_prefixes() { return kPrefixes; }

Unit Unit::si(const DimensionVector& dim) {
    Unit u;
    u.dim = dim;
    u.source_text = dim.to_string();
    return u;
}

// ---------------------------------------------------------------------------
// CurrencyTable
// ---------------------------------------------------------------------------

CurrencyTable CurrencyTable::parse(std::string_view text) {
    CurrencyTable table;
    std::size_t line_no = 0;
    for (const auto& raw : detail::split_lines(text)) {
        ++line_no;
        const std::string_view line = detail::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto ws = line.find_first_of(" \t");
        if (ws == std::string_view::npos)
            throw Error(ErrorCode::Io, "currency table line " + std::to_string(line_no) + ": missing rate");
        const std::string code(line.substr(0, ws));
        const std::string_view rate_text = detail::trim(line.substr(ws));
        double rate = 0;
        auto [ptr, ec] = std::from_chars(rate_text.data(), rate_text.data() + rate_text.size(), rate);
        if (ec != std::errc() || ptr != rate_text.data() + rate_text.size() || !(rate > 0) || !std::isfinite(rate))
            throw Error(ErrorCode::Io, "currency table line " + std::to_string(line_no) + ": bad rate");
        table.set(code, rate);
    }
    return table;
}

CurrencyTable CurrencyTable::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open currency table " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void CurrencyTable::set(std::string code, double rate_per_eur) { rates_[std::move(code)] = rate_per_eur; }

// ---------------------------------------------------------------------------
// UnitRegistry
// ---------------------------------------------------------------------------

struct UnitRegistry::Impl {
    RegistryOptions options;
    std::unordered_map<std::string, NamedUnit> entries;
    std::vector<Prefix> prefixes;  // longest symbol first for splitting
    std::span<const Prefix> published;

    void add(const std::string& name, NameCategory cat, const Lin& l) {
        NamedUnit n;
        n.category = cat;
        n.unit = to_unit(l, name);
        n.base_name = name;
        entries[name] = std::move(n);
    }
    void unit(const std::string& name, const Lin& l) { add(name, NameCategory::unit, l); }
    void constant(const std::string& name, const Lin& l) { add(name, NameCategory::constant, l); }
    void affine(const std::string& name, double scale, double offset) {
        NamedUnit n;
        n.category = NameCategory::affine;
        n.unit.kind = UnitKind::affine;
        n.unit.si_scale = scale;
        n.unit.si_offset = offset;
        n.unit.dim = DimensionVector::of(BaseDimension::temperature);
        n.unit.pow10 = std::nullopt;
        n.unit.source_text = name;
        n.base_name = name;
        entries[name] = std::move(n);
    }
    Lin operator[](const std::string& name) const { return to_lin(entries.at(name).unit); }
};

UnitRegistry::UnitRegistry(RegistryOptions options, const CurrencyTable& currencies)
    : impl_(std::make_unique<Impl>()) {
    Impl& r = *impl_;
    r.options = options;
    r.published = options.lenient_prefixes ? std::span<const Prefix>(kLenientPrefixes) : std::span<const Prefix>(kPrefixes);
    r.prefixes.assign(r.published.begin(), r.published.end());
    std::stable_sort(r.prefixes.begin(), r.prefixes.end(),
                     [](const Prefix& a, const Prefix& b) { return a.symbol.size() > b.symbol.size(); });

    // SI base units. The gram carries the prefixes for mass.
    r.unit("m", base(BaseDimension::length));
    r.unit("kg", base(BaseDimension::mass));
    r.unit("s", base(BaseDimension::time));
    r.unit("A", base(BaseDimension::current));
    r.unit("K", base(BaseDimension::temperature));
    r.unit("mol", base(BaseDimension::amount));
    r.unit("cd", base(BaseDimension::luminosity));
    r.unit("g", decimal(-3) * r["kg"]);

    // Derived SI units.
    r.unit("rad", decimal(0));
    r.unit("Sr", decimal(0));
    r.unit("N", r["kg"] * r["m"] / power(r["s"], 2));
    r.unit("Pa", r["N"] / power(r["m"], 2));
    r.unit("J", r["N"] * r["m"]);
    r.unit("W", r["J"] / r["s"]);
    r.unit("C", r["A"] * r["s"]);
    r.unit("V", r["W"] / r["A"]);
    r.unit("F", r["C"] / r["V"]);
    r.unit("ohm", r["V"] / r["A"]);
    r.unit("S", r["A"] / r["V"]);
    r.unit("Wb", r["V"] * r["s"]);
    r.unit("T", r["Wb"] / power(r["m"], 2));
    r.unit("H", r["Wb"] / r["A"]);
    r.unit("lm", r["cd"] * r["Sr"]);
    r.unit("lx", r["lm"] / power(r["m"], 2));
    r.unit("Bq", decimal(0) / r["s"]);
    r.unit("Gy", r["J"] / r["kg"]);
    r.unit("Sv", r["J"] / r["kg"]);

    // Mathematical and physical constants.
    const double pi = 3.1415926535897931;
    r.constant("pi", number(pi));
    r.constant("c", 299792458. * r["m"] / r["s"]);
    r.constant("mu0", 4.e-7 * pi * r["N"] / power(r["A"], 2));
    r.constant("eps0", 1.0 / r["mu0"] / power(r["c"], 2));
    r.constant("Grav", 6.67259e-11 * power(r["m"], 3) / r["kg"] / power(r["s"], 2));
    r.constant("hplanck", 6.6260755e-34 * r["J"] * r["s"]);
    r.constant("hbar", r["hplanck"] / (2 * pi));
    r.constant("e", 1.60217733e-19 * r["C"]);
    r.constant("me", 9.1093897e-31 * r["kg"]);
    r.constant("mp", 1.6726231e-27 * r["kg"]);
    r.constant("Nav", 6.0221367e23 / r["mol"]);
    r.constant("k", 1.380658e-23 * r["J"] / r["K"]);

    // Time.
    r.unit("min", 60. * r["s"]);
    r.unit("h", 60. * r["min"]);
    r.unit("d", 24. * r["h"]);
    r.unit("wk", 7. * r["d"]);
    r.unit("yr", 365.25 * r["d"]);

    // Length and area.
    const Lin cm = decimal(-2) * r["m"];
    r.unit("AU", 149597870691. * r["m"]);
    r.unit("Ang", 1.e-10 * r["m"]);
    r.unit("Bohr", 4. * pi * r["eps0"] * power(r["hbar"], 2) / r["me"] / power(r["e"], 2));
    r.unit("inch", 2.54 * cm);
    r.unit("ft", 12. * r["inch"]);
    r.unit("lyr", r["c"] * r["yr"]);
    r.unit("mi", 5280. * r["ft"]);
    r.unit("nmi", 1852. * r["m"]);
    r.unit("pc", 3.08567758128e16 * r["m"]);
    r.unit("yd", 3. * r["ft"]);
    r.unit("acres", power(r["mi"], 2) / 640.);
    r.unit("b", 1.e-28 * power(r["m"], 2));
    r.unit("ha", 10000. * power(r["m"], 2));

    // Volume.
    r.unit("l", power(decimal(-1) * r["m"], 3));
    r.unit("dl", 0.1 * r["l"]);
    r.unit("cl", 0.01 * r["l"]);
    r.unit("ml", 0.001 * r["l"]);
    r.unit("tsp", 4.92892159375 * r["ml"]);
    r.unit("tbsp", 3. * r["tsp"]);
    r.unit("floz", 2. * r["tbsp"]);
    r.unit("cup", 8. * r["floz"]);
    r.unit("pt", 16. * r["floz"]);
    r.unit("qt", 2. * r["pt"]);
    r.unit("galUS", 4. * r["qt"]);
    r.unit("galUK", 4.54609 * r["l"]);

    // Mass and force.
    r.unit("amu", 1.6605402e-27 * r["kg"]);
    r.unit("oz", 28.349523125 * r["g"]);
    r.unit("lb", 16. * r["oz"]);
    r.unit("ton", 2000. * r["lb"]);
    r.unit("dyn", 1.e-5 * r["N"]);

    // Energy and power.
    r.unit("erg", 1.e-7 * r["J"]);
    r.unit("eV", r["e"] * r["V"]);
    r.unit("Hartree", r["me"] * power(r["e"], 4) / 16. / power(number(pi), 2) / power(r["eps0"], 2) /
                          power(r["hbar"], 2));
    r.unit("invcm", r["hplanck"] * r["c"] / cm);
    r.unit("Ken", r["k"] * r["K"]);
    r.unit("cal", 4.184 * r["J"]);
    r.unit("kcal", 1000. * r["cal"]);
    r.unit("cali", 4.1868 * r["J"]);
    r.unit("kcali", 1000. * r["cali"]);
    r.unit("Btu", 1055.05585262 * r["J"]);
    r.unit("hp", 745.7 * r["W"]);

    // Pressure.
    r.unit("bar", decimal(5) * r["Pa"]);
    r.unit("dbar", decimal(4) * r["Pa"]);
    r.unit("mbar", decimal(2) * r["Pa"]);
    r.unit("atm", 101325. * r["Pa"]);
    r.unit("torr", r["atm"] / 760.);
    r.unit("psi", 6894.75729317 * r["Pa"]);

    // Degrees. Temperature scales map a reading x to (x + offset/scale) kelvin-scaled.
    r.unit("deg", pi * r["rad"] / 180.);
    r.affine("degR", 5. / 9., 0.0);
    r.affine("degC", 1.0, 273.15);
    r.affine("degF", 5. / 9., 459.67 * 5. / 9.);

    {
        NamedUnit au;
        au.category = NameCategory::arbitrary;
        au.unit.source_text = "a.u.";
        au.unit.arbitrary = true;
        au.base_name = "a.u.";
        r.entries["a.u."] = std::move(au);
    }

    r.add("EUR", NameCategory::currency, base(BaseDimension::currency));
    for (const auto& [code, rate] : currencies.rates()) {
        if (code == "EUR") continue;
        r.add(code, NameCategory::currency, (1.0 / rate) * base(BaseDimension::currency));
    }
}

UnitRegistry::~UnitRegistry() = default;
UnitRegistry::UnitRegistry(UnitRegistry&&) noexcept = default;
UnitRegistry& UnitRegistry::operator=(UnitRegistry&&) noexcept = default;

const UnitRegistry& UnitRegistry::standard() {
    static const UnitRegistry registry;
    return registry;
}

std::optional<NamedUnit> UnitRegistry::find_exact(std::string_view name) const {
    auto it = impl_->entries.find(std::string(name));
    if (it == impl_->entries.end()) return std::nullopt;
    return it->second;
}

std::optional<NamedUnit> UnitRegistry::find(std::string_view name) const {
    if (auto exact = find_exact(name)) return exact;
    for (const Prefix& p : impl_->prefixes) {
        if (name.size() <= p.symbol.size() || name.substr(0, p.symbol.size()) != p.symbol) continue;
        auto it = impl_->entries.find(std::string(name.substr(p.symbol.size())));
        if (it == impl_->entries.end()) continue;
        const NamedUnit& target = it->second;
        if (target.category != NameCategory::unit && target.category != NameCategory::currency) continue;
        NamedUnit n = target;
        n.prefix = std::string(p.symbol);
        n.unit = to_unit(decimal(p.exponent) * to_lin(target.unit), std::string(name));
        return n;
    }
    return std::nullopt;
}

NamedUnit UnitRegistry::resolve_name(std::string_view name) const {
    if (name.empty()) throw Error(ErrorCode::UnknownUnit, "empty unit name");
    if (auto n = find(name)) return *n;
    throw Error(ErrorCode::UnknownUnit, "'" + std::string(name) + "'");
}

std::span<const Prefix> UnitRegistry::prefixes() const { return impl_->published; }

std::vector<std::string> UnitRegistry::names() const {
    std::vector<std::string> out;
    out.reserve(impl_->entries.size());
    for (const auto& [name, _] : impl_->entries) out.push_back(name);
    std::sort(out.begin(), out.end());
    return out;
}

const RegistryOptions& UnitRegistry::options() const { return impl_->options; }

// ---------------------------------------------------------------------------
// Unit expressions
// ---------------------------------------------------------------------------

namespace {

bool is_operator_char(char c) { return c == '*' || c == '/' || c == '^' || c == '(' || c == ')'; }

struct ExprFailure {
    ErrorCode code;
    std::string message;
};

// Shared by the throwing and non-throwing entry points; failures are
// returned, not thrown, so speculative value parsing stays cheap.
std::optional<ExprFailure> parse_expr_into(std::string_view text, const UnitRegistry& registry, UnitExpr& expr) {
    expr.text = std::string(detail::trim(text));
    expr.factors.clear();
    std::string_view s = expr.text;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < s.size() && detail::is_space(s[i])) ++i;
    };
    if (s.empty()) return ExprFailure{ErrorCode::UnknownUnit, "empty unit expression"};

    // A leading "1/" denotes a pure reciprocal, as in "1/s".
    int sign = 1;
    if (s.front() == '1') {
        std::size_t j = 1;
        while (j < s.size() && detail::is_space(s[j])) ++j;
        if (j < s.size() && s[j] == '/') {
            i = j + 1;
            sign = -1;
        }
    }

    while (true) {
        skip_ws();
        const std::size_t start = i;
        while (i < s.size() && !detail::is_space(s[i]) && !is_operator_char(s[i])) ++i;
        if (i == start)
            return ExprFailure{ErrorCode::UnknownUnit,
                               "expected unit name at position " + std::to_string(start) + " in '" + expr.text + "'"};
        UnitFactor f;
        f.name = std::string(s.substr(start, i - start));
        auto resolved = registry.find(f.name);
        if (!resolved) return ExprFailure{ErrorCode::UnknownUnit, "'" + f.name + "'"};
        f.resolved = std::move(*resolved);
        skip_ws();
        int exponent = 1;
        std::size_t op_len = 0;
        if (s.substr(i, 2) == "**") op_len = 2;
        else if (i < s.size() && s[i] == '^') op_len = 1;
        if (op_len) {
            i += op_len;
            skip_ws();
            const std::size_t es = i;
            if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
            while (i < s.size() && detail::is_digit(s[i])) ++i;
            // The exponent must end at an operator or the end of the expression.
            std::size_t end = i;
            while (end < s.size() && !detail::is_space(s[end]) && s[end] != '*' && s[end] != '/') ++end;
            const std::string_view etext = s.substr(es, end - es);
            if (end != i || etext.empty() || etext == "-" || etext == "+")
                return ExprFailure{ErrorCode::BadExponent, "'" + std::string(etext) + "' in '" + expr.text + "'"};
            long long v = 0;
            const char* b = etext.data() + (etext.front() == '+' ? 1 : 0);
            auto [ptr, ec] = std::from_chars(b, etext.data() + etext.size(), v);
            if (ec != std::errc() || v > 1000 || v < -1000)
                return ExprFailure{ErrorCode::BadExponent, "'" + std::string(etext) + "' in '" + expr.text + "'"};
            exponent = static_cast<int>(v);
        }
        f.exponent = sign * exponent;
        expr.factors.push_back(std::move(f));
        skip_ws();
        if (i >= s.size()) break;
        if (s[i] == '*' && s.substr(i, 2) != "**") {
            sign = 1;
            ++i;
        } else if (s[i] == '/') {
            sign = -1;
            ++i;
        } else {
            return ExprFailure{ErrorCode::UnknownUnit, "unexpected '" + std::string(1, s[i]) + "' in '" + expr.text + "'"};
        }
    }
    return std::nullopt;
}

std::optional<ExprFailure> combine_factors(const UnitExpr& expr, Unit& out) {
    const auto& factors = expr.factors;
    const bool has_affine = std::any_of(factors.begin(), factors.end(), [](const UnitFactor& f) {
        return f.resolved.unit.is_affine();
    });
    if (has_affine) {
        if (factors.size() != 1 || factors.front().exponent != 1)
            return ExprFailure{ErrorCode::UnknownUnit, "temperature scale must stand alone in '" + expr.text + "'"};
        out = factors.front().resolved.unit;
        out.source_text = expr.text;
        return std::nullopt;
    }
    Lin acc = decimal(0);
    bool arbitrary = false;
    for (const UnitFactor& f : factors) {
        acc = acc * power(to_lin(f.resolved.unit), f.exponent);
        arbitrary = arbitrary || f.resolved.unit.arbitrary;
    }
    out = to_unit(acc, expr.text);
    out.arbitrary = arbitrary;
    return std::nullopt;
}

}  // namespace

UnitExpr parse_unit_expr(std::string_view text, const UnitRegistry& registry) {
    UnitExpr expr;
    if (auto fail = parse_expr_into(text, registry, expr)) throw Error(fail->code, fail->message);
    return expr;
}

Unit UnitExpr::unit() const {
    Unit u;
    if (auto fail = combine_factors(*this, u)) throw Error(fail->code, fail->message);
    return u;
}

Unit parse_unit(std::string_view text, const UnitRegistry& registry) {
    return parse_unit_expr(text, registry).unit();
}

std::optional<Unit> try_parse_unit(std::string_view text, const UnitRegistry& registry) {
    UnitExpr expr;
    Unit u;
    if (parse_expr_into(text, registry, expr) || combine_factors(expr, u)) return std::nullopt;
    return u;
}

// ---------------------------------------------------------------------------
// Quantities
// ---------------------------------------------------------------------------

bool operator==(const Uncertainty& a, const Uncertainty& b) {
    return a.kind == b.kind && detail::same_double(a.magnitude, b.magnitude);
}

bool operator==(const QuantityValue& a, const QuantityValue& b) {
    return detail::same_double(a.magnitude, b.magnitude) && a.unit == b.unit && a.uncertainty == b.uncertainty &&
           a.symbol == b.symbol;
}

std::optional<double> QuantityValue::uncertainty_si() const {
    if (!uncertainty) return std::nullopt;
    if (uncertainty->kind == Uncertainty::Kind::absolute) return uncertainty->magnitude * unit.si_scale;
    return std::abs(magnitude * unit.si_scale) * uncertainty->magnitude;
}

std::optional<double> scale_decimal(std::string_view literal, int k) {
    std::string_view s = detail::trim(literal);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    std::size_t i = 0;
    if (i < s.size() && s[i] == '-') ++i;
    const std::size_t mant_start = i;
    bool digits = false;
    while (i < s.size() && detail::is_digit(s[i])) ++i, digits = true;
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && detail::is_digit(s[i])) ++i, digits = true;
    }
    if (!digits) return std::nullopt;
    long long exponent = 0;
    const std::size_t mant_end = i;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        const char* b = s.data() + i + 1;
        if (*b == '+') ++b;
        auto [ptr, ec] = std::from_chars(b, s.data() + s.size(), exponent);
        if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    } else if (i != s.size()) {
        return std::nullopt;
    }
    (void)mant_start;
    const std::string shifted =
        std::string(s.substr(0, mant_end)) + "e" + std::to_string(exponent + static_cast<long long>(k));
    double v = 0;
    auto [ptr, ec] = std::from_chars(shifted.data(), shifted.data() + shifted.size(), v);
    if (ec != std::errc() && ec != std::errc::result_out_of_range) return std::nullopt;
    return v;
}

SiValue to_si(const QuantityValue& q) {
    SiValue r;
    r.dim = q.unit.dim;
    if (q.unit.is_affine()) {
        r.value = q.magnitude * q.unit.si_scale + q.unit.si_offset;
        return r;
    }
    if (q.unit.pow10 && !q.magnitude_text.empty()) {
        if (auto v = scale_decimal(q.magnitude_text, *q.unit.pow10)) {
            r.value = *v;
            return r;
        }
    }
    r.value = q.magnitude * q.unit.si_scale;
    return r;
}

DimensionVector FeatureVector::dimension() const {
    std::array<Rational, kDimensionCount> e{};
    std::copy(exponents.begin(), exponents.end(), e.begin());
    return DimensionVector(e);
}

FeatureVector feature_vector(const QuantityValue& q) {
    if (q.unit.dim.has_currency())
        throw Error(ErrorCode::CurrencyNotComparable, "'" + q.unit.source_text + "' carries a currency dimension");
    const SiValue si = to_si(q);
    FeatureVector fv;
    fv.q0 = si.value;
    std::copy_n(si.dim.exponents().begin(), kPhysicalDimensionCount, fv.exponents.begin());
    return fv;
}

bool compatible(const QuantityValue& a, const QuantityValue& b) { return a.unit.dim == b.unit.dim; }

double convert(const QuantityValue& q, const Unit& target) {
    if (q.unit.dim != target.dim)
        throw Error(ErrorCode::IncompatibleDimensions,
                    "cannot convert '" + q.unit.source_text + "' to '" + target.source_text + "'");
    if (q.unit == target) return q.magnitude;
    const double si = to_si(q).value;
    if (target.is_affine()) return (si - target.si_offset) / target.si_scale;
    return si / target.si_scale;
}

double convert(const QuantityValue& q, std::string_view target, const UnitRegistry& registry) {
    return convert(q, parse_unit(target, registry));
}

}  // namespace fmf
