#include "fmf/values.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "fmf/error.hpp"
#include "text_util.hpp"

namespace fmf {

using detail::is_digit;
using detail::is_space;
using detail::trim;

std::string_view to_string(ValueTag tag) {
    switch (tag) {
        case ValueTag::boolean: return "boolean";
        case ValueTag::integer: return "integer";
        case ValueTag::real: return "real";
        case ValueTag::complex: return "complex";
        case ValueTag::quantity: return "quantity";
        case ValueTag::timestamp: return "timestamp";
        case ValueTag::text: return "text";
        case ValueTag::list: return "list";
    }
    return "text";
}

bool operator==(const NumberValue& a, const NumberValue& b) {
    if (a.kind != b.kind || a.uncertainty != b.uncertainty || a.symbol != b.symbol) return false;
    switch (a.kind) {
        case NumberValue::Kind::integer: return a.integer == b.integer;
        case NumberValue::Kind::real: return detail::same_double(a.real, b.real);
        case NumberValue::Kind::complex:
            return detail::same_double(a.real, b.real) && detail::same_double(a.imag, b.imag);
    }
    return false;
}

ValueTag ValueNode::tag() const {
    switch (payload.index()) {
        case 0: return ValueTag::boolean;
        case 1:
            switch (std::get<NumberValue>(payload).kind) {
                case NumberValue::Kind::integer: return ValueTag::integer;
                case NumberValue::Kind::real: return ValueTag::real;
                case NumberValue::Kind::complex: return ValueTag::complex;
            }
            break;
        case 2: return ValueTag::quantity;
        case 3: return ValueTag::timestamp;
        case 5: return ValueTag::list;
        default: break;
    }
    return ValueTag::text;
}

std::optional<std::string> ValueNode::symbol() const {
    if (const auto* n = number()) return n->symbol;
    if (const auto* q = quantity()) return q->symbol;
    return std::nullopt;
}

bool ValueNode::homogeneous() const {
    const List* items = list();
    if (!items || items->empty()) return true;
    const ValueTag first = items->front().tag();
    for (const ValueNode& n : *items)
        if (n.tag() != first) return false;
    return true;
}

ValueNode ValueNode::make_text(std::string text, std::string raw) {
    ValueNode n;
    n.raw = raw.empty() ? text : std::move(raw);
    n.payload = std::move(text);
    return n;
}

namespace {

// ---------------------------------------------------------------------------
// Lexical helpers
// ---------------------------------------------------------------------------

struct Marker {
    std::size_t pos;
    std::size_t len;
};

// Position of the first "+-" or "\pm" outside parentheses.
std::optional<Marker> find_plus_minus(std::string_view s) {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '(') ++depth;
        else if (c == ')') --depth;
        if (depth != 0) continue;
        if (c == '+' && i + 1 < s.size() && s[i + 1] == '-') return Marker{i, 2};
        if (c == '\\' && s.substr(i, 3) == "\\pm" && (i + 3 == s.size() || !detail::is_alpha(s[i + 3])))
            return Marker{i, 3};
    }
    return std::nullopt;
}

struct SymbolSplit {
    std::optional<std::string> symbol;
    std::string_view rest;
};

// "S = rest". The symbol is any non-empty text before the first '=' that is
// free of commas and does not open a quote.
SymbolSplit split_symbol(std::string_view s) {
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) return {std::nullopt, s};
    const std::string_view left = trim(s.substr(0, eq));
    const std::string_view right = trim(s.substr(eq + 1));
    if (left.empty() || right.empty() || left.front() == '"' || left.front() == '\'' ||
        left.find(',') != std::string_view::npos)
        return {std::nullopt, s};
    return {std::string(left), right};
}

bool is_special_word(std::string_view w) {
    return w == "NaN" || w == "nan" || w == "NAN" || w == "INF" || w == "inf" || w == "Inf";
}

// Integer or real literal (no complex). Sets kind, integer/real and text.
std::optional<NumberValue> scan_real(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    NumberValue n;
    n.text = std::string(s);
    std::size_t i = 0;
    const bool negative = s[0] == '-';
    if (s[0] == '+' || s[0] == '-') ++i;
    const std::string_view body = s.substr(i);
    if (is_special_word(body)) {
        n.kind = NumberValue::Kind::real;
        if (body[0] == 'N' || body[0] == 'n') n.real = std::numeric_limits<double>::quiet_NaN();
        else n.real = negative ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
        return n;
    }
    std::size_t int_digits = 0;
    std::size_t frac_digits = 0;
    bool dot = false;
    bool exponent = false;
    while (i < s.size() && is_digit(s[i])) ++i, ++int_digits;
    if (i < s.size() && s[i] == '.') {
        dot = true;
        ++i;
        while (i < s.size() && is_digit(s[i])) ++i, ++frac_digits;
    }
    if (int_digits + frac_digits == 0) return std::nullopt;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        exponent = true;
        ++i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        std::size_t exp_digits = 0;
        while (i < s.size() && is_digit(s[i])) ++i, ++exp_digits;
        if (exp_digits == 0) return std::nullopt;
    }
    if (i != s.size()) return std::nullopt;

    const char* first = s.data() + (s[0] == '+' ? 1 : 0);
    const char* last = s.data() + s.size();
    if (!dot && !exponent) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec == std::errc() && ptr == last) {
            n.kind = NumberValue::Kind::integer;
            n.integer = v;
            return n;
        }
        // Too wide for 64 bits: keep it as a real.
    }
    double v = 0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if ((ec != std::errc() && ec != std::errc::result_out_of_range) || ptr != last) return std::nullopt;
    n.kind = NumberValue::Kind::real;
    n.real = v;
    return n;
}

// Integer, real or complex literal.
std::optional<NumberValue> scan_numeric(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    if (s.back() != 'j' && s.back() != 'J') return scan_real(s);
    const std::string_view body = s.substr(0, s.size() - 1);
    if (body.empty()) return std::nullopt;
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    NumberValue n;
    n.kind = NumberValue::Kind::complex;
    n.text = std::string(s);
    if (split == std::string_view::npos) {
        auto im = scan_real(body);
        if (!im || std::isnan(im->as_double()) || std::isinf(im->as_double())) return std::nullopt;
        n.imag = im->as_double();
        return n;
    }
    auto re = scan_real(body.substr(0, split));
    auto im = scan_real(body.substr(split));
    if (!re || !im) return std::nullopt;
    if (std::isnan(im->as_double()) || std::isinf(im->as_double())) return std::nullopt;
    n.real = re->as_double();
    n.imag = im->as_double();
    return n;
}

// "e" (absolute) or "p%" / "p %" (relative) after a plus-minus marker.
std::optional<Uncertainty> scan_bare_uncertainty(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    Uncertainty u;
    if (s.back() == '%') {
        auto p = scan_real(s.substr(0, s.size() - 1));
        if (!p || !(p->as_double() >= 0)) return std::nullopt;
        u.kind = Uncertainty::Kind::relative;
        u.magnitude = p->as_double() / 100.0;
        u.text = p->text;
        return u;
    }
    auto e = scan_real(s);
    if (!e || !(e->as_double() >= 0)) return std::nullopt;
    u.magnitude = e->as_double();
    u.text = e->text;
    return u;
}

bool has_bare_plus_minus(std::string_view s) {
    auto m = find_plus_minus(s);
    return m && trim(s.substr(m->pos + m->len)).empty();
}

// "number unit": the first whitespace-delimited token must be a real literal.
struct NumberAndUnit {
    NumberValue number;
    std::string_view unit;
};

std::optional<NumberAndUnit> split_number_unit(std::string_view s) {
    s = trim(s);
    std::size_t ws = 0;
    while (ws < s.size() && !is_space(s[ws])) ++ws;
    if (ws == s.size()) return std::nullopt;
    auto num = scan_real(s.substr(0, ws));
    if (!num) return std::nullopt;
    const std::string_view unit = trim(s.substr(ws));
    if (unit.empty()) return std::nullopt;
    return NumberAndUnit{std::move(*num), unit};
}

std::optional<std::size_t> matching_paren(std::string_view s, std::size_t open) {
    int depth = 0;
    for (std::size_t i = open; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')' && --depth == 0) return i;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Timestamps
// ---------------------------------------------------------------------------

struct Cursor {
    std::string_view s;
    std::size_t i = 0;

    bool done() const { return i >= s.size(); }
    char peek() const { return done() ? '\0' : s[i]; }
    bool eat(char c) {
        if (peek() != c) return false;
        ++i;
        return true;
    }
    // Reads between min and max digits.
    std::optional<int> digits(std::size_t min, std::size_t max) {
        const std::size_t start = i;
        int v = 0;
        while (!done() && is_digit(s[i]) && i - start < max) v = v * 10 + (s[i++] - '0');
        if (i - start < min) {
            i = start;
            return std::nullopt;
        }
        return v;
    }
};

bool leap_year(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
    static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return m == 2 && leap_year(y) ? 29 : kDays[m - 1];
}

std::optional<Timestamp> scan_timestamp(std::string_view text, const UnitRegistry& registry) {
    text = trim(text);
    Timestamp ts;
    std::string_view body = text;
    if (auto pm = find_plus_minus(text)) {
        body = trim(text.substr(0, pm->pos));
        const std::string_view unc = trim(text.substr(pm->pos + pm->len));
        if (unc.empty()) return std::nullopt;
        auto nu = split_number_unit(unc);
        if (!nu || nu->number.as_double() < 0 || std::isnan(nu->number.as_double())) return std::nullopt;
        auto unit = try_parse_unit(nu->unit, registry);
        if (!unit || unit->dim != DimensionVector::of(BaseDimension::time) || unit->is_affine()) return std::nullopt;
        QuantityValue q;
        q.magnitude = nu->number.as_double();
        q.magnitude_text = nu->number.text;
        q.unit = std::move(*unit);
        ts.uncertainty = std::move(q);
    }

    Cursor c{body};
    auto year = c.digits(4, 4);
    if (!year || !c.eat('-')) return std::nullopt;
    ts.year = *year;
    if (c.eat('W')) {
        auto week = c.digits(2, 2);
        if (!week || *week < 1 || *week > 53) return std::nullopt;
        ts.week = week;
        if (c.eat('-')) {
            auto wd = c.digits(1, 1);
            if (!wd || *wd < 1 || *wd > 7) return std::nullopt;
            ts.weekday = wd;
        }
    } else {
        auto month = c.digits(1, 2);
        if (!month || *month < 1 || *month > 12) return std::nullopt;
        ts.month = month;
        if (c.eat('-')) {
            auto day = c.digits(1, 2);
            if (!day || *day < 1 || *day > days_in_month(ts.year, *month)) return std::nullopt;
            ts.day = day;
        }
    }

    if (!c.done()) {
        // Time of day needs a full date.
        if (!(ts.day || ts.weekday)) return std::nullopt;
        if (!(c.eat('T') || c.eat(' '))) return std::nullopt;
        auto hour = c.digits(2, 2);
        if (!hour || !c.eat(':')) return std::nullopt;
        auto minute = c.digits(2, 2);
        if (!minute || *minute > 59) return std::nullopt;
        ts.hour = hour;
        ts.minute = minute;
        if (c.eat(':')) {
            auto second = c.digits(2, 2);
            if (!second || *second > 60) return std::nullopt;
            ts.second = second;
            if (c.eat('.') || c.eat(',')) {
                const std::size_t start = c.i;
                while (!c.done() && is_digit(c.peek())) ++c.i;
                if (c.i == start) return std::nullopt;
                ts.fraction = std::string(c.s.substr(start, c.i - start));
            }
        }
        const bool midnight_end = *hour == 24 && *minute == 0 && ts.second.value_or(0) == 0 && ts.fraction.empty();
        if (*hour > 23 && !midnight_end) return std::nullopt;

        if (c.eat('Z')) {
            ts.offset = UtcOffset{true, 0};
        } else if (c.peek() == '+' || c.peek() == '-') {
            const int sign = c.peek() == '-' ? -1 : 1;
            ++c.i;
            auto oh = c.digits(2, 2);
            if (!oh) return std::nullopt;
            int om = 0;
            if (c.eat(':')) {
                auto m = c.digits(2, 2);
                if (!m) return std::nullopt;
                om = *m;
            } else if (!c.done()) {
                auto m = c.digits(2, 2);
                if (!m) return std::nullopt;
                om = *m;
            }
            if (om > 59) return std::nullopt;
            const int minutes = sign * (*oh * 60 + om);
            if (minutes < -1440 || minutes > 1440) return std::nullopt;
            ts.offset = UtcOffset{false, minutes};
        }
    }
    if (!c.done()) return std::nullopt;
    return ts;
}

std::string pad(int v, int width) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%0*d", width, v);
    return buf;
}

// ---------------------------------------------------------------------------
// Quantities
// ---------------------------------------------------------------------------

std::optional<QuantityValue> scan_quantity(std::string_view text, const UnitRegistry& registry) {
    auto [symbol, s] = split_symbol(trim(text));
    s = trim(s);
    if (s.empty()) return std::nullopt;
    QuantityValue q;
    q.symbol = std::move(symbol);

    if (s.front() == '(') {
        auto close = matching_paren(s, 0);
        if (!close) return std::nullopt;
        const std::string_view inner = trim(s.substr(1, *close - 1));
        const std::string_view rest = trim(s.substr(*close + 1));
        auto pm = find_plus_minus(inner);
        if (!pm || rest.empty()) return std::nullopt;
        auto x = scan_real(inner.substr(0, pm->pos));
        auto e = scan_bare_uncertainty(inner.substr(pm->pos + pm->len));
        if (!x || !e) return std::nullopt;

        if (auto factor_form = split_number_unit(rest)) {
            // (f +- e) x U: value f*x, relative uncertainty e/f.
            auto unit = try_parse_unit(factor_form->unit, registry);
            if (!unit) return std::nullopt;
            const double f = x->as_double();
            q.magnitude = f * factor_form->number.as_double();
            q.magnitude_text = detail::format_double(q.magnitude);
            q.unit = std::move(*unit);
            Uncertainty u;
            u.kind = Uncertainty::Kind::relative;
            if (e->kind == Uncertainty::Kind::relative) {
                u = *e;
            } else {
                if (f == 0) return std::nullopt;
                u.magnitude = std::abs(e->magnitude / f);
            }
            q.uncertainty = u;
            return q;
        }
        auto unit = try_parse_unit(rest, registry);
        if (!unit) return std::nullopt;
        q.magnitude = x->as_double();
        q.magnitude_text = x->text;
        q.unit = std::move(*unit);
        q.uncertainty = *e;
        return q;
    }

    auto pm = find_plus_minus(s);
    const std::string_view value_part = pm ? trim(s.substr(0, pm->pos)) : s;
    auto nu = split_number_unit(value_part);
    if (!nu) return std::nullopt;
    auto unit = try_parse_unit(nu->unit, registry);
    if (!unit) return std::nullopt;
    q.magnitude = nu->number.as_double();
    q.magnitude_text = nu->number.text;
    q.unit = std::move(*unit);
    if (!pm) return q;

    const std::string_view unc = trim(s.substr(pm->pos + pm->len));
    if (unc.empty()) return std::nullopt;
    if (auto bare = scan_bare_uncertainty(unc)) {
        q.uncertainty = *bare;
        return q;
    }
    auto eu = split_number_unit(unc);
    if (!eu || !(eu->number.as_double() >= 0)) return std::nullopt;
    Uncertainty u;
    if (eu->unit == q.unit.source_text) {
        u.magnitude = eu->number.as_double();
        u.text = eu->number.text;
    } else {
        auto err_unit = try_parse_unit(eu->unit, registry);
        if (!err_unit || err_unit->dim != q.unit.dim) return std::nullopt;
        // Differences do not carry the affine offset.
        u.magnitude = eu->number.as_double() * err_unit->si_scale / q.unit.si_scale;
    }
    q.uncertainty = u;
    return q;
}

std::optional<NumberValue> scan_number(std::string_view text) {
    auto [symbol, s] = split_symbol(trim(text));
    std::optional<NumberValue> n;
    if (auto pm = find_plus_minus(s)) {
        n = scan_real(s.substr(0, pm->pos));
        if (!n) return std::nullopt;
        auto u = scan_bare_uncertainty(s.substr(pm->pos + pm->len));
        if (!u) return std::nullopt;
        n->uncertainty = *u;
    } else {
        n = scan_numeric(s);
        if (!n) return std::nullopt;
    }
    n->symbol = std::move(symbol);
    return n;
}

bool is_boolean_word(std::string_view s, bool& value) {
    if (s == "true" || s == "TRUE" || s == "True") {
        value = true;
        return true;
    }
    if (s == "false" || s == "FALSE" || s == "False") {
        value = false;
        return true;
    }
    return false;
}

// Cheap filter: only these first characters can start a number or quantity
// without a symbol prefix.
bool may_start_number(std::string_view s) {
    if (s.empty()) return false;
    const char c = s.front();
    return is_digit(c) || c == '+' || c == '-' || c == '.' || c == '(' || c == 'N' || c == 'n' || c == 'I' ||
           c == 'i' || s.find('=') != std::string_view::npos;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public API
// ---------------------------------------------------------------------------

std::string Timestamp::to_string() const {
    std::string out = pad(year, 4);
    if (week) {
        out += "-W" + pad(*week, 2);
        if (weekday) out += "-" + std::to_string(*weekday);
    } else if (month) {
        out += "-" + pad(*month, 2);
        if (day) out += "-" + pad(*day, 2);
    }
    if (hour) {
        out += " " + pad(*hour, 2) + ":" + pad(minute.value_or(0), 2);
        if (second) {
            out += ":" + pad(*second, 2);
            if (!fraction.empty()) out += "." + fraction;
        }
        if (offset) {
            if (offset->zulu) {
                out += "Z";
            } else {
                const int m = offset->minutes;
                out += (m < 0 ? "-" : "+") + pad(std::abs(m) / 60, 2) + ":" + pad(std::abs(m) % 60, 2);
            }
        }
    }
    if (uncertainty) {
        const std::string mag =
            uncertainty->magnitude_text.empty() ? detail::format_double(uncertainty->magnitude) : uncertainty->magnitude_text;
        out += " +- " + mag + " " + uncertainty->unit.source_text;
    }
    return out;
}

std::optional<NumberValue> try_parse_number(std::string_view text) { return scan_number(text); }

NumberValue parse_number(std::string_view text) {
    if (auto n = scan_number(text)) return *n;
    throw Error(ErrorCode::NotANumber, "'" + std::string(trim(text)) + "'");
}

std::optional<QuantityValue> try_parse_quantity(std::string_view text, const UnitRegistry& registry) {
    return scan_quantity(text, registry);
}

QuantityValue parse_quantity(std::string_view text, const UnitRegistry& registry) {
    if (auto q = scan_quantity(text, registry)) return *q;
    throw Error(ErrorCode::NotAQuantity, "'" + std::string(trim(text)) + "'");
}

std::optional<Timestamp> try_parse_timestamp(std::string_view text, const UnitRegistry& registry) {
    return scan_timestamp(text, registry);
}

Timestamp parse_timestamp(std::string_view text, const UnitRegistry& registry) {
    if (auto t = scan_timestamp(text, registry)) return *t;
    throw Error(ErrorCode::NotATimestamp, "'" + std::string(trim(text)) + "'");
}

bool is_quoted_token(std::string_view s) {
    s = trim(s);
    for (std::string_view triple : {std::string_view("'''"), std::string_view("\"\"\"")}) {
        if (detail::starts_with(s, triple)) {
            if (s.size() < 6 || !detail::ends_with(s, triple)) return false;
            return s.substr(3, s.size() - 6).find(triple) == std::string_view::npos;
        }
    }
    if (s.size() < 2) return false;
    const char q = s.front();
    if ((q != '"' && q != '\'') || s.back() != q) return false;
    return s.substr(1, s.size() - 2).find(q) == std::string_view::npos;
}

std::string parse_string(std::string_view text) {
    const std::string_view s = trim(text);
    for (std::string_view triple : {std::string_view("'''"), std::string_view("\"\"\"")}) {
        if (!detail::starts_with(s, triple)) continue;
        if (s.substr(3).find(triple) == std::string_view::npos)
            throw Error(ErrorCode::UnterminatedQuote, "opening " + std::string(triple) + " is never closed");
        if (is_quoted_token(s)) return std::string(s.substr(3, s.size() - 6));
        return std::string(s);
    }
    if (is_quoted_token(s)) return std::string(s.substr(1, s.size() - 2));
    return std::string(s);
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (true) {
        std::size_t start = i;
        while (i < n && is_space(text[i])) ++i;
        std::size_t scan = i;
        if (i < n && (text[i] == '"' || text[i] == '\'')) {
            const std::string triple_quote(3, text[i]);
            const bool triple = text.substr(i, 3) == triple_quote;
            const std::string_view quote = triple ? text.substr(i, 3) : text.substr(i, 1);
            const auto close = text.find(quote, i + quote.size());
            if (close == std::string_view::npos) {
                // Unclosed quote: the remainder is one literal element.
                out.emplace_back(trim(text.substr(start)));
                return out;
            }
            scan = close + quote.size();
        }
        const auto comma = text.find(',', scan);
        if (comma == std::string_view::npos) {
            out.emplace_back(trim(text.substr(start)));
            return out;
        }
        out.emplace_back(trim(text.substr(start, comma - start)));
        i = comma + 1;
    }
}

ValueNode parse_value(std::string_view text, const UnitRegistry& registry, std::vector<ValueIssue>* issues) {
    const std::string_view s = trim(text);
    ValueNode node;
    node.raw = std::string(s);

    if (!s.empty() && (s.front() == '"' || s.front() == '\'')) {
        try {
            if (is_quoted_token(s)) {
                node.payload = parse_string(s);
                return node;
            }
            // Validates triple-quote termination.
            (void)parse_string(s);
        } catch (const Error& e) {
            if (issues) issues->push_back({"UNTERMINATED_QUOTE", e.what()});
            node.payload = std::string(s);
            return node;
        }
    }

    bool flag = false;
    if (is_boolean_word(s, flag)) {
        node.payload = flag;
        return node;
    }

    if (!s.empty() && is_digit(s.front())) {
        if (auto ts = scan_timestamp(s, registry)) {
            node.payload = std::move(*ts);
            return node;
        }
    }

    if (may_start_number(s)) {
        if (has_bare_plus_minus(s) && s.find(',') == std::string_view::npos) {
            if (issues) issues->push_back({"BARE_PLUSMINUS", "uncertainty marker without a value in '" + node.raw + "'"});
            node.payload = std::string(s);
            return node;
        }
        if (auto n = scan_number(s)) {
            node.payload = std::move(*n);
            return node;
        }
        if (auto q = scan_quantity(s, registry)) {
            node.payload = std::move(*q);
            return node;
        }
    }

    if (s.find(',') != std::string_view::npos) {
        auto parts = split_list(s);
        if (parts.size() > 1) {
            ValueNode::List items;
            items.reserve(parts.size());
            for (const auto& p : parts) items.push_back(parse_value(p, registry, issues));
            node.payload = std::move(items);
            return node;
        }
    }

    node.payload = std::string(s);
    return node;
}

}  // namespace fmf
