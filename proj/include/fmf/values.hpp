#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fmf/units.hpp"

namespace fmf {

struct NumberValue {
    enum class Kind { integer, real, complex };
    Kind kind = Kind::integer;
    std::int64_t integer = 0;  // kind == integer
    double real = 0.0;         // real, or real part of a complex number
    double imag = 0.0;         // kind == complex
    std::string text;          // the literal as written, without symbol or uncertainty
    std::optional<Uncertainty> uncertainty;
    std::optional<std::string> symbol;

    double as_double() const { return kind == Kind::integer ? static_cast<double>(integer) : real; }

    friend bool operator==(const NumberValue& a, const NumberValue& b);
};

struct UtcOffset {
    bool zulu = false;  // written as 'Z'
    int minutes = 0;    // signed offset from UTC

    friend bool operator==(const UtcOffset&, const UtcOffset&) = default;
};

/// ISO 8601 date, time and zone. A missing offset means local time and is
/// kept absent rather than resolved.
struct Timestamp {
    int year = 0;
    std::optional<int> month;
    std::optional<int> day;
    std::optional<int> week;     // ISO week date
    std::optional<int> weekday;  // 1 = Monday
    std::optional<int> hour;
    std::optional<int> minute;
    std::optional<int> second;
    std::string fraction;  // digits after the seconds' decimal dot
    std::optional<UtcOffset> offset;
    std::optional<QuantityValue> uncertainty;  // a temporal quantity

    bool is_week_date() const { return week.has_value(); }
    /// Canonical ISO text, e.g. "2006-04-17 18:55:38+02:00".
    std::string to_string() const;

    friend bool operator==(const Timestamp&, const Timestamp&) = default;
};

enum class ValueTag { boolean, integer, real, complex, quantity, timestamp, text, list };

std::string_view to_string(ValueTag tag);

/// Typed interpretation of an item value. The original text is kept in raw;
/// equality compares the typed content only.
struct ValueNode {
    using List = std::vector<ValueNode>;
    using Payload = std::variant<bool, NumberValue, QuantityValue, Timestamp, std::string, List>;

    Payload payload = std::string();
    std::string raw;

    ValueTag tag() const;
    /// LaTeX symbol from a "S = ..." prefix, for numbers and quantities.
    std::optional<std::string> symbol() const;

    bool is_text() const { return std::holds_alternative<std::string>(payload); }
    const std::string* text() const { return std::get_if<std::string>(&payload); }
    const bool* boolean() const { return std::get_if<bool>(&payload); }
    const NumberValue* number() const { return std::get_if<NumberValue>(&payload); }
    const QuantityValue* quantity() const { return std::get_if<QuantityValue>(&payload); }
    const Timestamp* timestamp() const { return std::get_if<Timestamp>(&payload); }
    const List* list() const { return std::get_if<List>(&payload); }

    /// True unless this is a list whose elements carry different tags.
    bool homogeneous() const;

    static ValueNode make_text(std::string text, std::string raw = {});

    friend bool operator==(const ValueNode& a, const ValueNode& b) { return a.payload == b.payload; }
};

/// Non-fatal observations made while interpreting a value.
struct ValueIssue {
    std::string code;  // BARE_PLUSMINUS, UNTERMINATED_QUOTE
    std::string message;
};

/// Total: quoted string > boolean > timestamp > number > quantity > list > text.
ValueNode parse_value(std::string_view text, const UnitRegistry& registry = UnitRegistry::standard(),
                      std::vector<ValueIssue>* issues = nullptr);

/// Throws NotANumber.
NumberValue parse_number(std::string_view text);
std::optional<NumberValue> try_parse_number(std::string_view text);

/// Throws NotAQuantity.
QuantityValue parse_quantity(std::string_view text, const UnitRegistry& registry = UnitRegistry::standard());
std::optional<QuantityValue> try_parse_quantity(std::string_view text,
                                                const UnitRegistry& registry = UnitRegistry::standard());

/// Throws NotATimestamp.
Timestamp parse_timestamp(std::string_view text, const UnitRegistry& registry = UnitRegistry::standard());
std::optional<Timestamp> try_parse_timestamp(std::string_view text,
                                             const UnitRegistry& registry = UnitRegistry::standard());

/// Removes one layer of ', ", ''' or """ quoting; unquoted input is trimmed.
/// Throws UnterminatedQuote for an unclosed triple quote.
std::string parse_string(std::string_view text);

/// Splits on top-level commas. A quote only shields commas when it opens an
/// element.
std::vector<std::string> split_list(std::string_view text);

/// True iff text is a single quoted token (the whole value is the quote).
bool is_quoted_token(std::string_view text);

}  // namespace fmf
