#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fmf/units.hpp"
#include "fmf/values.hpp"

namespace fmf {

struct DelimiterSpec {
    enum class Kind { tab, whitespace, semicolon, single_char };
    Kind kind = Kind::tab;
    char ch = '\t';  // the separator for single_char; never a letter or digit

    static DelimiterSpec tab() { return {}; }
    static DelimiterSpec whitespace() { return {Kind::whitespace, ' '}; }
    static DelimiterSpec semicolon() { return {Kind::semicolon, ';'}; }
    static DelimiterSpec single(char c) { return {Kind::single_char, c}; }

    /// Headline token: "\t", "whitespace", "semicolon" or the character.
    std::string token() const;

    friend bool operator==(const DelimiterSpec&, const DelimiterSpec&) = default;
};

struct HeadlineParams {
    std::string fmf_version = "1.0";
    std::string coding = "utf-8";
    DelimiterSpec delimiter;
    char comment_char = ';';
    /// Keys other than fmf-version, coding and delimiter, in source order.
    std::vector<std::pair<std::string, std::string>> extra;

    friend bool operator==(const HeadlineParams&, const HeadlineParams&) = default;
};

struct Item {
    std::string key;
    std::string raw_value;
    ValueNode value;
    int line = 0;

    friend bool operator==(const Item& a, const Item& b) { return a.key == b.key && a.value == b.value; }
};

struct Row {
    std::vector<std::string> cells;
    int line = 0;

    friend bool operator==(const Row& a, const Row& b) { return a.cells == b.cells; }
};

/// A comment line. position counts the items (or rows) that precede it in
/// its section; text excludes the comment character.
struct Comment {
    std::size_t position = 0;
    std::string text;
    int line = 0;

    friend bool operator==(const Comment& a, const Comment& b) {
        return a.position == b.position && a.text == b.text;
    }
};

struct Section {
    std::string name;
    bool reserved = false;
    std::vector<Item> items;  // empty for *data sections
    std::vector<Row> rows;    // only for *data sections
    std::vector<Comment> comments;
    int line = 0;

    const Item* find(std::string_view key) const;

    friend bool operator==(const Section& a, const Section& b) {
        return a.name == b.name && a.reserved == b.reserved && a.items == b.items && a.rows == b.rows &&
               a.comments == b.comments;
    }
};

/// Which reserved role a section name plays, with its table suffix.
struct SectionRole {
    enum class Kind { user, reference, table_definitions, data_definitions, data, unknown_reserved };
    Kind kind = Kind::user;
    std::string suffix;  // "X" in "*data: X"; empty when unsuffixed
};

SectionRole section_role(std::string_view name);

struct ErrorSpec {
    enum class Kind { constant, column_ref };
    Kind kind = Kind::constant;
    double magnitude = 0.0;           // constant
    std::string magnitude_text;       // constant, as written
    std::optional<std::string> unit;  // constant; defaults to the column unit
    std::string ref_symbol;           // column_ref

    friend bool operator==(const ErrorSpec& a, const ErrorSpec& b);
};

struct ColumnSpec {
    std::string name;
    std::string symbol;
    std::vector<std::string> dependencies;
    std::optional<std::string> unit;
    std::optional<ErrorSpec> error;

    /// "name, symbol(deps) [unit]", the axis-label form.
    std::string label() const;

    friend bool operator==(const ColumnSpec&, const ColumnSpec&) = default;
};

struct Table {
    std::string name;
    std::string symbol;
    std::vector<ColumnSpec> columns;
    std::vector<std::vector<ValueNode>> rows;

    std::optional<std::size_t> column_index(std::string_view symbol) const;

    /// The numeric cell at (row, col) bound to its column unit and error.
    /// Absent when the cell is not a real number or the column has no unit.
    std::optional<QuantityValue> quantity_at(std::size_t row, std::size_t col,
                                             const UnitRegistry& registry = UnitRegistry::standard()) const;

    friend bool operator==(const Table&, const Table&) = default;
};

struct Document {
    HeadlineParams headline;
    std::vector<Comment> preamble;  // comments between headline and first section
    std::vector<Section> sections;
    std::vector<Table> tables;      // derived from the reserved sections

    const Section* section(std::string_view name) const;

    friend bool operator==(const Document&, const Document&) = default;
};

struct Diagnostic {
    enum class Severity { error, warning };
    Severity severity = Severity::error;
    int line = 1;
    std::string code;
    std::string message;

    bool is_error() const { return severity == Severity::error; }

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Orders by line, then code, then message.
void sort_diagnostics(std::vector<Diagnostic>& diagnostics);
bool has_errors(const std::vector<Diagnostic>& diagnostics);

/// Trimmed, case-sensitive lookup.
const Item* get_item(const Document& doc, std::string_view section, std::string_view key);

/// Column specification grammar for one "*data definitions" item.
/// Throws BadColumnSpec.
ColumnSpec parse_column_spec(std::string_view name, std::string_view value);

/// Best-effort table assembly; problems go to diagnostics.
std::vector<Table> derive_tables(const Document& doc, std::vector<Diagnostic>* diagnostics = nullptr,
                                 const UnitRegistry& registry = UnitRegistry::standard());

/// Strict table assembly. Throws MissingCounterpart, DanglingSymbol or
/// BadColumnSpec.
std::vector<Table> pair_tables(const Document& doc, const UnitRegistry& registry = UnitRegistry::standard());

/// Structural checks. Never throws; sorted by line then code.
std::vector<Diagnostic> validate(const Document& doc, const UnitRegistry& registry = UnitRegistry::standard());

/// Highest fmf-version this library reads without a warning.
inline constexpr std::string_view kSupportedVersion = "1.0";

}  // namespace fmf
