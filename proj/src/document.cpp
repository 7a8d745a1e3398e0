#include "fmf/document.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "fmf/error.hpp"
#include "text_util.hpp"

namespace fmf {

using detail::trim;

std::string DelimiterSpec::token() const {
    switch (kind) {
        case Kind::tab: return "\\t";
        case Kind::whitespace: return "whitespace";
        case Kind::semicolon: return "semicolon";
        case Kind::single_char: return std::string(1, ch);
    }
    return "\\t";
}

const Item* Section::find(std::string_view key) const {
    key = trim(key);
    for (const Item& item : items)
        if (item.key == key) return &item;
    return nullptr;
}

const Section* Document::section(std::string_view name) const {
    name = trim(name);
    for (const Section& s : sections)
        if (s.name == name) return &s;
    return nullptr;
}

const Item* get_item(const Document& doc, std::string_view section, std::string_view key) {
    const Section* s = doc.section(section);
    return s ? s->find(key) : nullptr;
}

SectionRole section_role(std::string_view name) {
    name = trim(name);
    SectionRole role;
    if (name.empty() || name.front() != '*') return role;
    auto suffixed = [&](std::string_view base, SectionRole::Kind kind) -> bool {
        if (!detail::starts_with(name, base)) return false;
        std::string_view rest = name.substr(base.size());
        if (rest.empty()) {
            role.kind = kind;
            return true;
        }
        if (rest.front() != ':') return false;
        role.kind = kind;
        role.suffix = std::string(trim(rest.substr(1)));
        return true;
    };
    if (name == "*reference") role.kind = SectionRole::Kind::reference;
    else if (name == "*table definitions") role.kind = SectionRole::Kind::table_definitions;
    else if (suffixed("*data definitions", SectionRole::Kind::data_definitions)) {
    } else if (suffixed("*data", SectionRole::Kind::data)) {
    } else role.kind = SectionRole::Kind::unknown_reserved;
    return role;
}

bool operator==(const ErrorSpec& a, const ErrorSpec& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == ErrorSpec::Kind::column_ref) return a.ref_symbol == b.ref_symbol;
    return detail::same_double(a.magnitude, b.magnitude) && a.unit == b.unit;
}

std::string ColumnSpec::label() const {
    std::string out = name.empty() ? symbol : name + ", " + symbol;
    if (!dependencies.empty()) {
        out += "(";
        for (std::size_t i = 0; i < dependencies.size(); ++i) out += (i ? "," : "") + dependencies[i];
        out += ")";
    }
    if (unit) out += " [" + *unit + "]";
    return out;
}

std::optional<std::size_t> Table::column_index(std::string_view sym) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i].symbol == sym) return i;
    return std::nullopt;
}

namespace {

std::optional<double> numeric_cell(const ValueNode& cell) {
    const NumberValue* n = cell.number();
    if (!n || n->kind == NumberValue::Kind::complex) return std::nullopt;
    return n->as_double();
}

}  // namespace

std::optional<QuantityValue> Table::quantity_at(std::size_t row, std::size_t col, const UnitRegistry& registry) const {
    if (row >= rows.size() || col >= columns.size() || col >= rows[row].size()) return std::nullopt;
    const ColumnSpec& spec = columns[col];
    const ValueNode& cell = rows[row][col];
    auto magnitude = numeric_cell(cell);
    if (!magnitude || !spec.unit) return std::nullopt;
    auto unit = try_parse_unit(*spec.unit, registry);
    if (!unit) return std::nullopt;

    QuantityValue q;
    q.magnitude = *magnitude;
    q.magnitude_text = cell.number()->text;
    q.unit = std::move(*unit);
    q.symbol = spec.symbol;
    if (cell.number()->uncertainty) {
        q.uncertainty = cell.number()->uncertainty;
        return q;
    }
    if (!spec.error) return q;

    const ErrorSpec& err = *spec.error;
    if (err.kind == ErrorSpec::Kind::constant) {
        Uncertainty u;
        if (!err.unit || *err.unit == *spec.unit) {
            u.magnitude = err.magnitude;
            u.text = err.magnitude_text;
        } else {
            auto eu = try_parse_unit(*err.unit, registry);
            if (!eu || eu->dim != q.unit.dim) return q;
            u.magnitude = err.magnitude * eu->si_scale / q.unit.si_scale;
        }
        q.uncertainty = u;
        return q;
    }
    auto ref = column_index(err.ref_symbol);
    if (!ref || *ref >= rows[row].size()) return q;
    auto e = numeric_cell(rows[row][*ref]);
    if (!e) return q;
    Uncertainty u;
    u.magnitude = *e;
    u.text = rows[row][*ref].number()->text;
    const ColumnSpec& ref_spec = columns[*ref];
    if (ref_spec.unit && *ref_spec.unit != *spec.unit) {
        auto ru = try_parse_unit(*ref_spec.unit, registry);
        if (ru && ru->dim == q.unit.dim) {
            u.magnitude = *e * ru->si_scale / q.unit.si_scale;
            u.text.clear();
        }
    }
    q.uncertainty = u;
    return q;
}

void sort_diagnostics(std::vector<Diagnostic>& diagnostics) {
    std::stable_sort(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& a, const Diagnostic& b) {
        return std::tie(a.line, a.code, a.message) < std::tie(b.line, b.code, b.message);
    });
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
    return std::any_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) { return d.is_error(); });
}

// ---------------------------------------------------------------------------
// Column specifications
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void bad_spec(std::string_view value, std::size_t pos, const std::string& what) {
    throw Error(ErrorCode::BadColumnSpec,
                what + " at position " + std::to_string(pos) + " in '" + std::string(value) + "'");
}

// Length of a plus-minus marker at s[i], or 0.
std::size_t marker_at(std::string_view s, std::size_t i) {
    if (s.substr(i, 2) == "+-") return 2;
    if (s.substr(i, 3) == "\\pm" && (i + 3 == s.size() || !detail::is_alpha(s[i + 3]))) return 3;
    return 0;
}

}  // namespace

ColumnSpec parse_column_spec(std::string_view name, std::string_view value) {
    ColumnSpec spec;
    spec.name = std::string(trim(name));
    const std::string_view v = trim(value);
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < v.size() && detail::is_space(v[i])) ++i;
    };

    // Symbol: up to '(' or '[' or a plus-minus marker outside braces.
    int braces = 0;
    const std::size_t sym_start = i;
    while (i < v.size()) {
        const char c = v[i];
        if (c == '{') ++braces;
        else if (c == '}') --braces;
        if (braces == 0 && (c == '(' || c == '[' || marker_at(v, i))) break;
        ++i;
    }
    spec.symbol = std::string(trim(v.substr(sym_start, i - sym_start)));
    if (spec.symbol.empty()) bad_spec(v, sym_start, "missing symbol");
    if (braces != 0) bad_spec(v, sym_start, "unbalanced braces in symbol");

    auto read_bracket = [&](char open, char close) -> std::string_view {
        const std::size_t at = i;
        const auto end = v.find(close, i + 1);
        if (end == std::string_view::npos) bad_spec(v, at, std::string("unclosed '") + open + "'");
        std::string_view inner = trim(v.substr(i + 1, end - i - 1));
        i = end + 1;
        return inner;
    };

    skip_ws();
    if (i < v.size() && v[i] == '(') {
        const std::size_t at = i;
        std::string_view deps = read_bracket('(', ')');
        if (deps.empty()) bad_spec(v, at, "empty dependency list");
        std::size_t start = 0;
        while (true) {
            const auto comma = deps.find(',', start);
            std::string_view dep = trim(deps.substr(start, comma == std::string_view::npos ? deps.npos : comma - start));
            if (dep.empty()) bad_spec(v, at, "empty dependency");
            spec.dependencies.emplace_back(dep);
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        skip_ws();
    }
    if (i < v.size() && v[i] == '[') {
        const std::size_t at = i;
        std::string_view unit = read_bracket('[', ']');
        if (unit.empty()) bad_spec(v, at, "empty unit");
        spec.unit = std::string(unit);
        skip_ws();
    }
    if (i < v.size()) {
        const std::size_t len = marker_at(v, i);
        if (!len) bad_spec(v, i, "unexpected text");
        i += len;
        skip_ws();
        const std::size_t err_start = i;
        while (i < v.size() && v[i] != '[') ++i;
        const std::string_view token = trim(v.substr(err_start, i - err_start));
        if (token.empty()) bad_spec(v, err_start, "missing error after plus-minus");
        std::optional<std::string> err_unit;
        if (i < v.size()) {
            const std::size_t at = i;
            std::string_view unit = read_bracket('[', ']');
            if (unit.empty()) bad_spec(v, at, "empty unit");
            err_unit = std::string(unit);
            skip_ws();
            if (i < v.size()) bad_spec(v, i, "unexpected text");
        }
        ErrorSpec err;
        auto number = try_parse_number(token);
        if (number && !number->symbol && !number->uncertainty && number->kind != NumberValue::Kind::complex) {
            if (!(number->as_double() >= 0)) bad_spec(v, err_start, "negative error");
            err.kind = ErrorSpec::Kind::constant;
            err.magnitude = number->as_double();
            err.magnitude_text = number->text;
        } else {
            if (token.find_first_of(" \t") != std::string_view::npos) bad_spec(v, err_start, "malformed error symbol");
            err.kind = ErrorSpec::Kind::column_ref;
            err.ref_symbol = std::string(token);
        }
        // A unit given only after the error belongs to the column as well.
        if (!spec.unit && err_unit) spec.unit = err_unit;
        if (err.kind == ErrorSpec::Kind::constant) err.unit = err_unit ? err_unit : spec.unit;
        spec.error = std::move(err);
    }
    return spec;
}

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

namespace {

void add(std::vector<Diagnostic>* out, Diagnostic::Severity sev, int line, std::string code, std::string message) {
    if (out) out->push_back({sev, std::max(1, line), std::move(code), std::move(message)});
}

constexpr auto kError = Diagnostic::Severity::error;
constexpr auto kWarning = Diagnostic::Severity::warning;

Table assemble(const std::string& name, const std::string& symbol, const Section& defs, const Section& data,
               std::vector<Diagnostic>* diags, const UnitRegistry& registry) {
    Table t;
    t.name = name;
    t.symbol = symbol;
    for (const Item& item : defs.items) {
        try {
            t.columns.push_back(parse_column_spec(item.key, item.raw_value));
        } catch (const Error& e) {
            add(diags, kError, item.line, "BAD_COLUMN_SPEC", e.what());
            ColumnSpec placeholder;
            placeholder.name = item.key;
            placeholder.symbol = item.key;
            t.columns.push_back(std::move(placeholder));
            continue;
        }
        const ColumnSpec& spec = t.columns.back();
        if (spec.unit && !try_parse_unit(*spec.unit, registry))
            add(diags, kError, item.line, "UNKNOWN_UNIT", "unit '" + *spec.unit + "' of column " + spec.symbol);
        if (spec.error && spec.error->unit && spec.error->unit != spec.unit) {
            auto eu = try_parse_unit(*spec.error->unit, registry);
            auto cu = spec.unit ? try_parse_unit(*spec.unit, registry) : std::nullopt;
            if (!eu)
                add(diags, kError, item.line, "UNKNOWN_UNIT", "error unit '" + *spec.error->unit + "' of " + spec.symbol);
            else if (cu && eu->dim != cu->dim)
                add(diags, kError, item.line, "UNKNOWN_UNIT",
                    "error unit '" + *spec.error->unit + "' does not match column unit of " + spec.symbol);
        }
    }
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        const ColumnSpec& spec = t.columns[c];
        if (spec.error && spec.error->kind == ErrorSpec::Kind::column_ref) {
            auto ref = t.column_index(spec.error->ref_symbol);
            if (!ref || *ref == c)
                add(diags, kError, defs.items[c].line, "DANGLING_ERROR_REF",
                    "error column '" + spec.error->ref_symbol + "' of " + spec.symbol + " is not defined");
        }
    }
    for (const Row& row : data.rows) {
        if (row.cells.size() != t.columns.size())
            add(diags, kError, row.line, "ROW_WIDTH",
                std::to_string(row.cells.size()) + " cells under " + std::to_string(t.columns.size()) + " columns");
        std::vector<ValueNode> cells;
        cells.reserve(row.cells.size());
        for (const std::string& cell : row.cells) cells.push_back(parse_value(cell, registry));
        t.rows.push_back(std::move(cells));
    }
    return t;
}

struct TableSections {
    const Section* defs = nullptr;
    const Section* data = nullptr;
};

}  // namespace

std::vector<Table> derive_tables(const Document& doc, std::vector<Diagnostic>* diags, const UnitRegistry& registry) {
    const Section* table_defs = nullptr;
    std::map<std::string, TableSections> by_suffix;
    for (const Section& s : doc.sections) {
        const SectionRole role = section_role(s.name);
        if (role.kind == SectionRole::Kind::table_definitions && !table_defs) table_defs = &s;
        if (role.kind == SectionRole::Kind::data_definitions && !by_suffix[role.suffix].defs)
            by_suffix[role.suffix].defs = &s;
        if (role.kind == SectionRole::Kind::data && !by_suffix[role.suffix].data) by_suffix[role.suffix].data = &s;
    }

    std::vector<Table> tables;
    std::set<std::string> declared;
    std::vector<std::pair<std::string, std::string>> wanted;  // (name, symbol)
    if (table_defs) {
        for (const Item& item : table_defs->items) {
            const std::string symbol(trim(item.raw_value));
            if (symbol.empty()) {
                add(diags, kError, item.line, "BAD_TABLE_SYMBOL", "table '" + item.key + "' has an empty symbol");
                continue;
            }
            if (!declared.insert(symbol).second) {
                add(diags, kError, item.line, "DUPLICATE_TABLE_SYMBOL", "symbol '" + symbol + "' declared twice");
                continue;
            }
            wanted.emplace_back(item.key, symbol);
        }
    } else if (by_suffix.count("")) {
        declared.insert("");
        wanted.emplace_back("", "");
    }

    for (const auto& [name, symbol] : wanted) {
        auto it = by_suffix.find(symbol);
        const TableSections ts = it == by_suffix.end() ? TableSections{} : it->second;
        if (!ts.defs || !ts.data) {
            const int line = ts.defs ? ts.defs->line : ts.data ? ts.data->line : table_defs ? table_defs->line : 1;
            const std::string label = symbol.empty() ? "the unsuffixed table" : "table '" + symbol + "'";
            add(diags, kError, line, "MISSING_COUNTERPART",
                label + (ts.defs ? " has no *data section" : ts.data ? " has no *data definitions section"
                                                                     : " has neither *data definitions nor *data"));
            continue;
        }
        if (ts.data->line && ts.defs->line && ts.data->line < ts.defs->line)
            add(diags, kWarning, ts.data->line, "DATA_BEFORE_DEFINITIONS",
                "[" + ts.data->name + "] precedes its definitions");
        tables.push_back(assemble(name, symbol, *ts.defs, *ts.data, diags, registry));
    }
    for (const auto& [suffix, ts] : by_suffix) {
        if (declared.count(suffix)) continue;
        const Section* s = ts.defs ? ts.defs : ts.data;
        add(diags, kError, s->line, "DANGLING_SYMBOL",
            suffix.empty() ? "[" + s->name + "] is unsuffixed but *table definitions is present"
                           : "table symbol '" + suffix + "' is not declared in *table definitions");
    }
    return tables;
}

std::vector<Table> pair_tables(const Document& doc, const UnitRegistry& registry) {
    std::vector<Diagnostic> diags;
    auto tables = derive_tables(doc, &diags, registry);
    for (const Diagnostic& d : diags) {
        if (d.code == "MISSING_COUNTERPART") throw Error(ErrorCode::MissingCounterpart, d.message);
        if (d.code == "DANGLING_SYMBOL") throw Error(ErrorCode::DanglingSymbol, d.message);
        if (d.code == "BAD_COLUMN_SPEC") throw Error(ErrorCode::BadColumnSpec, d.message);
    }
    return tables;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

// Dotted non-negative integers, e.g. "1.0".
std::optional<std::vector<int>> version_parts(std::string_view v) {
    std::vector<int> parts;
    std::size_t i = 0;
    while (true) {
        const std::size_t start = i;
        int n = 0;
        while (i < v.size() && detail::is_digit(v[i]) && i - start < 6) n = n * 10 + (v[i++] - '0');
        if (i == start) return std::nullopt;
        parts.push_back(n);
        if (i == v.size()) return parts;
        if (v[i] != '.') return std::nullopt;
        ++i;
    }
}

bool bad_text(std::string_view s) { return s.find_first_of("\r\n") != std::string_view::npos; }

}  // namespace

std::vector<Diagnostic> validate(const Document& doc, const UnitRegistry& registry) {
    std::vector<Diagnostic> out;
    const HeadlineParams& h = doc.headline;
    if (h.comment_char != ';' && h.comment_char != '#')
        add(&out, kError, 1, "BAD_HEADLINE", std::string("comment character '") + h.comment_char + "'");
    if (h.delimiter.kind == DelimiterSpec::Kind::single_char &&
        (detail::is_alpha(h.delimiter.ch) || detail::is_digit(h.delimiter.ch) || detail::is_space(h.delimiter.ch) ||
         h.delimiter.ch == '\0'))
        add(&out, kError, 1, "BAD_HEADLINE", "delimiter must not be a letter, digit or space");
    if (auto parts = version_parts(h.fmf_version)) {
        const auto supported = *version_parts(kSupportedVersion);
        if (*parts > supported)
            add(&out, kWarning, 1, "VERSION_NEWER",
                "fmf-version " + h.fmf_version + " is newer than " + std::string(kSupportedVersion));
    } else {
        add(&out, kError, 1, "BAD_VERSION", "fmf-version '" + h.fmf_version + "' is not a dotted number");
    }

    std::set<std::string> names;
    bool has_reference = false;
    for (const Section& s : doc.sections) {
        if (!names.insert(s.name).second)
            add(&out, kError, s.line, "DUPLICATE_SECTION", "section [" + s.name + "] appears more than once");
        if (s.name.empty() || s.name.find_first_of("[]") != std::string::npos || bad_text(s.name))
            add(&out, kError, s.line, "BAD_NAME", "section name '" + s.name + "'");
        const SectionRole role = section_role(s.name);
        if (role.kind == SectionRole::Kind::reference) has_reference = true;
        if (role.kind == SectionRole::Kind::unknown_reserved)
            add(&out, kWarning, s.line, "UNKNOWN_RESERVED_SECTION", "[" + s.name + "] is not defined in this version");
        if (role.kind != SectionRole::Kind::data && !s.rows.empty())
            add(&out, kError, s.rows.front().line, "MALFORMED_LINE", "data rows outside a *data section");
        if (role.kind == SectionRole::Kind::data && !s.items.empty())
            add(&out, kError, s.items.front().line, "MALFORMED_LINE", "items inside a *data section");

        std::set<std::string> keys;
        for (const Item& item : s.items) {
            if (item.key.empty()) add(&out, kError, item.line, "EMPTY_KEY", "item without a key in [" + s.name + "]");
            // Such keys would read back as comments or section headers.
            const bool ambiguous_start =
                !item.key.empty() && (item.key.front() == h.comment_char || item.key.front() == '[');
            if (item.key.find(':') != std::string::npos || bad_text(item.key) || item.key != trim(item.key) ||
                ambiguous_start)
                add(&out, kError, item.line, "BAD_NAME", "key '" + item.key + "'");
            if (!keys.insert(item.key).second)
                add(&out, kError, item.line, "DUPLICATE_KEY", "key '" + item.key + "' repeated in [" + s.name + "]");
        }
    }
    if (!has_reference) add(&out, kError, 1, "MISSING_SECTION", "no [*reference] section");

    bool any_defs = false;
    bool any_data = false;
    for (const Section& s : doc.sections) {
        const auto kind = section_role(s.name).kind;
        any_defs |= kind == SectionRole::Kind::data_definitions;
        any_data |= kind == SectionRole::Kind::data;
    }
    if (!any_defs) add(&out, kError, 1, "MISSING_SECTION", "no [*data definitions] section");
    if (!any_data) add(&out, kError, 1, "MISSING_SECTION", "no [*data] section");

    derive_tables(doc, &out, registry);
    sort_diagnostics(out);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace fmf
