#include "fmf/writer.hpp"

#include <cmath>
#include <optional>

#include "fmf/error.hpp"
#include "fmf/reader.hpp"
#include "text_util.hpp"

namespace fmf {

namespace {

// The literal if it reads back to the same value, else a fresh rendering.
std::string real_literal(const std::string& text, double value) {
    if (!text.empty()) {
        auto n = try_parse_number(text);
        if (n && !n->symbol && !n->uncertainty && n->kind != NumberValue::Kind::complex &&
            detail::same_double(n->as_double(), value))
            return text;
    }
    return detail::format_double(value);
}

std::string uncertainty_text(const Uncertainty& u) {
    if (u.kind == Uncertainty::Kind::absolute) return real_literal(u.text, u.magnitude);
    if (!u.text.empty()) {
        auto n = try_parse_number(u.text);
        if (n && !n->symbol && !n->uncertainty && n->kind != NumberValue::Kind::complex &&
            detail::same_double(n->as_double() / 100.0, u.magnitude))
            return u.text + "%";
    }
    return percent_text(u.magnitude) + "%";
}

bool reads_as_text(const std::string& candidate, const std::string& text, bool in_list,
                   const UnitRegistry& registry) {
    std::vector<ValueIssue> issues;
    const ValueNode node = parse_value(candidate, registry, &issues);
    if (!issues.empty() || !node.text() || *node.text() != text) return false;
    return !in_list || split_list(candidate).size() == 1;
}

std::string write_text(const std::string& s, bool in_list, bool allow_bare, const UnitRegistry& registry) {
    const bool multi_line = s.find_first_of("\r\n") != std::string::npos;
    std::vector<std::string> candidates;
    if (!multi_line) {
        if (allow_bare) candidates.push_back(s);
        candidates.push_back("\"" + s + "\"");
        candidates.push_back("'" + s + "'");
    }
    candidates.push_back("'''" + s + "'''");
    candidates.push_back("\"\"\"" + s + "\"\"\"");
    for (const std::string& c : candidates)
        if (reads_as_text(c, s, in_list, registry)) return c;
    // No quoting reads back exactly; keep the content intact.
    return "'''" + s + "'''";
}

std::string write_node(const ValueNode& node, bool in_list, bool allow_bare, const UnitRegistry& registry) {
    switch (node.tag()) {
        case ValueTag::boolean: return *node.boolean() ? "true" : "false";
        case ValueTag::integer:
        case ValueTag::real:
        case ValueTag::complex: return write_number(*node.number());
        case ValueTag::quantity: return write_quantity(*node.quantity());
        case ValueTag::timestamp: return node.timestamp()->to_string();
        case ValueTag::text: return write_text(*node.text(), in_list, allow_bare, registry);
        case ValueTag::list: break;
    }
    std::string out;
    const auto& items = *node.list();
    auto join = [&](bool bare) {
        out.clear();
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (i) out += ", ";
            out += write_node(items[i], true, bare, registry);
        }
    };
    join(true);
    if (parse_value(out, registry) != node) join(false);
    return out;
}

}  // namespace

std::string percent_text(double fraction) {
    const double p = fraction * 100.0;
    auto reads_back = [&](double candidate, std::string& text) {
        text = detail::format_double(candidate);
        auto n = try_parse_number(text);
        return n && detail::same_double(n->as_double() / 100.0, fraction);
    };
    std::string text;
    if (reads_back(p, text)) return text;
    double up = p, down = p;
    for (int step = 0; step < 64; ++step) {
        up = std::nextafter(up, INFINITY);
        if (reads_back(up, text)) return text;
        down = std::nextafter(down, -INFINITY);
        if (reads_back(down, text)) return text;
    }
    return detail::format_double(p);
}

std::string write_number(const NumberValue& n) {
    std::string out = n.symbol ? *n.symbol + " = " : "";
    switch (n.kind) {
        case NumberValue::Kind::integer: {
            auto parsed = n.text.empty() ? std::nullopt : try_parse_number(n.text);
            const bool keep = parsed && !parsed->symbol && !parsed->uncertainty &&
                              parsed->kind == NumberValue::Kind::integer && parsed->integer == n.integer;
            out += keep ? n.text : std::to_string(n.integer);
            break;
        }
        case NumberValue::Kind::real: {
            auto parsed = n.text.empty() ? std::nullopt : try_parse_number(n.text);
            const bool keep = parsed && !parsed->symbol && !parsed->uncertainty &&
                              parsed->kind == NumberValue::Kind::real && detail::same_double(parsed->real, n.real);
            out += keep ? n.text : detail::format_real(n.real);
            break;
        }
        case NumberValue::Kind::complex: {
            auto parsed = n.text.empty() ? std::nullopt : try_parse_number(n.text);
            if (parsed && !parsed->symbol && parsed->kind == NumberValue::Kind::complex &&
                detail::same_double(parsed->real, n.real) && detail::same_double(parsed->imag, n.imag)) {
                out += n.text;
            } else {
                out += detail::format_double(n.real);
                out += std::signbit(n.imag) ? "-" : "+";
                out += detail::format_double(std::abs(n.imag)) + "j";
            }
            break;
        }
    }
    if (n.uncertainty) out += " +- " + uncertainty_text(*n.uncertainty);
    return out;
}

std::string write_quantity(const QuantityValue& q) {
    std::string out = q.symbol ? *q.symbol + " = " : "";
    const std::string mag = real_literal(q.magnitude_text, q.magnitude);
    const std::string& unit = q.unit.source_text;
    if (q.uncertainty && q.uncertainty->kind == Uncertainty::Kind::relative)
        return out + "(" + mag + " +- " + uncertainty_text(*q.uncertainty) + ") " + unit;
    out += mag + " " + unit;
    if (q.uncertainty) out += " +- " + uncertainty_text(*q.uncertainty) + " " + unit;
    return out;
}

std::string write_value(const ValueNode& node, const UnitRegistry& registry) {
    return write_node(node, false, true, registry);
}

std::string write_document(const Document& doc, const WriteOptions& options, const UnitRegistry& registry) {
    if (!options.unchecked) {
        for (const Diagnostic& d : validate(doc, registry))
            if (d.is_error())
                throw Error(ErrorCode::NotValid, "line " + std::to_string(d.line) + ": " + d.code + ": " + d.message);
    }
    const HeadlineParams& h = doc.headline;
    const std::string eol = options.crlf ? "\r\n" : "\n";
    const char cc = h.comment_char;
    std::string out;
    out += cc;
    out += " -*- fmf-version: " + h.fmf_version;
    if (h.coding != "utf-8") out += "; coding: " + h.coding;
    if (h.delimiter.kind != DelimiterSpec::Kind::tab) out += "; delimiter: " + h.delimiter.token();
    for (const auto& [key, value] : h.extra) out += "; " + key + ": " + value;
    out += " -*-" + eol;
    for (const Comment& c : doc.preamble) out += cc + c.text + eol;

    std::string sep(1, '\t');
    if (h.delimiter.kind == DelimiterSpec::Kind::whitespace) sep = " ";
    else if (h.delimiter.kind == DelimiterSpec::Kind::semicolon) sep = ";";
    else if (h.delimiter.kind == DelimiterSpec::Kind::single_char) sep = std::string(1, h.delimiter.ch);

    bool first = true;
    for (const Section& s : doc.sections) {
        if (!first) out += eol;
        first = false;
        out += "[" + s.name + "]" + eol;
        const SectionRole role = section_role(s.name);
        const bool verbatim =
            role.kind == SectionRole::Kind::data_definitions || role.kind == SectionRole::Kind::table_definitions;
        const std::size_t count = role.kind == SectionRole::Kind::data ? s.rows.size() : s.items.size();
        auto flush_comments = [&](std::size_t position) {
            for (const Comment& c : s.comments)
                if (c.position == position) out += cc + c.text + eol;
        };
        for (std::size_t k = 0; k < count; ++k) {
            flush_comments(k);
            if (role.kind == SectionRole::Kind::data) {
                const Row& row = s.rows[k];
                for (std::size_t c = 0; c < row.cells.size(); ++c) out += (c ? sep : "") + row.cells[c];
                out += eol;
                continue;
            }
            const Item& item = s.items[k];
            std::string value;
            if (verbatim) value = !item.raw_value.empty() ? item.raw_value : item.value.text() ? *item.value.text() : "";
            else value = write_value(item.value, registry);
            out += item.key + ":" + (value.empty() ? "" : " " + value) + eol;
        }
        for (const Comment& c : s.comments)
            if (c.position >= count) out += cc + c.text + eol;
    }
    if (options.crlf) {
        // Multi-line values carry bare LFs; normalize them too.
        std::string normalized;
        normalized.reserve(out.size());
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (out[i] == '\n' && (i == 0 || out[i - 1] != '\r')) normalized += '\r';
            normalized += out[i];
        }
        out.swap(normalized);
    }
    const Coding* coding = find_coding(h.coding);
    return coding ? coding->encode(out) : out;
}

}  // namespace fmf
