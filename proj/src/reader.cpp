#include "fmf/reader.hpp"

#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "fmf/error.hpp"
#include "text_util.hpp"

namespace fmf {

using detail::trim;

namespace {

constexpr std::string_view kBom = "\xEF\xBB\xBF";

std::optional<DelimiterSpec> delimiter_from_token(std::string_view token) {
    token = trim(token);
    if (token == "\\t" || detail::iequals(token, "tab")) return DelimiterSpec::tab();
    if (detail::iequals(token, "whitespace")) return DelimiterSpec::whitespace();
    if (detail::iequals(token, "semicolon")) return DelimiterSpec::semicolon();
    if (detail::iequals(token, "comma")) return DelimiterSpec::single(',');
    if (token.size() == 1) {
        const char c = token[0];
        if (c > 0x20 && c < 0x7F && !detail::is_alpha(c) && !detail::is_digit(c)) return DelimiterSpec::single(c);
    }
    return std::nullopt;
}

// Throws NoHeadline and UnknownCoding. A bad delimiter throws only when
// bad_delimiter is null; otherwise it is reported there and tab is kept.
HeadlineParams sniff(std::string_view line, std::string* bad_delimiter) {
    if (detail::starts_with(line, kBom)) line.remove_prefix(kBom.size());
    line = trim(line);
    auto no_headline = [&](const std::string& why) -> Error {
        return Error(ErrorCode::NoHeadline, why);
    };
    if (line.empty()) throw no_headline("empty first line");
    HeadlineParams h;
    h.comment_char = line.front();
    if (h.comment_char != ';' && h.comment_char != '#') throw no_headline("first line is not a comment");
    std::string_view rest = trim(line.substr(1));
    if (rest.size() < 6 || !detail::starts_with(rest, "-*-") || !detail::ends_with(rest, "-*-"))
        throw no_headline("missing -*- markers");
    const std::string_view inner = rest.substr(3, rest.size() - 6);

    bool have_version = false;
    std::size_t start = 0;
    while (start <= inner.size()) {
        auto semi = inner.find(';', start);
        if (semi == std::string_view::npos) semi = inner.size();
        const std::string_view piece = trim(inner.substr(start, semi - start));
        start = semi + 1;
        if (piece.empty()) continue;
        const auto colon = piece.find(':');
        if (colon == std::string_view::npos) throw no_headline("headline item without ':'");
        const std::string key(trim(piece.substr(0, colon)));
        const std::string_view value = trim(piece.substr(colon + 1));
        if (key == "fmf-version") {
            if (value.empty()) throw no_headline("empty fmf-version");
            h.fmf_version = std::string(value);
            have_version = true;
        } else if (key == "coding") {
            const Coding* coding = find_coding(value);
            if (!coding) throw Error(ErrorCode::UnknownCoding, "'" + std::string(value) + "'");
            h.coding = coding->name;
        } else if (key == "delimiter") {
            if (auto d = delimiter_from_token(value)) {
                h.delimiter = *d;
            } else if (bad_delimiter) {
                *bad_delimiter = std::string(value);
            } else {
                throw Error(ErrorCode::BadDelimiter, "'" + std::string(value) + "'");
            }
        } else {
            h.extra.emplace_back(key, std::string(value));
        }
    }
    if (!have_version) throw no_headline("fmf-version is missing");
    return h;
}

bool is_section_header(std::string_view trimmed) {
    return trimmed.size() >= 2 && trimmed.front() == '[' && trimmed.back() == ']';
}

// 1-based line number of each byte offset, counting LF, CRLF and CR.
std::vector<int> lines_of_offsets(std::string_view bytes, std::vector<std::size_t> offsets) {
    std::vector<int> out;
    out.reserve(offsets.size());
    int line = 1;
    std::size_t pos = 0;
    for (std::size_t off : offsets) {
        for (; pos < off && pos < bytes.size(); ++pos) {
            if (bytes[pos] == '\n') ++line;
            else if (bytes[pos] == '\r' && !(pos + 1 < bytes.size() && bytes[pos + 1] == '\n')) ++line;
        }
        out.push_back(line);
    }
    return out;
}

struct Builder {
    Document doc;
    std::vector<Diagnostic> diags;
    const UnitRegistry& registry;

    void diag(Diagnostic::Severity sev, int line, std::string code, std::string message) {
        diags.push_back({sev, line, std::move(code), std::move(message)});
    }
};

}  // namespace

HeadlineParams sniff_headline(std::string_view first_line) {
    const auto end = first_line.find_first_of("\r\n");
    return sniff(first_line.substr(0, end), nullptr);
}

std::vector<std::string> split_row(std::string_view line, const DelimiterSpec& delimiter) {
    std::vector<std::string> cells;
    if (delimiter.kind == DelimiterSpec::Kind::whitespace) {
        std::size_t i = 0;
        while (true) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
            if (i >= line.size()) break;
            const std::size_t start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
            cells.emplace_back(trim(line.substr(start, i - start)));
        }
        return cells;
    }
    const char sep = delimiter.kind == DelimiterSpec::Kind::tab         ? '\t'
                     : delimiter.kind == DelimiterSpec::Kind::semicolon ? ';'
                                                                        : delimiter.ch;
    std::size_t start = 0;
    while (true) {
        const auto at = line.find(sep, start);
        cells.emplace_back(trim(line.substr(start, at == std::string_view::npos ? line.npos : at - start)));
        if (at == std::string_view::npos) break;
        start = at + 1;
    }
    return cells;
}

ParseResult parse_document(std::string_view bytes, const ReadOptions& options) {
    const UnitRegistry& registry = options.registry ? *options.registry : UnitRegistry::standard();
    if (detail::starts_with(bytes, kBom)) bytes.remove_prefix(kBom.size());
    if (bytes.empty()) throw Error(ErrorCode::NoHeadline, "empty input");

    Builder b{{}, {}, registry};
    std::string bad_delimiter;
    b.doc.headline = sniff(bytes.substr(0, bytes.find_first_of("\r\n")), &bad_delimiter);
    const HeadlineParams& h = b.doc.headline;
    if (!bad_delimiter.empty())
        b.diag(Diagnostic::Severity::error, 1, "BAD_DELIMITER", "delimiter '" + bad_delimiter + "'; using tab");
    for (const auto& [key, value] : h.extra)
        b.diag(Diagnostic::Severity::warning, 1, "UNKNOWN_HEADLINE_KEY", "'" + key + "' kept verbatim");

    std::string text;
    const auto bad_offsets = find_coding(h.coding)->decode(bytes, text);
    std::set<int> bad_lines;
    for (int line : lines_of_offsets(bytes, bad_offsets)) bad_lines.insert(line);
    for (int line : bad_lines)
        b.diag(Diagnostic::Severity::warning, line, "INVALID_ENCODING",
               "bytes not valid in " + h.coding + " were replaced with U+FFFD");

    const auto lines = detail::split_lines(text);
    Section* current = nullptr;
    SectionRole role;
    for (std::size_t idx = 1; idx < lines.size(); ++idx) {
        const int lineno = static_cast<int>(idx) + 1;
        const std::string_view line = lines[idx];
        const std::string_view t = trim(line);
        if (t.empty()) continue;

        if (t.front() == h.comment_char) {
            Comment c;
            c.text = std::string(detail::trim_right(t.substr(1)));
            c.line = lineno;
            if (current) {
                c.position = role.kind == SectionRole::Kind::data ? current->rows.size() : current->items.size();
                current->comments.push_back(std::move(c));
            } else {
                b.doc.preamble.push_back(std::move(c));
            }
            continue;
        }
        if (is_section_header(t)) {
            Section s;
            s.name = std::string(trim(t.substr(1, t.size() - 2)));
            s.reserved = !s.name.empty() && s.name.front() == '*';
            s.line = lineno;
            b.doc.sections.push_back(std::move(s));
            current = &b.doc.sections.back();
            role = section_role(current->name);
            continue;
        }
        if (!current) {
            b.diag(Diagnostic::Severity::warning, lineno, "ORPHAN_LINE", "content before the first section ignored");
            continue;
        }
        if (role.kind == SectionRole::Kind::data) {
            current->rows.push_back({split_row(line, h.delimiter), lineno});
            continue;
        }

        const auto colon = line.find(':');
        if (colon == std::string_view::npos) {
            b.diag(Diagnostic::Severity::error, lineno, "MALFORMED_LINE",
                   "line in [" + current->name + "] is neither item, comment nor header");
            continue;
        }
        Item item;
        item.key = std::string(trim(line.substr(0, colon)));
        item.line = lineno;
        if (item.key.empty()) {
            b.diag(Diagnostic::Severity::error, lineno, "EMPTY_KEY", "item without a key in [" + current->name + "]");
            continue;
        }
        std::string raw(detail::trim_left(line.substr(colon + 1)));
        bool unterminated = false;
        for (std::string_view triple : {std::string_view("'''"), std::string_view("\"\"\"")}) {
            if (!detail::starts_with(raw, triple) || std::string_view(raw).substr(3).find(triple) != std::string_view::npos)
                continue;
            // Continuation lines run to the closing triple quote, and never
            // across a section header.
            std::size_t close = 0;
            for (std::size_t j = idx + 1; j < lines.size(); ++j) {
                if (is_section_header(trim(lines[j]))) break;
                if (lines[j].find(triple) != std::string_view::npos) {
                    close = j;
                    break;
                }
            }
            if (close) {
                for (std::size_t j = idx + 1; j <= close; ++j) {
                    raw += '\n';
                    raw += lines[j];
                }
                idx = close;
            } else {
                unterminated = true;
                b.diag(Diagnostic::Severity::error, lineno, "UNTERMINATED_QUOTE",
                       "opening " + std::string(triple) + " is never closed in [" + current->name + "]");
            }
            break;
        }
        item.raw_value = std::string(trim(raw));
        if (role.kind == SectionRole::Kind::data_definitions || role.kind == SectionRole::Kind::table_definitions) {
            item.value = ValueNode::make_text(item.raw_value);
        } else {
            std::vector<ValueIssue> issues;
            item.value = parse_value(item.raw_value, registry, &issues);
            for (const ValueIssue& issue : issues) {
                if (unterminated && issue.code == "UNTERMINATED_QUOTE") continue;
                const auto sev = issue.code == "BARE_PLUSMINUS" ? Diagnostic::Severity::warning
                                                                : Diagnostic::Severity::error;
                b.diag(sev, lineno, issue.code, issue.message);
            }
        }
        current->items.push_back(std::move(item));
    }

    b.doc.tables = derive_tables(b.doc, nullptr, registry);
    auto checks = validate(b.doc, registry);
    b.diags.insert(b.diags.end(), checks.begin(), checks.end());
    sort_diagnostics(b.diags);
    return {std::move(b.doc), std::move(b.diags)};
}

ParseResult read_file(const std::string& path, const ReadOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw Error(ErrorCode::Io, "cannot read '" + path + "'");
    return parse_document(bytes, options);
}

}  // namespace fmf
