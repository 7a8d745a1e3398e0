#include "fmf/search.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <tuple>

#include "fmf/error.hpp"
#include "text_util.hpp"

namespace fmf {

bool index_order(const IndexEntry& a, const IndexEntry& b) {
    if (a.fv.exponents != b.fv.exponents) return a.fv.exponents < b.fv.exponents;
    return std::tie(a.fv.q0, a.path, a.section, a.key) < std::tie(b.fv.q0, b.path, b.section, b.key);
}

void Index::add(std::vector<IndexEntry> more) {
    entries.insert(entries.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
    std::sort(entries.begin(), entries.end(), index_order);
}

namespace {

void index_quantity(const std::string& path, const std::string& section, const std::string& key,
                    const QuantityValue& q, std::vector<IndexEntry>& out, std::vector<std::string>* notices) {
    auto skip = [&](const std::string& why) {
        if (notices) notices->push_back(path + ": [" + section + "] " + key + ": " + why);
    };
    if (q.unit.dim.has_currency()) return skip("currency quantities are not comparable");
    if (q.unit.arbitrary) return skip("arbitrary units are not comparable");
    IndexEntry e;
    e.path = path;
    e.section = section;
    e.key = key;
    e.fv = feature_vector(q);
    e.symbol = q.symbol;
    if (!std::isfinite(e.fv.q0)) return skip("value is not finite");
    out.push_back(std::move(e));
}

}  // namespace

std::vector<IndexEntry> index_document(const std::string& path, const Document& doc,
                                       std::vector<std::string>* notices) {
    std::vector<IndexEntry> out;
    for (const Section& s : doc.sections) {
        const auto kind = section_role(s.name).kind;
        if (kind == SectionRole::Kind::table_definitions || kind == SectionRole::Kind::data_definitions ||
            kind == SectionRole::Kind::data)
            continue;
        for (const Item& item : s.items) {
            if (const QuantityValue* q = item.value.quantity()) {
                index_quantity(path, s.name, item.key, *q, out, notices);
            } else if (const auto* list = item.value.list()) {
                for (std::size_t i = 0; i < list->size(); ++i)
                    if (const QuantityValue* lq = (*list)[i].quantity())
                        index_quantity(path, s.name, item.key + "#" + std::to_string(i + 1), *lq, out, notices);
            }
        }
    }
    std::sort(out.begin(), out.end(), index_order);
    return out;
}

std::vector<IndexEntry> query(const Index& index, const DimensionVector& dim, const QuantityValue& lo,
                              const QuantityValue& hi) {
    if (dim.has_currency()) throw Error(ErrorCode::IncompatibleBounds, "currency dimensions are not indexed");
    if (lo.unit.dim != dim || hi.unit.dim != dim)
        throw Error(ErrorCode::IncompatibleBounds, "bounds do not have dimension " + dim.to_string());
    const double lo_si = to_si(lo).value;
    const double hi_si = to_si(hi).value;
    if (std::isnan(lo_si) || std::isnan(hi_si) || lo_si > hi_si)
        throw Error(ErrorCode::IncompatibleBounds, "lower bound exceeds upper bound");

    std::array<Rational, kPhysicalDimensionCount> exps{};
    for (std::size_t i = 0; i < kPhysicalDimensionCount; ++i) exps[i] = dim[i];

    auto first = std::lower_bound(index.entries.begin(), index.entries.end(), exps,
                                  [&](const IndexEntry& e, const auto& x) {
                                      return e.fv.exponents < x || (e.fv.exponents == x && e.fv.q0 < lo_si);
                                  });
    std::vector<IndexEntry> out;
    for (auto it = first; it != index.entries.end() && it->fv.exponents == exps && it->fv.q0 <= hi_si; ++it)
        out.push_back(*it);
    std::stable_sort(out.begin(), out.end(), [](const IndexEntry& a, const IndexEntry& b) {
        return std::tie(a.fv.q0, a.path, a.section, a.key) < std::tie(b.fv.q0, b.path, b.section, b.key);
    });
    return out;
}

std::vector<IndexEntry> query(const Index& index, std::string_view dim_expr, const QuantityValue& lo,
                              const QuantityValue& hi, const UnitRegistry& registry) {
    return query(index, parse_unit(dim_expr, registry).dim, lo, hi);
}

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

namespace {

constexpr std::string_view kMagic = "FMFIDX 1";
constexpr std::size_t kFieldCount = 4 + kPhysicalDimensionCount;

std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '\t': out += "\\t"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    return out;
}

std::optional<std::string> unescape(std::string_view s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '\\') {
            out += s[i];
            continue;
        }
        if (++i == s.size()) return std::nullopt;
        switch (s[i]) {
            case '\\': out += '\\'; break;
            case 't': out += '\t'; break;
            case 'n': out += '\n'; break;
            case 'r': out += '\r'; break;
            default: return std::nullopt;
        }
    }
    return out;
}

[[noreturn]] void corrupt(std::size_t line, const std::string& why) {
    throw Error(ErrorCode::CorruptIndex, "line " + std::to_string(line) + ": " + why);
}

}  // namespace

std::string serialize_index(const Index& index) {
    std::string out(kMagic);
    out += '\n';
    for (const IndexEntry& e : index.entries) {
        out += escape(e.path) + '\t' + escape(e.section) + '\t' + escape(e.key) + '\t' + detail::format_double(e.fv.q0);
        for (const Rational& r : e.fv.exponents) out += '\t' + r.to_string();
        out += '\n';
    }
    return out;
}

Index deserialize_index(std::string_view text) {
    const auto lines = detail::split_lines(text);
    if (lines.empty() || lines.front() != kMagic) corrupt(1, "missing \"FMFIDX 1\" header");
    Index index;
    for (std::size_t n = 1; n < lines.size(); ++n) {
        const std::string_view line = lines[n];
        if (line.empty()) continue;
        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            const auto tab = line.find('\t', start);
            fields.push_back(line.substr(start, tab == std::string_view::npos ? line.npos : tab - start));
            if (tab == std::string_view::npos) break;
            start = tab + 1;
        }
        if (fields.size() != kFieldCount)
            corrupt(n + 1, "expected " + std::to_string(kFieldCount) + " fields, found " + std::to_string(fields.size()));
        IndexEntry e;
        auto path = unescape(fields[0]);
        auto section = unescape(fields[1]);
        auto key = unescape(fields[2]);
        if (!path || !section || !key) corrupt(n + 1, "bad escape sequence");
        e.path = std::move(*path);
        e.section = std::move(*section);
        e.key = std::move(*key);
        const std::string_view q0 = fields[3];
        auto [ptr, ec] = std::from_chars(q0.data(), q0.data() + q0.size(), e.fv.q0);
        if (q0.empty() || ec != std::errc() || ptr != q0.data() + q0.size() || !std::isfinite(e.fv.q0))
            corrupt(n + 1, "bad q0 '" + std::string(q0) + "'");
        for (std::size_t i = 0; i < kPhysicalDimensionCount; ++i) {
            auto r = Rational::parse(fields[4 + i]);
            if (!r) corrupt(n + 1, "bad exponent '" + std::string(fields[4 + i]) + "'");
            e.fv.exponents[i] = *r;
        }
        index.entries.push_back(std::move(e));
    }
    std::sort(index.entries.begin(), index.entries.end(), index_order);
    return index;
}

void save_index(const Index& index, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
    out << serialize_index(index);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
}

Index load_index(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize_index(text);
}

}  // namespace fmf
