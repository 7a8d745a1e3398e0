#include "fmf/export.hpp"

#include <cmath>
#include <json.hpp>

#include "fmf/writer.hpp"
#include "text_util.hpp"

namespace fmf {

namespace {

using nlohmann::ordered_json;

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string cell_text(const ValueNode& cell) {
    if (const std::string* t = cell.text()) return *t;
    return write_value(cell);
}

ordered_json real_json(double v) {
    if (std::isfinite(v)) return v;
    return detail::format_double(v);
}

ordered_json uncertainty_json(const Uncertainty& u) {
    ordered_json j;
    j["kind"] = u.kind == Uncertainty::Kind::absolute ? "absolute" : "relative";
    j["value"] = real_json(u.magnitude);
    return j;
}

ordered_json to_json(const ValueNode& node) {
    switch (node.tag()) {
        case ValueTag::boolean: return *node.boolean();
        case ValueTag::integer:
        case ValueTag::real:
        case ValueTag::complex: {
            const NumberValue& n = *node.number();
            ordered_json value = n.kind == NumberValue::Kind::integer ? ordered_json(n.integer)
                                 : n.kind == NumberValue::Kind::real  ? real_json(n.real)
                                                                      : ordered_json{{"re", real_json(n.real)},
                                                                                     {"im", real_json(n.imag)}};
            if (!n.symbol && !n.uncertainty) return value;
            ordered_json j;
            if (n.symbol) j["symbol"] = *n.symbol;
            j["value"] = value;
            if (n.uncertainty) j["uncertainty"] = uncertainty_json(*n.uncertainty);
            return j;
        }
        case ValueTag::quantity: {
            const QuantityValue& q = *node.quantity();
            ordered_json j;
            if (q.symbol) j["symbol"] = *q.symbol;
            j["value"] = real_json(q.magnitude);
            j["unit"] = q.unit.source_text;
            if (q.uncertainty) j["uncertainty"] = uncertainty_json(*q.uncertainty);
            const SiValue si = to_si(q);
            j["si"] = {{"value", real_json(si.value)}, {"dimension", si.dim.to_string()}};
            return j;
        }
        case ValueTag::timestamp: return node.timestamp()->to_string();
        case ValueTag::text: return *node.text();
        case ValueTag::list: {
            ordered_json arr = ordered_json::array();
            for (const ValueNode& n : *node.list()) arr.push_back(to_json(n));
            return arr;
        }
    }
    return nullptr;
}

}  // namespace

std::string export_csv(const Table& table) {
    std::vector<std::string> header;
    for (const ColumnSpec& c : table.columns) {
        header.push_back(c.symbol + (c.unit ? " [" + *c.unit + "]" : ""));
        if (c.error && c.error->kind == ErrorSpec::Kind::constant)
            header.push_back(c.symbol + "_err" + (c.error->unit ? " [" + *c.error->unit + "]" : ""));
    }
    std::string out;
    auto emit = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + csv_field(fields[i]);
        out += "\n";
    };
    emit(header);
    for (const auto& row : table.rows) {
        std::vector<std::string> fields;
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            fields.push_back(c < row.size() ? cell_text(row[c]) : "");
            const auto& err = table.columns[c].error;
            if (err && err->kind == ErrorSpec::Kind::constant)
                fields.push_back(err->magnitude_text.empty() ? detail::format_double(err->magnitude)
                                                             : err->magnitude_text);
        }
        emit(fields);
    }
    return out;
}

std::string value_json(const ValueNode& node) {
    return to_json(node).dump(-1, ' ', false, ordered_json::error_handler_t::replace);
}

std::string export_records(const Document& doc, const std::vector<Table>& tables) {
    ordered_json metadata = ordered_json::object();
    for (const Section& s : doc.sections) {
        const auto kind = section_role(s.name).kind;
        if (kind == SectionRole::Kind::data_definitions || kind == SectionRole::Kind::data) continue;
        ordered_json items = ordered_json::object();
        for (const Item& item : s.items) items[item.key] = to_json(item.value);
        metadata[s.name] = std::move(items);
    }
    std::string out;
    for (const Table& t : tables) {
        ordered_json rec;
        rec["table"] = t.name;
        rec["symbol"] = t.symbol;
        ordered_json cols = ordered_json::array();
        for (const ColumnSpec& c : t.columns) {
            ordered_json col;
            col["name"] = c.name;
            col["symbol"] = c.symbol;
            col["dependencies"] = c.dependencies;
            col["unit"] = c.unit ? ordered_json(*c.unit) : ordered_json(nullptr);
            if (c.error) {
                if (c.error->kind == ErrorSpec::Kind::constant)
                    col["error"] = {{"kind", "constant"},
                                    {"value", real_json(c.error->magnitude)},
                                    {"unit", c.error->unit ? ordered_json(*c.error->unit) : ordered_json(nullptr)}};
                else
                    col["error"] = {{"kind", "column"}, {"symbol", c.error->ref_symbol}};
            }
            cols.push_back(std::move(col));
        }
        rec["columns"] = std::move(cols);
        ordered_json rows = ordered_json::array();
        for (const auto& row : t.rows) {
            ordered_json r = ordered_json::array();
            for (const ValueNode& cell : row) r.push_back(to_json(cell));
            rows.push_back(std::move(r));
        }
        rec["rows"] = std::move(rows);
        rec["metadata"] = metadata;
        out += rec.dump(-1, ' ', false, ordered_json::error_handler_t::replace) + "\n";
    }
    return out;
}

}  // namespace fmf
