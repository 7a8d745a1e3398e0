#include <fmf/error.hpp>
#include <fmf/export.hpp>
#include <fmf/reader.hpp>
#include <fmf/search.hpp>
#include <fmf/writer.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace fmf;
using namespace pybind11::literals;

namespace {

py::tuple exponents(const DimensionVector& d) {
    py::list out;
    for (std::size_t i = 0; i < kDimensionCount; ++i) out.append(py::make_tuple(d[i].num(), d[i].den()));
    return py::tuple(out);
}

py::list diagnostics(const std::vector<Diagnostic>& diags) {
    py::list out;
    for (const Diagnostic& d : diags)
        out.append(py::dict("severity"_a = d.is_error() ? "error" : "warning", "line"_a = d.line,
                            "code"_a = d.code, "message"_a = d.message));
    return out;
}

py::dict quantity_dict(const QuantityValue& q) {
    const SiValue si = to_si(q);
    py::dict d("magnitude"_a = q.magnitude, "unit"_a = q.unit.source_text, "symbol"_a = q.symbol,
               "si_value"_a = si.value, "dimension"_a = exponents(si.dim));
    if (q.uncertainty) {
        const bool rel = q.uncertainty->kind == Uncertainty::Kind::relative;
        d["uncertainty"] = py::dict("kind"_a = rel ? "relative" : "absolute", "magnitude"_a = q.uncertainty->magnitude);
    } else {
        d["uncertainty"] = py::none();
    }
    return d;
}

const Table& find_table(const Document& doc, const std::string& which) {
    for (const Table& t : doc.tables)
        if (t.symbol == which || t.name == which) return t;
    throw py::key_error("no table '" + which + "'");
}

py::list entry_list(const std::vector<IndexEntry>& entries) {
    py::list out;
    for (const IndexEntry& e : entries) out.append(py::make_tuple(e.path, e.section, e.key, e.fv.q0));
    return out;
}

}  // namespace

PYBIND11_MODULE(_fmf, m) {
    // Messages start with the error code name, e.g. "NotAQuantity: ...".
    py::register_exception<Error>(m, "FmfError", PyExc_ValueError);

    py::class_<Document>(m, "Document")
        .def_property_readonly("version", [](const Document& d) { return d.headline.fmf_version; })
        .def_property_readonly("coding", [](const Document& d) { return d.headline.coding; })
        .def_property_readonly("section_names",
                               [](const Document& d) {
                                   std::vector<std::string> names;
                                   for (const Section& s : d.sections) names.push_back(s.name);
                                   return names;
                               })
        .def("items",
             [](const Document& d, const std::string& section) {
                 const Section* s = d.section(section);
                 if (!s) throw py::key_error(section);
                 py::list out;
                 for (const Item& it : s->items) out.append(py::make_tuple(it.key, it.raw_value));
                 return out;
             })
        .def("value_json",
             [](const Document& d, const std::string& section, const std::string& key) {
                 const Item* it = get_item(d, section, key);
                 if (!it) throw py::key_error(section + "/" + key);
                 return value_json(it->value);
             })
        .def("quantity",
             [](const Document& d, const std::string& section, const std::string& key) -> py::object {
                 const Item* it = get_item(d, section, key);
                 if (!it) throw py::key_error(section + "/" + key);
                 if (const QuantityValue* q = it->value.quantity()) return quantity_dict(*q);
                 return py::none();
             })
        .def_property_readonly("tables",
                               [](const Document& d) {
                                   py::list out;
                                   for (const Table& t : d.tables) {
                                       py::list cols;
                                       for (const ColumnSpec& c : t.columns)
                                           cols.append(py::dict("name"_a = c.name, "symbol"_a = c.symbol,
                                                                "dependencies"_a = c.dependencies,
                                                                "unit"_a = c.unit));
                                       out.append(py::dict("name"_a = t.name, "symbol"_a = t.symbol,
                                                           "columns"_a = cols, "rows"_a = t.rows.size()));
                                   }
                                   return out;
                               })
        .def("validate", [](const Document& d) { return diagnostics(validate(d)); })
        .def(
            "write",
            [](const Document& d, bool crlf) {
                WriteOptions o;
                o.crlf = crlf;
                return py::bytes(write_document(d, o));
            },
            "crlf"_a = false)
        .def("export_csv", [](const Document& d, const std::string& table) { return export_csv(find_table(d, table)); })
        .def("export_records", [](const Document& d) { return export_records(d, d.tables); })
        .def("__eq__", [](const Document& a, const Document& b) { return a == b; });

    m.def(
        "parse",
        [](py::bytes data) {
            ParseResult r = parse_document(std::string(data));
            return py::make_tuple(std::move(r.document), diagnostics(r.diagnostics));
        },
        "data"_a);
    m.def(
        "read",
        [](const std::string& path) {
            ParseResult r = read_file(path);
            return py::make_tuple(std::move(r.document), diagnostics(r.diagnostics));
        },
        "path"_a);

    m.def("parse_value",
          [](const std::string& text) {
              const ValueNode v = parse_value(text);
              return py::make_tuple(std::string(to_string(v.tag())), value_json(v));
          });
    m.def("parse_quantity", [](const std::string& text) { return quantity_dict(parse_quantity(text)); });
    m.def("feature_vector", [](const std::string& text) {
        const FeatureVector fv = feature_vector(parse_quantity(text));
        return py::make_tuple(fv.q0, exponents(fv.dimension()));
    });
    m.def("convert", [](const std::string& text, const std::string& target) {
        return convert(parse_quantity(text), target);
    });

    py::class_<Index>(m, "Index")
        .def(py::init<>())
        .def(
            "add_document",
            [](Index& idx, const std::string& path, const Document& d) {
                std::vector<std::string> notices;
                idx.add(index_document(path, d, &notices));
                return notices;
            },
            "path"_a, "document"_a)
        .def("__len__", [](const Index& idx) { return idx.entries.size(); })
        .def(
            "query",
            [](const Index& idx, const std::string& dim, const std::string& lo, const std::string& hi) {
                return entry_list(query(idx, dim, parse_quantity(lo), parse_quantity(hi)));
            },
            "dim"_a, "lo"_a, "hi"_a)
        .def("save", [](const Index& idx, const std::string& path) { save_index(idx, path); })
        .def_static("load", [](const std::string& path) { return load_index(path); });
}
