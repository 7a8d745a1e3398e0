#pragma once

#include <string>

#include "fmf/document.hpp"

namespace fmf {

/// Comma-separated table with a "symbol [unit]" header row. A constant
/// column error becomes an extra "symbol_err [unit]" column right after its
/// column. Fields are quoted per RFC 4180 when needed.
std::string export_csv(const Table& table);

/// One JSON object per line per table: the table's columns and rows plus a
/// "metadata" object holding every metadata section.
std::string export_records(const Document& doc, const std::vector<Table>& tables);

/// JSON rendering of a single value, as used by export_records.
std::string value_json(const ValueNode& node);

}  // namespace fmf
