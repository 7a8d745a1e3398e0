#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fmf/document.hpp"

namespace fmf {

struct IndexEntry {
    std::string path;
    std::string section;
    std::string key;  // list elements get "#n", 1-based
    FeatureVector fv;
    std::optional<std::string> symbol;  // not persisted

    /// Equality ignores symbol.
    friend bool operator==(const IndexEntry& a, const IndexEntry& b) {
        return a.path == b.path && a.section == b.section && a.key == b.key && a.fv == b.fv;
    }
};

/// Sort key: exponents, then q0, then path, section and key.
bool index_order(const IndexEntry& a, const IndexEntry& b);

struct Index {
    std::vector<IndexEntry> entries;  // kept in index_order
    std::optional<Timestamp> built_at;  // not persisted

    /// Appends and restores index_order.
    void add(std::vector<IndexEntry> more);

    friend bool operator==(const Index& a, const Index& b) { return a.entries == b.entries; }
};

/// One entry per quantity in metadata sections. Currency, a.u. and
/// non-finite quantities are skipped, with a line in notices.
std::vector<IndexEntry> index_document(const std::string& path, const Document& doc,
                                       std::vector<std::string>* notices = nullptr);

/// Entries with exactly dim's exponents and lo <= q0 <= hi (SI).
/// Throws IncompatibleBounds.
std::vector<IndexEntry> query(const Index& index, const DimensionVector& dim, const QuantityValue& lo,
                              const QuantityValue& hi);
std::vector<IndexEntry> query(const Index& index, std::string_view dim_expr, const QuantityValue& lo,
                              const QuantityValue& hi, const UnitRegistry& registry = UnitRegistry::standard());

/// "FMFIDX 1" followed by tab-separated records.
std::string serialize_index(const Index& index);
/// Throws CorruptIndex.
Index deserialize_index(std::string_view text);

/// Throws Io or CorruptIndex.
void save_index(const Index& index, const std::string& path);
Index load_index(const std::string& path);

}  // namespace fmf
