#pragma once

#include <string>

#include "fmf/document.hpp"

namespace fmf {

struct WriteOptions {
    bool crlf = false;
    /// Skip the validate() precondition.
    bool unchecked = false;
};

/// Canonical FMF bytes, encoded per the headline coding. Throws NotValid
/// when validate() reports errors.
std::string write_document(const Document& doc, const WriteOptions& options = {},
                           const UnitRegistry& registry = UnitRegistry::standard());

/// Text that parse_value maps back to an equal node.
std::string write_value(const ValueNode& node, const UnitRegistry& registry = UnitRegistry::standard());

std::string write_number(const NumberValue& n);
std::string write_quantity(const QuantityValue& q);

/// Shortest decimal p with p/100 == fraction, for relative uncertainties.
std::string percent_text(double fraction);

}  // namespace fmf
