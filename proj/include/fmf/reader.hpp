#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "fmf/document.hpp"

namespace fmf {

/// A character coding: bytes to UTF-8 and back.
struct Coding {
    std::string name;
    /// Appends UTF-8 to out. Returns the byte offsets of undecodable input,
    /// each replaced by U+FFFD.
    std::function<std::vector<std::size_t>(std::string_view bytes, std::string& out)> decode;
    /// Characters without a mapping become '?'.
    std::function<std::string(std::string_view utf8)> encode;
};

/// Registered codings: utf-8, cp1252, latin-1, ascii (names are matched
/// case-insensitively, with common aliases). register_coding extends the set.
const Coding* find_coding(std::string_view name);
void register_coding(Coding coding, std::vector<std::string> aliases = {});

/// Parses the first line. Throws NoHeadline, UnknownCoding or BadDelimiter.
HeadlineParams sniff_headline(std::string_view first_line);

struct ParseResult {
    Document document;
    std::vector<Diagnostic> diagnostics;  // reader findings plus validate()
};

struct ReadOptions {
    const UnitRegistry* registry = nullptr;  // standard registry when null
};

/// Bytes to Document. Only NoHeadline and UnknownCoding abort; everything
/// else, including a bad delimiter token, becomes a diagnostic.
ParseResult parse_document(std::string_view bytes, const ReadOptions& options = {});

/// Reads a file and parses it. Throws Io when the file cannot be read.
ParseResult read_file(const std::string& path, const ReadOptions& options = {});

/// Splits one data line into trimmed cells.
std::vector<std::string> split_row(std::string_view line, const DelimiterSpec& delimiter);

}  // namespace fmf
