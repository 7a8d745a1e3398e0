#include "fmf/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>

#include "fmf/error.hpp"
#include "fmf/export.hpp"
#include "fmf/reader.hpp"
#include "fmf/search.hpp"
#include "fmf/writer.hpp"
#include "text_util.hpp"

namespace fmf::cli {

namespace {

namespace fs = std::filesystem;

struct Context {
    std::ostream& out;
    std::ostream& err;
    const UnitRegistry& registry;
    bool strict = false;
};

const char* severity_name(const Diagnostic& d) { return d.is_error() ? "error" : "warning"; }

void print_diagnostics(const Context& ctx, const std::string& path, const std::vector<Diagnostic>& diags) {
    for (const Diagnostic& d : diags)
        ctx.err << path << ":" << d.line << ": " << severity_name(d) << ": " << d.code << ": " << d.message << "\n";
}

// Errors, or with --strict any diagnostic at all. Export is blocked only under --strict.
bool blocking(const Context& ctx, const std::vector<Diagnostic>& diags) {
    return ctx.strict ? !diags.empty() : has_errors(diags);
}

std::optional<ParseResult> load(const Context& ctx, const std::string& path) {
    try {
        ReadOptions options;
        options.registry = &ctx.registry;
        return read_file(path, options);
    } catch (const Error& e) {
        ctx.err << path << ": " << e.what() << "\n";
        return std::nullopt;
    }
}

int cmd_validate(const Context& ctx, const std::vector<std::string>& files) {
    int code = ok;
    for (const std::string& path : files) {
        auto parsed = load(ctx, path);
        if (!parsed) {
            code = std::max<int>(code, io);
            continue;
        }
        print_diagnostics(ctx, path, parsed->diagnostics);
        const auto errors = std::count_if(parsed->diagnostics.begin(), parsed->diagnostics.end(),
                                          [](const Diagnostic& d) { return d.is_error(); });
        const auto warnings = static_cast<long>(parsed->diagnostics.size()) - errors;
        ctx.out << path << ": " << errors << " error(s), " << warnings << " warning(s)\n";
        if (blocking(ctx, parsed->diagnostics)) code = std::max<int>(code, invalid);
    }
    return code;
}

int cmd_describe(const Context& ctx, const std::string& path) {
    auto parsed = load(ctx, path);
    if (!parsed) return io;
    const Document& doc = parsed->document;
    const HeadlineParams& h = doc.headline;
    ctx.out << path << "\n";
    ctx.out << "fmf-version " << h.fmf_version << ", coding " << h.coding << ", delimiter "
            << (h.delimiter.kind == DelimiterSpec::Kind::tab ? "tab" : h.delimiter.token()) << ", comment '"
            << h.comment_char << "'\n";
    ctx.out << "sections:\n";
    for (const Section& s : doc.sections) {
        ctx.out << "  [" << s.name << "] ";
        if (section_role(s.name).kind == SectionRole::Kind::data) ctx.out << s.rows.size() << " row(s)\n";
        else ctx.out << s.items.size() << " item(s)\n";
    }
    ctx.out << "tables:\n";
    for (const Table& t : doc.tables) {
        ctx.out << "  " << (t.name.empty() ? "(unnamed)" : t.name);
        if (!t.symbol.empty()) ctx.out << " [" << t.symbol << "]";
        ctx.out << ": " << t.columns.size() << " column(s), " << t.rows.size() << " row(s)\n";
        for (const ColumnSpec& c : t.columns) {
            ctx.out << "    " << c.label();
            if (c.error) {
                if (c.error->kind == ErrorSpec::Kind::constant)
                    ctx.out << " +- " << c.error->magnitude_text << (c.error->unit ? " [" + *c.error->unit + "]" : "");
                else
                    ctx.out << " +- " << c.error->ref_symbol;
            }
            ctx.out << "\n";
        }
    }
    print_diagnostics(ctx, path, parsed->diagnostics);
    return ok;
}

int cmd_export(const Context& ctx, const std::string& path, const std::optional<std::string>& table,
               const std::string& format) {
    auto parsed = load(ctx, path);
    if (!parsed) return io;
    print_diagnostics(ctx, path, parsed->diagnostics);
    if (ctx.strict && blocking(ctx, parsed->diagnostics)) return invalid;
    const auto& tables = parsed->document.tables;
    std::vector<Table> chosen;
    if (table) {
        for (const Table& t : tables)
            if (t.symbol == *table || t.name == *table) chosen.push_back(t);
        if (chosen.empty()) {
            ctx.err << path << ": no table '" << *table << "'\n";
            return usage;
        }
        chosen.resize(1);
    } else {
        chosen = tables;
    }
    if (format == "records") {
        ctx.out << export_records(parsed->document, chosen);
        return ok;
    }
    if (chosen.size() != 1) {
        ctx.err << path << ": csv export needs --table (" << chosen.size() << " tables)\n";
        return usage;
    }
    ctx.out << export_csv(chosen.front());
    return ok;
}

int cmd_index(const Context& ctx, const std::string& dir, const std::string& output) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        ctx.err << dir << ": not a directory\n";
        return io;
    }
    std::vector<fs::path> files;
    for (auto it = fs::recursive_directory_iterator(dir, ec); !ec && it != fs::recursive_directory_iterator();
         it.increment(ec))
        if (it->is_regular_file() && it->path().extension() == ".fmf") files.push_back(it->path());
    if (ec) {
        ctx.err << dir << ": " << ec.message() << "\n";
        return io;
    }
    std::sort(files.begin(), files.end());

    int code = ok;
    Index index;
    for (const fs::path& file : files) {
        auto parsed = load(ctx, file.string());
        if (!parsed) {
            code = io;
            continue;
        }
        std::vector<std::string> notices;
        const std::string rel = fs::relative(file, dir).generic_string();
        index.add(index_document(rel, parsed->document, &notices));
        for (const std::string& n : notices) ctx.err << "notice: " << n << "\n";
    }
    try {
        save_index(index, output);
    } catch (const Error& e) {
        ctx.err << e.what() << "\n";
        return io;
    }
    ctx.out << index.entries.size() << " entries from " << files.size() << " file(s)\n";
    return code;
}

int cmd_query(const Context& ctx, const std::string& index_path, const std::string& dim_text,
              const std::string& min_text, const std::string& max_text) {
    Index index;
    try {
        index = load_index(index_path);
    } catch (const Error& e) {
        ctx.err << index_path << ": " << e.what() << "\n";
        return io;
    }
    try {
        const DimensionVector dim = parse_unit(dim_text, ctx.registry).dim;
        const QuantityValue lo = parse_quantity(min_text, ctx.registry);
        const QuantityValue hi = parse_quantity(max_text, ctx.registry);
        const std::string si_unit = Unit::si(dim).source_text;
        for (const IndexEntry& e : query(index, dim, lo, hi)) {
            ctx.out << e.path << "\t" << e.section << "\t" << e.key << "\t" << detail::format_double(e.fv.q0);
            if (!si_unit.empty()) ctx.out << " " << si_unit;
            ctx.out << "\n";
        }
    } catch (const Error& e) {
        ctx.err << e.what() << "\n";
        return usage;
    }
    return ok;
}

int cmd_fmt(const Context& ctx, const std::string& path, bool in_place, bool crlf) {
    auto parsed = load(ctx, path);
    if (!parsed) return io;
    std::string bytes;
    try {
        WriteOptions options;
        options.crlf = crlf;
        bytes = write_document(parsed->document, options, ctx.registry);
    } catch (const Error& e) {
        print_diagnostics(ctx, path, parsed->diagnostics);
        ctx.err << path << ": " << e.what() << "\n";
        return invalid;
    }
    if (ctx.strict && blocking(ctx, parsed->diagnostics)) {
        print_diagnostics(ctx, path, parsed->diagnostics);
        return invalid;
    }
    if (!in_place) {
        ctx.out << bytes;
        return ok;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file || !(file << bytes)) {
        ctx.err << path << ": cannot write\n";
        return io;
    }
    return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Read, check, convert and search Full-Metadata Format files.", "fmf"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string currency_path;
    bool strict = false;
    bool lenient_prefixes = false;
    app.add_option("--currency-table", currency_path, "Exchange rates, one CODE<tab>rate-per-EUR per line");
    app.add_flag("--strict", strict, "Treat warnings as errors");
    app.add_flag("--lenient-prefixes", lenient_prefixes, "Accept h = 10^2 and read da as 10^1");

    std::vector<std::string> validate_files;
    auto* validate_cmd = app.add_subcommand("validate", "Report diagnostics; exit 1 on errors");
    validate_cmd->add_option("files", validate_files, "FMF files")->required();

    std::string describe_file;
    auto* describe_cmd = app.add_subcommand("describe", "List sections, tables and column labels");
    describe_cmd->add_option("file", describe_file, "FMF file")->required();

    std::string export_file;
    std::string export_table;
    std::string export_format = "csv";
    auto* export_cmd = app.add_subcommand("export", "Write a table as CSV or JSON records");
    export_cmd->add_option("file", export_file, "FMF file")->required();
    auto* table_opt = export_cmd->add_option("--table", export_table, "Table symbol or name");
    export_cmd->add_option("--format", export_format, "csv or records")
        ->check(CLI::IsMember({"csv", "records"}));

    std::string index_dir;
    std::string index_output;
    auto* index_cmd = app.add_subcommand("index", "Build a quantity index over a directory");
    index_cmd->add_option("dir", index_dir, "Directory searched for *.fmf")->required();
    index_cmd->add_option("-o,--output", index_output, "Index file to write")->required();

    std::string query_index;
    std::string query_dim;
    std::string query_min;
    std::string query_max;
    auto* query_cmd = app.add_subcommand("query", "Find quantities by dimension and range");
    query_cmd->add_option("index", query_index, "Index file")->required();
    query_cmd->add_option("--dim", query_dim, "Unit expression giving the dimension")->required();
    query_cmd->add_option("--min", query_min, "Lower bound, e.g. \"1 kJ\"")->required();
    query_cmd->add_option("--max", query_max, "Upper bound, e.g. \"1 MJ\"")->required();

    std::string fmt_file;
    bool fmt_in_place = false;
    bool fmt_crlf = false;
    auto* fmt_cmd = app.add_subcommand("fmt", "Rewrite a file in canonical form");
    fmt_cmd->add_option("file", fmt_file, "FMF file")->required();
    fmt_cmd->add_flag("-i,--in-place", fmt_in_place, "Overwrite the file");
    fmt_cmd->add_flag("--crlf", fmt_crlf, "Use CRLF line endings");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    if (currency_path.empty())
        if (const char* env = std::getenv("FMF_CURRENCY_TABLE")) currency_path = env;
    RegistryOptions reg_options;
    reg_options.lenient_prefixes = lenient_prefixes;
    std::optional<UnitRegistry> custom;
    try {
        if (!currency_path.empty()) custom.emplace(reg_options, CurrencyTable::load(currency_path));
        else if (lenient_prefixes) custom.emplace(reg_options);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return io;
    }
    Context ctx{out, err, custom ? *custom : UnitRegistry::standard(), strict};

    if (*validate_cmd) return cmd_validate(ctx, validate_files);
    if (*describe_cmd) return cmd_describe(ctx, describe_file);
    if (*export_cmd)
        return cmd_export(ctx, export_file, table_opt->count() ? std::optional(export_table) : std::nullopt,
                          export_format);
    if (*index_cmd) return cmd_index(ctx, index_dir, index_output);
    if (*query_cmd) return cmd_query(ctx, query_index, query_dim, query_min, query_max);
    if (*fmt_cmd) return cmd_fmt(ctx, fmt_file, fmt_in_place, fmt_crlf);
    return usage;
}

}  // namespace fmf::cli
