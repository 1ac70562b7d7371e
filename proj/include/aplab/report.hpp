#pragma once

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace aplab {

inline constexpr const char* kSchemaVersion = "almostprime-lab/1";

enum class ReportFormat { human, json, csv };

using Json = nlohmann::ordered_json;

// Report skeleton shared by every subcommand: schema version, command name,
// a stable identifier of the quantity computed, the full parameter set, and
// the seed.  Handlers attach "results" and optionally a "table"
// ({"columns": [...], "rows": [[...], ...]}).
Json make_report(const std::string& command, const std::string& anchor, Json params,
                 std::uint64_t seed);

// Identical inputs produce byte-identical output in every format.  CSV uses
// RFC 4180 quoting; when the report has no "table" the results object is
// flattened into key,value rows.
void write_report(const Json& report, ReportFormat format, std::ostream& os);

// Convenience: write to path ("" or "-" = stdout).  I/O failures throw
// io_error naming the path.
void emit_report(const Json& report, ReportFormat format, const std::string& path);

} // namespace aplab
