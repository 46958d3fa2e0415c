#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "biblio/author_index.hpp"
#include "biblio/database.hpp"

namespace biblio {

struct ParsedDatabase {
    Database db;
    WeightScheme weights;                   // shares from the file
    std::map<std::string, double> activity; // optional per-author activity
};

/// Parses the JSON database document. Schema:
///   { "authors":   [ {"id": ..., "papers": [...], "activity"?: n}, ... ],
///     "citations": [ {"cited": ..., "citing": ...}, ... ],
///     "shares"?:   { paper: { author: share, ... }, ... } }
/// Errors carry the origin label and the offending field.
ParsedDatabase parse_database_text(const std::string& text,
                                   const std::string& origin);
ParsedDatabase parse_database(const std::string& path); // "-" reads stdin

/// Canonical serialization: sorted ids, fixed key order, floats with 17
/// significant digits. emit then parse then emit is byte-identical.
std::string emit_database(const Database& d, const WeightScheme& weights = {},
                          const std::map<std::string, double>& activity = {});

/// 17-significant-digit float form used by the database format.
std::string format_double17(double v);
/// 12-significant-digit form used by reports (trailing zeros kept).
std::string format_value12(double v);

enum class ReportFormat { csv, json };
ReportFormat parse_report_format(std::string_view name);

/// A tabular report plus a metadata block. Rows must arrive sorted by
/// their first column (author id or another stable key).
struct Report {
    std::vector<std::pair<std::string, std::string>> meta; // emitted in order
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    /// JSON-only extras (already-serialized objects), e.g. axiom
    /// witnesses with embedded database documents.
    std::vector<std::pair<std::string, std::string>> json_blobs;
};

void write_report(std::ostream& os, const Report& report, ReportFormat format);

std::string json_escape(const std::string& s);

} // namespace biblio
