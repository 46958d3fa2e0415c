#include "biblio/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace biblio {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
    throw DatabaseError(origin + ": " + what);
}

const json& member(const std::string& origin, const json& obj,
                   const char* key, const char* where) {
    const auto it = obj.find(key);
    if (it == obj.end())
        fail(origin, std::string(where) + " is missing \"" + key + "\"");
    return *it;
}

std::string string_member(const std::string& origin, const json& obj,
                          const char* key, const char* where) {
    const json& v = member(origin, obj, key, where);
    if (!v.is_string())
        fail(origin, std::string(where) + " field \"" + key + "\" must be a string");
    return v.get<std::string>();
}

} // namespace

ParsedDatabase parse_database_text(const std::string& text,
                                   const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(origin, std::string("malformed document: ") + e.what());
    }
    if (!doc.is_object())
        fail(origin, "top level must be an object");

    ParsedDatabase out;
    std::vector<Database::AuthorRecord> authors;

    const json& author_list = member(origin, doc, "authors", "document");
    if (!author_list.is_array())
        fail(origin, "\"authors\" must be an array");
    for (std::size_t i = 0; i < author_list.size(); ++i) {
        const json& a = author_list[i];
        const std::string where = "authors[" + std::to_string(i) + "]";
        if (!a.is_object())
            fail(origin, where + " must be an object");
        Database::AuthorRecord rec;
        rec.id = string_member(origin, a, "id", where.c_str());
        const json& papers = member(origin, a, "papers", where.c_str());
        if (!papers.is_array())
            fail(origin, where + " field \"papers\" must be an array");
        for (const json& p : papers) {
            if (!p.is_string())
                fail(origin, where + " paper ids must be strings");
            rec.papers.push_back(p.get<std::string>());
        }
        if (const auto it = a.find("activity"); it != a.end()) {
            if (!it->is_number())
                fail(origin, where + " field \"activity\" must be a number");
            out.activity[rec.id] = it->get<double>();
        }
        authors.push_back(std::move(rec));
    }

    std::vector<Database::EdgeRecord> edges;
    const json& citations = member(origin, doc, "citations", "document");
    if (!citations.is_array())
        fail(origin, "\"citations\" must be an array");
    for (std::size_t i = 0; i < citations.size(); ++i) {
        const json& c = citations[i];
        const std::string where = "citations[" + std::to_string(i) + "]";
        if (!c.is_object())
            fail(origin, where + " must be an object");
        edges.push_back({string_member(origin, c, "cited", where.c_str()),
                         string_member(origin, c, "citing", where.c_str())});
    }

    try {
        out.db = Database::make(authors, edges);
    } catch (const DatabaseError& e) {
        fail(origin, e.what());
    }

    if (const auto it = doc.find("shares"); it != doc.end()) {
        if (!it->is_object())
            fail(origin, "\"shares\" must be an object");
        for (const auto& [paper, entry] : it->items()) {
            if (!entry.is_object())
                fail(origin, "shares of \"" + paper + "\" must be an object");
            auto& per_paper = out.weights.paper_shares[paper];
            for (const auto& [author, share] : entry.items()) {
                if (!share.is_number())
                    fail(origin, "share of \"" + author + "\" on \"" + paper +
                                     "\" must be a number");
                per_paper[author] = share.get<double>();
            }
        }
        try {
            out.weights.validate(out.db, 1e-9);
        } catch (const Error& e) {
            fail(origin, e.what());
        }
    }

    return out;
}

ParsedDatabase parse_database(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return parse_database_text(buf.str(), "<stdin>");
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DatabaseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_database_text(buf.str(), path);
}

std::string format_double17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_value12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%#.12g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (const char c : s) {
        switch (c) {
        case '"':
            out += "\\\"";
            break;
        case '\\':
            out += "\\\\";
            break;
        case '\n':
            out += "\\n";
            break;
        case '\r':
            out += "\\r";
            break;
        case '\t':
            out += "\\t";
            break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

std::string emit_database(const Database& d, const WeightScheme& weights,
                          const std::map<std::string, double>& activity) {
    std::ostringstream os;
    os << "{\n  \"authors\": [\n";
    const auto records = d.author_records(); // sorted by id, papers sorted
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        os << "    {";
        if (const auto it = activity.find(rec.id); it != activity.end())
            os << "\"activity\": " << format_double17(it->second) << ", ";
        os << "\"id\": \"" << json_escape(rec.id) << "\", \"papers\": [";
        for (std::size_t j = 0; j < rec.papers.size(); ++j)
            os << (j ? ", " : "") << "\"" << json_escape(rec.papers[j]) << "\"";
        os << "]}" << (i + 1 < records.size() ? "," : "") << "\n";
    }
    os << "  ],\n  \"citations\": [\n";
    const auto edges = d.edge_records(); // sorted by (cited, citing)
    for (std::size_t i = 0; i < edges.size(); ++i) {
        os << "    {\"cited\": \"" << json_escape(edges[i].cited)
           << "\", \"citing\": \"" << json_escape(edges[i].citing) << "\"}"
           << (i + 1 < edges.size() ? "," : "") << "\n";
    }
    os << "  ]";

    if (!weights.paper_shares.empty()) {
        os << ",\n  \"shares\": {\n";
        std::size_t i = 0;
        for (const auto& [paper, entry] : weights.paper_shares) {
            os << "    \"" << json_escape(paper) << "\": {";
            std::size_t j = 0;
            for (const auto& [author, share] : entry) {
                os << (j++ ? ", " : "") << "\"" << json_escape(author)
                   << "\": " << format_double17(share);
            }
            os << "}" << (++i < weights.paper_shares.size() ? "," : "") << "\n";
        }
        os << "  }";
    }
    os << "\n}\n";
    return os.str();
}

ReportFormat parse_report_format(std::string_view name) {
    if (name == "csv")
        return ReportFormat::csv;
    if (name == "json")
        return ReportFormat::json;
    throw UsageError("unknown format '" + std::string(name) +
                     "' (expected csv or json)");
}

namespace {

std::string csv_quote(const std::string& cell) {
    if (cell.find_first_of(",\"\n\r") == std::string::npos)
        return cell;
    std::string out = "\"";
    for (const char c : cell) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

void write_report(std::ostream& os, const Report& report, ReportFormat format) {
    if (format == ReportFormat::csv) {
        for (const auto& [key, value] : report.meta)
            os << "# " << key << "=" << value << "\n";
        for (std::size_t i = 0; i < report.columns.size(); ++i)
            os << (i ? "," : "") << csv_quote(report.columns[i]);
        os << "\n";
        for (const auto& row : report.rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << csv_quote(row[i]);
            os << "\n";
        }
        return;
    }

    os << "{\n  \"meta\": {";
    for (std::size_t i = 0; i < report.meta.size(); ++i) {
        os << (i ? ", " : "") << "\"" << json_escape(report.meta[i].first)
           << "\": \"" << json_escape(report.meta[i].second) << "\"";
    }
    os << "},\n  \"columns\": [";
    for (std::size_t i = 0; i < report.columns.size(); ++i)
        os << (i ? ", " : "") << "\"" << json_escape(report.columns[i]) << "\"";
    os << "],\n  \"rows\": [\n";
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
        os << "    [";
        for (std::size_t i = 0; i < report.rows[r].size(); ++i)
            os << (i ? ", " : "") << "\"" << json_escape(report.rows[r][i]) << "\"";
        os << "]" << (r + 1 < report.rows.size() ? "," : "") << "\n";
    }
    os << "  ]";
    for (const auto& [key, blob] : report.json_blobs)
        os << ",\n  \"" << json_escape(key) << "\": " << blob;
    os << "\n}\n";
}

} // namespace biblio
