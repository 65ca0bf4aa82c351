#include "vonroos/table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace vonroos {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";  // normalize negative zero
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string csv_text(const Cell& c) {
    struct Visitor {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(const std::string& v) const { return v; }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
    };
    return std::visit(Visitor{}, c);
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += ch;
        }
    }
    return out;
}

std::string json_text(const Cell& c) {
    struct Visitor {
        std::string operator()(std::monostate) const { return "null"; }
        std::string operator()(double v) const {
            if (!std::isfinite(v)) return "null";
            return format_double(v);
        }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(const std::string& v) const {
            return "\"" + json_escape(v) + "\"";
        }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
    };
    return std::visit(Visitor{}, c);
}

void write_json_row(const Table& t, const std::vector<Cell>& row, std::ostream& out) {
    out << "{";
    for (size_t c = 0; c < t.columns.size(); ++c) {
        if (c) out << ",";
        out << "\"" << json_escape(t.columns[c]) << "\":" << json_text(row[c]);
    }
    out << "}";
}

}  // namespace

void write_csv(const Table& t, std::ostream& out) {
    for (size_t c = 0; c < t.columns.size(); ++c) {
        if (c) out << ",";
        out << t.columns[c];
    }
    out << "\n";
    for (const auto& row : t.rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) out << ",";
            out << csv_text(row[c]);
        }
        out << "\n";
    }
}

void write_json_array(const Table& t, std::ostream& out) {
    out << "[";
    for (size_t r = 0; r < t.rows.size(); ++r) {
        out << (r ? ",\n " : "\n ");
        write_json_row(t, t.rows[r], out);
    }
    out << (t.rows.empty() ? "]\n" : "\n]\n");
}

void write_json_object(const Table& t, std::ostream& out) {
    if (t.rows.empty()) {
        out << "{}\n";
        return;
    }
    write_json_row(t, t.rows[0], out);
    out << "\n";
}

void write_pretty(const Table& t, std::ostream& out) {
    std::vector<size_t> widths(t.columns.size());
    for (size_t c = 0; c < t.columns.size(); ++c) widths[c] = t.columns[c].size();
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : t.rows) {
        std::vector<std::string> texts;
        for (size_t c = 0; c < row.size(); ++c) {
            texts.push_back(csv_text(row[c]));
            widths[c] = std::max(widths[c], texts.back().size());
        }
        cells.push_back(std::move(texts));
    }
    const auto pad = [&](const std::string& s, size_t w) {
        return s + std::string(w - s.size(), ' ');
    };
    for (size_t c = 0; c < t.columns.size(); ++c) {
        out << (c ? "  " : "") << pad(t.columns[c], widths[c]);
    }
    out << "\n";
    for (const auto& row : cells) {
        for (size_t c = 0; c < row.size(); ++c) {
            out << (c ? "  " : "") << pad(row[c], widths[c]);
        }
        out << "\n";
    }
}

void write_table(const Table& t, OutputFormat format, bool single_object,
                 std::ostream& out) {
    switch (format) {
        case OutputFormat::Csv: write_csv(t, out); break;
        case OutputFormat::Json:
            if (single_object) {
                write_json_object(t, out);
            } else {
                write_json_array(t, out);
            }
            break;
        case OutputFormat::Pretty: write_pretty(t, out); break;
    }
}

}  // namespace vonroos
