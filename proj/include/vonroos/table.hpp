#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace vonroos {

// One output cell. Doubles are always rendered with 17 significant digits so
// csv/json output is byte-deterministic and round-trips exactly.
using Cell = std::variant<std::monostate, double, long long, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> cells) { rows.push_back(std::move(cells)); }
};

/// %.17g rendering; "nan"/"inf"/"-inf" for non-finite values.
std::string format_double(double v);

void write_csv(const Table& t, std::ostream& out);
/// JSON array of flat objects, one per row; non-finite numbers become null.
void write_json_array(const Table& t, std::ostream& out);
/// Single flat JSON object from the first row.
void write_json_object(const Table& t, std::ostream& out);
void write_pretty(const Table& t, std::ostream& out);

enum class OutputFormat { Csv, Json, Pretty };

/// Dispatches on format; single_object selects object-vs-array JSON shape.
void write_table(const Table& t, OutputFormat format, bool single_object,
                 std::ostream& out);

}  // namespace vonroos
