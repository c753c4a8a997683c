#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace covadj {

enum class OutputFormat { json, csv };

using Scalar = std::variant<double, long long, unsigned long long, bool, std::string>;

struct Field {
    std::string key;
    Scalar value;
};

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// Result of one CLI command. Reals are written with 17 significant digits.
//
// JSON: a single object holding the fields in insertion order, plus the
// table (if any) as an array of row objects under table.name.
// CSV: comma-separated, header row, LF endings. With a table, the table
// rows are written; otherwise one row of the fields.
class OutputDocument {
public:
    OutputDocument& add(std::string key, Scalar value);
    OutputDocument& set_table(Table table);

    const std::vector<Field>& fields() const { return fields_; }
    const std::optional<Table>& table() const { return table_; }

    void write(std::ostream& out, OutputFormat format) const;
    std::string render(OutputFormat format) const;

private:
    void write_json(std::ostream& out) const;
    void write_csv(std::ostream& out) const;

    std::vector<Field> fields_;
    std::optional<Table> table_;
};

// "%.17g" for finite values; "null" (JSON) or "nan"/"inf"/"-inf" (CSV) otherwise.
std::string format_real(double value, OutputFormat format);

}  // namespace covadj
