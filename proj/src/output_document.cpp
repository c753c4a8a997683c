#include "covadj/output_document.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <type_traits>

namespace covadj {

namespace {

std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
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
    return out + "\"";
}

std::string format_scalar(const Scalar& value, OutputFormat format) {
    return std::visit(
        [format](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                return format_real(v, format);
            } else if constexpr (std::is_same_v<T, long long> ||
                                 std::is_same_v<T, unsigned long long>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else {
                return format == OutputFormat::json ? json_string(v) : v;
            }
        },
        value);
}

}  // namespace

std::string format_real(double value, OutputFormat format) {
    if (std::isnan(value)) return format == OutputFormat::json ? "null" : "nan";
    if (std::isinf(value)) {
        if (format == OutputFormat::json) return "null";
        return value > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

OutputDocument& OutputDocument::add(std::string key, Scalar value) {
    fields_.push_back({std::move(key), std::move(value)});
    return *this;
}

OutputDocument& OutputDocument::set_table(Table table) {
    table_ = std::move(table);
    return *this;
}

void OutputDocument::write(std::ostream& out, OutputFormat format) const {
    if (format == OutputFormat::json) {
        write_json(out);
    } else {
        write_csv(out);
    }
}

std::string OutputDocument::render(OutputFormat format) const {
    std::ostringstream out;
    write(out, format);
    return out.str();
}

void OutputDocument::write_json(std::ostream& out) const {
    out << '{';
    bool first = true;
    for (const Field& f : fields_) {
        out << (first ? "" : ",") << "\n  " << json_string(f.key) << ": "
            << format_scalar(f.value, OutputFormat::json);
        first = false;
    }
    if (table_) {
        out << (first ? "" : ",") << "\n  " << json_string(table_->name) << ": [";
        for (std::size_t i = 0; i < table_->rows.size(); ++i) {
            out << (i == 0 ? "" : ",") << "\n    {";
            const auto& row = table_->rows[i];
            for (std::size_t j = 0; j < table_->columns.size(); ++j) {
                out << (j == 0 ? "" : ", ") << json_string(table_->columns[j]) << ": "
                    << format_real(row.at(j), OutputFormat::json);
            }
            out << '}';
        }
        out << "\n  ]";
    }
    out << "\n}\n";
}

void OutputDocument::write_csv(std::ostream& out) const {
    if (table_) {
        for (std::size_t j = 0; j < table_->columns.size(); ++j) {
            out << (j == 0 ? "" : ",") << table_->columns[j];
        }
        out << '\n';
        for (const auto& row : table_->rows) {
            for (std::size_t j = 0; j < table_->columns.size(); ++j) {
                out << (j == 0 ? "" : ",") << format_real(row.at(j), OutputFormat::csv);
            }
            out << '\n';
        }
        return;
    }
    for (std::size_t i = 0; i < fields_.size(); ++i) {
        out << (i == 0 ? "" : ",") << fields_[i].key;
    }
    out << '\n';
    for (std::size_t i = 0; i < fields_.size(); ++i) {
        out << (i == 0 ? "" : ",") << format_scalar(fields_[i].value, OutputFormat::csv);
    }
    out << '\n';
}

}  // namespace covadj
