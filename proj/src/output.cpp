#include "probeview/output.hpp"

#include <cmath>
#include <cstdio>

namespace probeview {

std::string format_real(double x) {
    if (!std::isfinite(x)) return "null";
    if (x == 0.0) return "0";  // folds -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void JsonWriter::separate() {
    if (after_key_) {
        after_key_ = false;
        return;
    }
    if (!first_.empty()) {
        if (!first_.back()) os_ << ',';
        first_.back() = false;
    }
}

JsonWriter& JsonWriter::begin_object() {
    separate();
    os_ << '{';
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    first_.pop_back();
    os_ << '}';
    if (first_.empty()) os_ << '\n';
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    separate();
    os_ << '[';
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    first_.pop_back();
    os_ << ']';
    if (first_.empty()) os_ << '\n';
    return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
    value(k);
    os_ << ':';
    after_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(double x) {
    separate();
    os_ << format_real(x);
    return *this;
}

JsonWriter& JsonWriter::value(std::int64_t x) {
    separate();
    os_ << x;
    return *this;
}

JsonWriter& JsonWriter::value(bool b) {
    separate();
    os_ << (b ? "true" : "false");
    return *this;
}

JsonWriter& JsonWriter::value(std::string_view s) {
    separate();
    os_ << '"';
    for (char c : s) {
        switch (c) {
            case '"': os_ << "\\\""; break;
            case '\\': os_ << "\\\\"; break;
            case '\n': os_ << "\\n"; break;
            case '\t': os_ << "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    os_ << buf;
                } else {
                    os_ << c;
                }
        }
    }
    os_ << '"';
    return *this;
}

JsonWriter& JsonWriter::complex(Complex<double> z) {
    return begin_object().key("re").value(z.real()).key("im").value(z.imag()).end_object();
}

void write_sweep_csv(std::ostream& os, const SweepResult<double>& sweep) {
    for (std::size_t k = 0; k < sweep.schema.size(); ++k) os << (k ? "," : "") << sweep.schema[k];
    os << '\n';
    for (const auto& row : sweep.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << format_real(row[k]);
        os << '\n';
    }
}

void write_sweep_json(std::ostream& os, const SweepResult<double>& sweep, std::string_view command) {
    JsonWriter w(os);
    w.begin_object().key("command").value(command).key("schema").begin_array();
    for (const auto& name : sweep.schema) w.value(name);
    w.end_array().key("rows").begin_array();
    for (const auto& row : sweep.rows) {
        w.begin_array();
        for (double x : row) w.value(x);
        w.end_array();
    }
    w.end_array().end_object();
}

}  // namespace probeview
