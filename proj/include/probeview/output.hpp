#ifndef PROBEVIEW_OUTPUT_HPP
#define PROBEVIEW_OUTPUT_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "probeview/analysis.hpp"

namespace probeview {

/// Fixed 17-significant-digit rendering ("%.17g"); non-finite values become "null".
std::string format_real(double x);

/// Minimal streaming JSON emitter producing compact, deterministic output.
class JsonWriter {
public:
    explicit JsonWriter(std::ostream& os) : os_(os) {}

    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(std::string_view k);
    JsonWriter& value(double x);
    JsonWriter& value(std::int64_t x);
    JsonWriter& value(bool b);
    JsonWriter& value(std::string_view s);
    JsonWriter& value(const char* s) { return value(std::string_view(s)); }
    JsonWriter& complex(Complex<double> z);

private:
    void separate();

    std::ostream& os_;
    std::vector<bool> first_;
    bool after_key_ = false;
};

void write_sweep_csv(std::ostream& os, const SweepResult<double>& sweep);
void write_sweep_json(std::ostream& os, const SweepResult<double>& sweep, std::string_view command);

}  // namespace probeview

#endif  // PROBEVIEW_OUTPUT_HPP
