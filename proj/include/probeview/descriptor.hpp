#ifndef PROBEVIEW_DESCRIPTOR_HPP
#define PROBEVIEW_DESCRIPTOR_HPP

#include <string>
#include <string_view>

#include <json.hpp>

#include "probeview/fock.hpp"

namespace probeview {

/// Parses a JSON state descriptor:
///
///   {"family":"number","n":3}
///   {"family":"coherent","alpha":{"re":1.0,"im":0.0}}
///   {"family":"thermal","betaE":0.693}            (or "beta" and "E")
///   {"family":"custom","coeffs":[[re,im],...]}
///   {"family":"mixture","weights":[...],"states":[...]}
///
/// Mixture components are pure descriptors (number, coherent, custom) or bare
/// coefficient arrays; coherent components are placed on the basis of `policy`.
/// Throws ValidationError on malformed input.
StateFamily<double> parse_state_descriptor(const nlohmann::json& j, const TruncationPolicy<double>& policy);
StateFamily<double> parse_state_descriptor(std::string_view text, const TruncationPolicy<double>& policy);

inline StateFamily<double> parse_state_descriptor(const std::string& text, const TruncationPolicy<double>& policy) {
    return parse_state_descriptor(std::string_view(text), policy);
}
inline StateFamily<double> parse_state_descriptor(const char* text, const TruncationPolicy<double>& policy) {
    return parse_state_descriptor(std::string_view(text), policy);
}

}  // namespace probeview

#endif  // PROBEVIEW_DESCRIPTOR_HPP
