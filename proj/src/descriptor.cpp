#include "probeview/descriptor.hpp"

#include <string>

namespace probeview {

namespace {

using nlohmann::json;

double number_field(const json& j, const char* key) {
    if (!j.contains(key)) throw ValidationError(std::string("state descriptor is missing \"") + key + "\"");
    const json& v = j.at(key);
    if (!v.is_number()) throw ValidationError(std::string("\"") + key + "\" must be a number");
    return v.get<double>();
}

/// Accepts {"re":x,"im":y}, [x, y], or a bare real x.
Complex<double> complex_value(const json& v, const char* what) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    if (v.is_object() && v.contains("re") && v.at("re").is_number()) {
        double im = 0.0;
        if (v.contains("im")) {
            if (!v.at("im").is_number()) throw ValidationError(std::string(what) + ": \"im\" must be a number");
            im = v.at("im").get<double>();
        }
        return {v.at("re").get<double>(), im};
    }
    throw ValidationError(std::string(what) + " must be a number, [re, im], or {\"re\":..,\"im\":..}");
}

FockVector<double> coefficient_array(const json& v) {
    if (!v.is_array() || v.empty()) throw ValidationError("\"coeffs\" must be a nonempty array");
    Vector<double> c(static_cast<Index>(v.size()));
    for (std::size_t k = 0; k < v.size(); ++k) c(static_cast<Index>(k)) = complex_value(v[k], "coefficient");
    return FockVector<double>::normalized(std::move(c));
}

FockVector<double> pure_component(const json& j, const TruncationPolicy<double>& policy) {
    if (j.is_array()) return coefficient_array(j);
    const StateFamily<double> family = parse_state_descriptor(j, policy);
    if (std::holds_alternative<ThermalState<double>>(family) || std::holds_alternative<MixtureState<double>>(family))
        throw ValidationError("mixture components must be pure states");
    return std::get<FockVector<double>>(materialize(family, policy).state);
}

}  // namespace

StateFamily<double> parse_state_descriptor(const json& j, const TruncationPolicy<double>& policy) {
    if (!j.is_object()) throw ValidationError("state descriptor must be a JSON object");
    if (!j.contains("family") || !j.at("family").is_string())
        throw ValidationError("state descriptor needs a string \"family\"");
    const std::string family = j.at("family").get<std::string>();

    StateFamily<double> out;
    if (family == "number") {
        const json& n = j.contains("n") ? j.at("n") : json();
        if (!n.is_number_integer() || n.get<long long>() < 0)
            throw ValidationError("number state needs a nonnegative integer \"n\"");
        out = NumberState{static_cast<Index>(n.get<long long>())};
    } else if (family == "coherent") {
        if (!j.contains("alpha")) throw ValidationError("coherent state needs \"alpha\"");
        out = CoherentState<double>{complex_value(j.at("alpha"), "alpha")};
    } else if (family == "thermal") {
        if (j.contains("betaE")) {
            out = ThermalState<double>{number_field(j, "betaE"), 1.0};
        } else {
            out = ThermalState<double>{number_field(j, "beta"), number_field(j, "E")};
        }
    } else if (family == "custom") {
        if (!j.contains("coeffs")) throw ValidationError("custom state needs \"coeffs\"");
        out = CustomState<double>{coefficient_array(j.at("coeffs"))};
    } else if (family == "mixture") {
        if (!j.contains("weights") || !j.at("weights").is_array())
            throw ValidationError("mixture needs a \"weights\" array");
        if (!j.contains("states") || !j.at("states").is_array())
            throw ValidationError("mixture needs a \"states\" array");
        MixtureState<double> m;
        for (const json& w : j.at("weights")) {
            if (!w.is_number()) throw ValidationError("mixture weights must be numbers");
            m.weights.push_back(w.get<double>());
        }
        for (const json& s : j.at("states")) m.states.push_back(pure_component(s, policy));
        out = std::move(m);
    } else {
        throw ValidationError("unknown state family \"" + family + "\"");
    }
    validate(out);
    return out;
}

StateFamily<double> parse_state_descriptor(std::string_view text, const TruncationPolicy<double>& policy) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("state descriptor is not valid JSON: ") + e.what());
    }
    return parse_state_descriptor(j, policy);
}

}  // namespace probeview
