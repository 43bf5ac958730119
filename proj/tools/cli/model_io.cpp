#include "cli/model_io.hpp"

#include <filesystem>
#include <fstream>

#include "dftstat/errors.hpp"

namespace dftstat::cli {

namespace {

using nlohmann::json;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) throw InvalidInputError(where + ": missing \"" + key + "\"");
    return obj.at(key);
}

double number(const json& value, const std::string& where) {
    if (!value.is_number()) throw InvalidInputError(where + ": expected a number");
    return value.get<double>();
}

std::vector<double> numbers(const json& obj, const char* key, const std::string& where, bool required) {
    if (!obj.contains(key)) {
        if (required) throw InvalidInputError(where + ": missing \"" + key + "\"");
        return {};
    }
    const auto& arr = obj.at(key);
    if (!arr.is_array()) throw InvalidInputError(where + "." + key + ": expected an array");
    std::vector<double> out;
    for (const auto& v : arr) out.push_back(number(v, where + "." + key));
    return out;
}

SigmaSpec sigma_from_json(const json& doc) {
    const std::string where = "sigma";
    const auto& type = field(doc, "type", where);
    if (!type.is_string()) throw InvalidInputError("sigma.type: expected a string");
    SigmaSpec out;
    const auto kind = type.get<std::string>();
    if (kind == "constant") {
        out.shape = ConstantSigma{number(field(doc, "value", where), "sigma.value")};
    } else if (kind == "piecewise") {
        auto values = numbers(doc, "values", where, true);
        if (doc.contains("edges")) {
            out.shape = PiecewiseSigma{numbers(doc, "edges", where, true), std::move(values)};
        } else {
            out.shape = PiecewiseSigma::equal_width(std::move(values));
        }
    } else if (kind == "harmonic") {
        HarmonicSigma h;
        if (doc.contains("offset")) h.offset = number(doc.at("offset"), "sigma.offset");
        if (doc.contains("sin")) h.sin_coef = number(doc.at("sin"), "sigma.sin");
        if (doc.contains("cos")) h.cos_coef = number(doc.at("cos"), "sigma.cos");
        if (doc.contains("cycles")) h.cycles = number(doc.at("cycles"), "sigma.cycles");
        out.shape = h;
    } else {
        throw InvalidInputError("sigma.type: unknown '" + kind + "' (constant, piecewise, harmonic)");
    }
    if (doc.contains("reference_length")) out.reference_length = number(doc.at("reference_length"), "sigma.reference_length");
    return out;
}

json sigma_to_json(const SigmaSpec& sigma) {
    json out = std::visit(Overloaded{[](const ConstantSigma& c) { return json{{"type", "constant"}, {"value", c.value}}; },
                                     [](const PiecewiseSigma& p) {
                                         return json{{"type", "piecewise"}, {"values", p.values}, {"edges", p.edges}};
                                     },
                                     [](const HarmonicSigma& h) {
                                         return json{{"type", "harmonic"},
                                                     {"offset", h.offset},
                                                     {"sin", h.sin_coef},
                                                     {"cos", h.cos_coef},
                                                     {"cycles", h.cycles}};
                                     }},
                          sigma.shape);
    if (sigma.reference_length) out["reference_length"] = *sigma.reference_length;
    return out;
}

}  // namespace

ModelSpec model_from_json(const json& doc) {
    const auto& family_value = field(doc, "family", "model");
    if (!family_value.is_string()) throw InvalidInputError("model.family: expected a string");
    const auto family = family_value.get<std::string>();
    ModelSpec spec;
    if (family == "arma") {
        spec = ArmaModel{numbers(doc, "ar", "model", false), numbers(doc, "ma", "model", false)};
    } else if (family == "changepoint_ar") {
        const auto& segs = field(doc, "segments", "model");
        if (!segs.is_array()) throw InvalidInputError("model.segments: expected an array");
        ChangepointArModel cp;
        for (const auto& seg : segs) {
            cp.segments.push_back(
                {number(field(seg, "until", "segment"), "segment.until"), numbers(seg, "ar", "segment", true)});
        }
        spec = cp;
    } else if (family == "tv_innovation_ar") {
        spec = TvInnovationArModel{numbers(doc, "ar", "model", false), sigma_from_json(field(doc, "sigma", "model"))};
    } else if (family == "modulated_noise") {
        spec = ModulatedNoiseModel{sigma_from_json(field(doc, "sigma", "model"))};
    } else {
        throw InvalidInputError("model.family: unknown '" + family +
                                "' (arma, changepoint_ar, tv_innovation_ar, modulated_noise)");
    }
    return spec;
}

json model_to_json(const ModelSpec& spec) {
    return std::visit(
        Overloaded{[](const ArmaModel& m) { return json{{"family", "arma"}, {"ar", m.ar}, {"ma", m.ma}}; },
                   [](const ChangepointArModel& m) {
                       json segs = json::array();
                       for (const auto& s : m.segments) segs.push_back({{"until", s.end_fraction}, {"ar", s.ar}});
                       return json{{"family", "changepoint_ar"}, {"segments", segs}};
                   },
                   [](const TvInnovationArModel& m) {
                       return json{{"family", "tv_innovation_ar"}, {"ar", m.ar}, {"sigma", sigma_to_json(m.sigma)}};
                   },
                   [](const ModulatedNoiseModel& m) {
                       return json{{"family", "modulated_noise"}, {"sigma", sigma_to_json(m.sigma)}};
                   }},
        spec);
}

ResolvedModel resolve_model(const std::string& name_or_path) {
    for (const auto& preset : preset_names()) {
        if (preset == name_or_path) return {name_or_path, model_preset(name_or_path)};
    }
    std::error_code ec;
    if (!std::filesystem::is_regular_file(name_or_path, ec)) {
        return {name_or_path, model_preset(name_or_path)};  // throws, listing the presets
    }
    std::ifstream in(name_or_path);
    if (!in) throw InvalidInputError("cannot open model file '" + name_or_path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidInputError("model file '" + name_or_path + "': " + e.what());
    }
    return {name_or_path, model_from_json(doc)};
}

}  // namespace dftstat::cli
