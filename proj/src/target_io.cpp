#include "directions/errors.hpp"
#include "directions/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace directions {

namespace {

ExactCoord coord_from_json(const nlohmann::json& entry) {
    if (!entry.is_object() || !entry.contains("q")) throw PreconditionError("coordinate must be {\"q\": ..., \"r\": ...}");
    const auto& q = entry.at("q");
    Rational value;
    if (q.is_string()) {
        value = parse_rational(q.get<std::string>());
    } else if (q.is_number_integer()) {
        value = Rational(q.get<long long>());
    } else {
        throw PreconditionError("coordinate q must be an exact string such as \"3/5\"");
    }
    Natural r = 1;
    if (entry.contains("r")) {
        const auto& rj = entry.at("r");
        if (rj.is_number_unsigned() || (rj.is_number_integer() && rj.get<long long>() >= 0)) {
            r = Natural(rj.get<unsigned long long>());
        } else if (rj.is_string()) {
            r = Natural(rj.get<std::string>());
        } else {
            throw PreconditionError("coordinate r must be a nonnegative integer");
        }
    }
    return ExactCoord(value, r);
}

}  // namespace

TargetSpec target_from_json(const nlohmann::json& doc) {
    try {
        const auto k = doc.at("k").get<std::size_t>();
        const TargetKind kind = parse_target_kind(doc.at("kind").get<std::string>());
        switch (kind) {
            case TargetKind::orthant_sphere_full: return TargetSpec::orthant_sphere_full(k);
            case TargetKind::hyperplane_boundary: return TargetSpec::hyperplane_boundary(k);
            case TargetKind::custom_enumerated:
                throw PreconditionError("custom-enumerated targets cannot be loaded from a file");
            case TargetKind::finite_set: break;
        }
        std::vector<TargetPoint> points;
        for (const auto& generator : doc.at("generators")) {
            std::vector<ExactCoord> coords;
            for (const auto& entry : generator) coords.push_back(coord_from_json(entry));
            if (coords.size() != k) throw PreconditionError("generator dimension differs from k");
            points.emplace_back(std::move(coords));
        }
        if (points.empty()) throw PreconditionError("finite-set target needs at least one generator");
        return close_generators(points);
    } catch (const nlohmann::json::exception& e) {
        throw PreconditionError(std::string("malformed target file: ") + e.what());
    }
}

TargetSpec load_target(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open target file " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw PreconditionError("target file " + path + " is not JSON: " + e.what());
    }
    return target_from_json(doc);
}

nlohmann::json target_to_json(const TargetSpec& spec) {
    nlohmann::json doc;
    doc["k"] = spec.dim();
    doc["kind"] = std::string(to_string(spec.kind()));
    nlohmann::json generators = nlohmann::json::array();
    for (const auto& p : spec.points()) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& c : p.coords()) {
            nlohmann::json entry;
            entry["q"] = to_string(c.q());
            if (c.r() <= std::numeric_limits<unsigned long long>::max()) {
                entry["r"] = static_cast<unsigned long long>(c.r());
            } else {
                entry["r"] = decimal_string(c.r());
            }
            row.push_back(entry);
        }
        generators.push_back(row);
    }
    doc["generators"] = generators;
    return doc;
}

}  // namespace directions
