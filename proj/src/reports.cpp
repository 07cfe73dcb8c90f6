#include "directions/io.hpp"

#include <sstream>

namespace directions {

namespace {

nlohmann::json with_schema(const char* kind) {
    nlohmann::json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["report"] = kind;
    return doc;
}

nlohmann::json coords_json(std::span<const double> x) { return nlohmann::json(std::vector<double>(x.begin(), x.end())); }

}  // namespace

std::string decimal_string(const Natural& n) {
    std::ostringstream out;
    out << n;
    return out.str();
}

nlohmann::json to_json(const DirectionCloud& cloud) {
    auto doc = with_schema("direction-cloud");
    doc["rule"] = cloud.source_rule();
    doc["N"] = decimal_string(cloud.source_bound());
    doc["k"] = cloud.dim();
    doc["distinct"] = cloud.distinct_entries_only();
    doc["count"] = cloud.size();
    doc["sampled"] = cloud.sampled();
    doc["tuples_examined"] = cloud.tuples_examined();
    return doc;
}

std::string to_csv(const DirectionCloud& cloud) {
    std::ostringstream out;
    for (std::size_t j = 0; j < cloud.dim(); ++j) out << (j ? ",d" : "d") << j + 1;
    out << '\n';
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto d = cloud.primitive_at(i);
        for (std::size_t j = 0; j < d.dim(); ++j) out << (j ? "," : "") << d[j];
        out << '\n';
    }
    return out.str();
}

nlohmann::json to_json(const DensityReport& report) {
    auto doc = with_schema("density");
    doc["covering_radius"] = report.covering_radius;
    doc["argmax_net_point"] = coords_json(report.argmax_net_point.coords());
    doc["source"] = report.source;
    doc["N"] = report.N;
    doc["k"] = report.k;
    doc["h"] = report.h;
    doc["cloud_size"] = report.cloud_size;
    doc["net_size"] = report.net_size;
    doc["distinct"] = report.distinct_entries_only;
    doc["sampled"] = report.sampled;
    doc["method"] = report.method;
    return doc;
}

nlohmann::json to_json(const RatioGapStat& stat) {
    auto doc = with_schema("ratio-gap");
    nlohmann::json windows = nlohmann::json::array();
    for (const auto& w : stat.windows) {
        windows.push_back({{"first_index", w.first_index}, {"last_index", w.last_index}, {"max_gap", w.max_gap}});
    }
    doc["windows"] = windows;
    doc["max_gap"] = stat.max_gap;
    doc["strictly_decreasing"] = stat.strictly_decreasing();
    doc["caveat"] = RatioGapStat::caveat;
    return doc;
}

std::string to_csv(const RatioGapStat& stat) {
    std::ostringstream out;
    out.precision(17);
    out << "window,first_index,last_index,max_gap\n";
    for (std::size_t i = 0; i < stat.windows.size(); ++i) {
        const auto& w = stat.windows[i];
        out << i + 1 << ',' << w.first_index << ',' << w.last_index << ',' << w.max_gap << '\n';
    }
    return out.str();
}

nlohmann::json to_json(const WitnessResult& result, const UnitVector& x, std::uint64_t m) {
    auto doc = with_schema("witness");
    doc["x"] = coords_json(x.coords());
    doc["m"] = m;
    std::vector<std::string> tuple;
    for (const auto& e : result.tuple.entries()) tuple.push_back(decimal_string(e));
    doc["tuple"] = tuple;
    doc["indices"] = result.indices;
    doc["error"] = result.error;
    doc["max_ratio"] = result.max_ratio;
    doc["error_bound"] = 2 * (result.max_ratio - 1);
    return doc;
}

nlohmann::json to_json(const ChainReport& report) {
    auto doc = with_schema("chain");
    doc["upper"] = to_json(report.upper);
    doc["lower"] = to_json(report.lower);
    doc["eps_k"] = report.upper.covering_radius;
    doc["eps_k_minus_1"] = report.lower.covering_radius;
    doc["forward_holds"] = report.forward_holds();
    doc["forward_slack"] = 2 * report.upper.h;
    return doc;
}

nlohmann::json to_json(const NetAudit& audit) {
    auto doc = with_schema("net-audit");
    doc["k"] = audit.k;
    doc["h"] = audit.h;
    doc["denominator"] = audit.denominator;
    doc["net_size"] = audit.net_size;
    doc["samples"] = audit.samples;
    doc["seed"] = audit.seed;
    doc["mesh_bound"] = audit.mesh_bound;
    doc["max_distance"] = audit.max_distance;
    doc["within_h"] = audit.within_h();
    return doc;
}

nlohmann::json to_json(const ValidityReport& report) {
    auto doc = with_schema("validity");
    doc["closed_ok"] = report.closed_ok;
    doc["permutation_ok"] = report.permutation_ok;
    doc["projection_ok"] = report.projection_ok;
    doc["verdict"] = report.verdict == Verdict::valid     ? "valid"
                     : report.verdict == Verdict::invalid ? "invalid"
                                                          : "unverifiable";
    nlohmann::json witnesses = nlohmann::json::array();
    for (const auto& w : report.witnesses) {
        witnesses.push_back({{"point", w.point}, {"action", w.action}, {"missing_image", w.missing_image}});
    }
    doc["witnesses"] = witnesses;
    return doc;
}

nlohmann::json to_json(const StepRecord& step) {
    nlohmann::json doc;
    doc["m"] = step.m;
    doc["s"] = step.s;
    doc["t"] = step.t;
    std::vector<std::string> c, y;
    for (const auto& e : step.c.entries()) c.push_back(decimal_string(e));
    for (const auto& e : step.y.unit_coords()) y.push_back(e.to_string());
    doc["c"] = c;
    doc["y"] = y;
    doc["rho_error"] = step.certificate.rho_error;
    doc["certificates"] = {{"C1", step.certificate.distinct_entries},
                           {"C2", step.certificate.new_ratio},
                           {"C3", step.certificate.floor_offsets},
                           {"C4", step.certificate.rho_bound}};
    return doc;
}

nlohmann::json to_json(const VerificationReport& report) {
    auto doc = with_schema("verification");
    doc["M"] = report.M;
    doc["L_index"] = report.L_index;
    doc["h"] = report.h;
    doc["tolerance"] = report.tolerance;
    doc["tail_threshold"] = decimal_string(report.tail_threshold);
    doc["forward_sample_size"] = report.forward_sample_size;
    doc["forward_hausdorff"] = report.forward_hausdorff;
    doc["tail_elements"] = report.tail_elements;
    doc["tail_directions"] = report.tail_directions;
    doc["backward_hausdorff"] = report.backward_hausdorff;
    doc["backward_violations"] = report.backward_violations;
    doc["worst_direction"] = report.worst_direction;
    doc["mechanism"] = {{"max_distance", report.mechanism_max_distance},
                        {"max_ratio_to_bound", report.mechanism_max_ratio},
                        {"violations", report.mechanism_violations}};
    return doc;
}

nlohmann::json to_json(const RemarkReport& report) {
    auto doc = with_schema("demo-remark");
    doc["k"] = report.k;
    doc["M"] = report.M;
    doc["target_size"] = report.target_size;
    doc["theta"] = report.theta;
    doc["repetition_distance"] = report.repetition_distance;
    doc["repetition_tuple"] = report.repetition_direction;
    doc["tail_threshold"] = decimal_string(report.tail_threshold);
    doc["distinct_tail_distance"] = report.distinct_tail_distance;
    doc["separation"] = report.separation;
    doc["separation_exact"] = report.separation_exact;
    doc["separation_point"] = report.separation_point;
    return doc;
}

}  // namespace directions
