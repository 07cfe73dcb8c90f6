#include "cli.hpp"

#include "directions/constructor.hpp"
#include "directions/density.hpp"
#include "directions/enumeration.hpp"
#include "directions/errors.hpp"
#include "directions/io.hpp"
#include "directions/targets.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace directions::cli {

namespace {

struct RuleArgs {
    std::string rule = "naturals";
    std::uint64_t N = 0;
    std::uint64_t base = 2;
    unsigned degree = 2;
    std::vector<std::string> elements;
};

struct TargetArgs {
    std::string spec_path;
    std::string builtin;
    std::size_t k = 0;
    std::uint64_t M = 20;
};

void add_rule_options(CLI::App* sub, RuleArgs& args, bool required = true) {
    sub->add_option("--rule", args.rule, "naturals, primes, powers, polynomial or explicit")
        ->check(CLI::IsMember({"naturals", "primes", "powers", "polynomial", "explicit"}));
    auto* n = sub->add_option("--N", args.N, "bound of the prefix A ∩ [1, N]")->check(CLI::PositiveNumber);
    if (required) n->required();
    sub->add_option("--base", args.base, "base b for powers")->check(CLI::Range(2ull, ~0ull));
    sub->add_option("--degree", args.degree, "degree d for polynomial n^d")->check(CLI::Range(1u, 64u));
    sub->add_option("--elements", args.elements, "explicit elements")->delimiter(',');
}

GroundSet make_ground_set(const RuleArgs& args, const Budget& budget) {
    GroundRule rule;
    rule.kind = parse_rule_kind(args.rule);
    rule.base = args.base;
    rule.degree = args.degree;
    for (const auto& e : args.elements) {
        try {
            rule.explicit_elements.emplace_back(e);
        } catch (const std::exception&) {
            throw PreconditionError("explicit element '" + e + "' is not an integer");
        }
    }
    if (rule.kind == RuleKind::explicit_list && rule.explicit_elements.empty()) {
        throw PreconditionError("--rule explicit needs --elements");
    }
    return ground_set(rule, args.N, budget);
}

void add_target_options(CLI::App* sub, TargetArgs& args) {
    sub->add_option("--spec", args.spec_path, "target spec JSON file");
    sub->add_option("--builtin", args.builtin, "orthant-sphere-full or hyperplane-boundary")
        ->check(CLI::IsMember({"orthant-sphere-full", "hyperplane-boundary"}));
    sub->add_option("--k", args.k, "dimension for --builtin")->check(CLI::Range(std::size_t{2}, std::size_t{10}));
    sub->add_option("--M", args.M, "construction steps")->check(CLI::PositiveNumber);
}

TargetSpec make_target(const TargetArgs& args) {
    if (args.spec_path.empty() == args.builtin.empty()) {
        throw PreconditionError("give exactly one of --spec or --builtin");
    }
    if (!args.spec_path.empty()) return load_target(args.spec_path);
    if (args.k < 2) throw PreconditionError("--builtin needs --k >= 2");
    return parse_target_kind(args.builtin) == TargetKind::hyperplane_boundary
               ? TargetSpec::hyperplane_boundary(args.k)
               : TargetSpec::orthant_sphere_full(args.k);
}

class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw PreconditionError("cannot write " + path);
            stream_ = &file_;
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

void emit(const nlohmann::json& doc, const std::string& path, std::ostream& out) {
    Sink sink(path, out);
    *sink << doc.dump(2) << '\n';
}

std::vector<double> parse_point(const std::string& text) {
    std::vector<double> v;
    std::stringstream in(text);
    std::string field;
    while (std::getline(in, field, ',')) {
        try {
            v.push_back(std::stod(field));
        } catch (const std::exception&) {
            throw PreconditionError("--x must be comma-separated numbers");
        }
    }
    return v;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Direction sets of subsets of the naturals", "directions"};
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1);
    app.set_version_flag("--version", "directions 1.0");

    std::string out_path;
    std::size_t k = 2;
    double h = 0.05;
    bool distinct = false;

    // enumerate
    RuleArgs enum_rule;
    std::string csv_path;
    bool allow_sampling = false;
    std::uint64_t sample_size = 1'000'000, seed = 1;
    unsigned workers = 1;
    auto* enumerate = app.add_subcommand("enumerate", "primitive directions of k-tuples from A, as CSV");
    add_rule_options(enumerate, enum_rule);
    enumerate->add_option("--k", k)->check(CLI::Range(std::size_t{2}, std::size_t{16}));
    enumerate->add_flag("--distinct", distinct, "pairwise distinct entries only");
    enumerate->add_option("--csv", csv_path, "write directions here and the metadata JSON to stdout");
    enumerate->add_flag("--allow-sampling", allow_sampling, "sample tuples when the count exceeds the budget");
    enumerate->add_option("--sample-size", sample_size)->check(CLI::PositiveNumber);
    enumerate->add_option("--seed", seed);
    enumerate->add_option("--workers", workers)->check(CLI::Range(1u, 256u));

    // density
    RuleArgs density_rule;
    std::string method = "auto";
    auto* density = app.add_subcommand("density", "covering radius of D^k(A) over a sphere net");
    add_rule_options(density, density_rule);
    density->add_option("--k", k)->check(CLI::Range(std::size_t{2}, std::size_t{16}));
    density->add_option("--h", h, "net resolution")->check(CLI::Range(1e-6, 1.0));
    density->add_flag("--distinct", distinct);
    density->add_option("--method", method)->check(CLI::IsMember({"auto", "kd-tree", "implicit"}));
    density->add_option("--out", out_path);

    // ratio-gap
    RuleArgs gap_rule;
    std::size_t windows = 10;
    auto* gap = app.add_subcommand("ratio-gap", "windowed max of a_n / a_{n-1} - 1");
    add_rule_options(gap, gap_rule);
    gap->add_option("--windows", windows)->check(CLI::PositiveNumber);
    gap->add_option("--csv", csv_path, "trend CSV (window, first_index, last_index, max_gap)");
    gap->add_option("--out", out_path);

    // witness
    RuleArgs witness_rule;
    std::string x_text;
    std::uint64_t m = 10'000;
    auto* witness = app.add_subcommand("witness", "tuple from A approximating an interior direction x");
    add_rule_options(witness, witness_rule);
    witness->add_option("--x", x_text, "comma-separated coordinates, normalized here")->required();
    witness->add_option("--m", m)->check(CLI::PositiveNumber);
    witness->add_option("--out", out_path);

    // construct / verify
    TargetArgs target;
    bool verify_flag = false;
    std::uint64_t L_index = 10;
    double tolerance = 1e-3;
    std::string report_path;
    auto* construct_cmd = app.add_subcommand("construct", "build A realizing a closed target set");
    add_target_options(construct_cmd, target);
    construct_cmd->add_option("--dump", out_path, "construction dump (JSON lines)");
    construct_cmd->add_flag("--verify", verify_flag, "also verify the construction");
    construct_cmd->add_option("--L", L_index, "tail scale index for verification")->check(CLI::PositiveNumber);
    construct_cmd->add_option("--h", h);
    construct_cmd->add_option("--tolerance", tolerance);
    construct_cmd->add_option("--report", report_path, "verification report (JSON)");

    auto* verify_cmd = app.add_subcommand("verify", "forward and backward checks of a construction");
    add_target_options(verify_cmd, target);
    verify_cmd->add_option("--L", L_index)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--h", h);
    verify_cmd->add_option("--tolerance", tolerance);
    verify_cmd->add_option("--out", out_path);

    // chain
    RuleArgs chain_rule;
    TargetArgs chain_target;
    std::size_t chain_k = 3;
    auto* chain = app.add_subcommand("chain", "covering radii at k and k-1");
    add_rule_options(chain, chain_rule, false);
    chain->add_option("--spec", chain_target.spec_path, "use the set constructed from this target");
    chain->add_option("--builtin", chain_target.builtin)
        ->check(CLI::IsMember({"orthant-sphere-full", "hyperplane-boundary"}));
    chain->add_option("--M", chain_target.M, "construction steps for --spec/--builtin");
    chain->add_option("--k", chain_k)->check(CLI::Range(std::size_t{3}, std::size_t{10}));
    chain->add_option("--h", h);
    chain->add_flag("--distinct", distinct);
    chain->add_option("--out", out_path);

    // demo-remark
    std::size_t remark_k = 3;
    std::uint64_t remark_M = 15;
    auto* remark = app.add_subcommand("demo-remark", "repeated entries approach a point outside X");
    remark->add_option("--k", remark_k);
    remark->add_option("--M", remark_M)->check(CLI::PositiveNumber);
    remark->add_option("--out", out_path);

    // net-audit
    std::uint64_t samples = 10'000;
    auto* audit = app.add_subcommand("net-audit", "Monte-Carlo check of the sphere-net mesh");
    audit->add_option("--k", k)->check(CLI::Range(std::size_t{2}, std::size_t{16}));
    audit->add_option("--h", h);
    audit->add_option("--samples", samples)->check(CLI::PositiveNumber);
    audit->add_option("--seed", seed);
    audit->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::CallForVersion&) {
        out << app.version() << '\n';
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return usage;
    }

    try {
        const Budget budget = Budget::from_env();
        if (*enumerate) {
            const GroundSet A = make_ground_set(enum_rule, budget);
            EnumerationOptions options;
            options.allow_sampling = allow_sampling;
            options.sample_size = sample_size;
            options.seed = seed;
            options.workers = workers;
            options.budget = budget;
            const DirectionCloud cloud = directions(A, k, distinct, options);
            if (csv_path.empty()) {
                out << to_csv(cloud);
            } else {
                Sink sink(csv_path, out);
                *sink << to_csv(cloud);
                out << to_json(cloud).dump(2) << '\n';
            }
        } else if (*density) {
            const GroundSet A = make_ground_set(density_rule, budget);
            const SphereNet net = sphere_net(k, h, budget);
            const bool implicit =
                method == "implicit" ||
                (method == "auto" && tuple_count(A.size(), k, distinct) > budget.max_tuples / 10);
            DensityReport report;
            if (implicit) {
                report = covering_radius(A, k, distinct, net);
            } else {
                EnumerationOptions options;
                options.budget = budget;
                report = covering_radius(directions(A, k, distinct, options), net);
            }
            emit(to_json(report), out_path, out);
        } else if (*gap) {
            const RatioGapStat stat = ratio_gap(make_ground_set(gap_rule, budget), windows);
            if (!csv_path.empty()) {
                Sink sink(csv_path, out);
                *sink << to_csv(stat);
            }
            emit(to_json(stat), out_path, out);
        } else if (*witness) {
            const GroundSet A = make_ground_set(witness_rule, budget);
            const UnitVector x = rho(std::span<const double>(parse_point(x_text)));
            emit(to_json(witness_tuple(A, x, m), x, m), out_path, out);
        } else if (*construct_cmd) {
            const TargetSpec spec = make_target(target);
            const Construction built = construct(spec, target.M);
            {
                Sink sink(out_path, out);
                for (const auto& step : built.state.history()) *sink << to_json(step).dump() << '\n';
            }
            if (verify_flag) {
                const auto doc = to_json(verify_construction(built, target.M, L_index, h, tolerance, budget));
                if (!report_path.empty() || !out_path.empty()) {
                    emit(doc, report_path, out);
                } else {
                    // Dump on stdout: the report is its final JSON line.
                    out << doc.dump() << '\n';
                }
            }
        } else if (*verify_cmd) {
            const Construction built = construct(make_target(target), target.M);
            emit(to_json(verify_construction(built, target.M, L_index, h, tolerance, budget)), out_path, out);
        } else if (*chain) {
            GroundSet A;
            if (!chain_target.spec_path.empty() || !chain_target.builtin.empty()) {
                chain_target.k = chain_k;
                A = construct(make_target(chain_target), chain_target.M).elements;
            } else {
                if (chain_rule.N == 0) throw PreconditionError("chain needs --N with --rule, or --spec/--builtin");
                A = make_ground_set(chain_rule, budget);
            }
            emit(to_json(chain_check(A, chain_k, h, distinct, budget)), out_path, out);
        } else if (*remark) {
            emit(to_json(demo_remark(remark_k, remark_M, budget)), out_path, out);
        } else if (*audit) {
            emit(to_json(net_audit(sphere_net(k, h, budget), samples, seed)), out_path, out);
        }
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << '\n';
        return resource;
    } catch (const PreconditionError& e) {
        err << "precondition error: " << e.what() << '\n';
        return precondition;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return precondition;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << '\n';
        return internal;
    }
    return ok;
}

}  // namespace directions::cli
