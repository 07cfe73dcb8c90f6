#include "cli.hpp"

#include "oracles.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "directions");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = directions::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "directions_cli_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("enumerate prints every primitive direction") {
    const Result r = run({"enumerate", "--rule", "primes", "--N", "100", "--k", "2"});
    REQUIRE(r.code == 0);
    std::vector<long long> primes;
    for (long long n = 2; n <= 100; ++n) {
        bool prime = true;
        for (long long d = 2; d * d <= n; ++d) prime = prime && n % d != 0;
        if (prime) primes.push_back(n);
    }
    const auto expected = oracle::directions(primes, 2, false);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "d1,d2");
    std::size_t rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == expected.size());
    CHECK(r.out.find('\r') == std::string::npos);

    const auto csv = scratch("primes.csv");
    const Result meta = run({"enumerate", "--rule", "primes", "--N", "100", "--k", "2", "--csv", csv.string()});
    REQUIRE(meta.code == 0);
    const auto doc = nlohmann::json::parse(meta.out);
    CHECK(doc["count"] == expected.size());
    CHECK(doc["sampled"] == false);
    CHECK(slurp(csv) == r.out);
}

TEST_CASE("density of primes in three dimensions") {
    const Result r = run({"density", "--rule", "primes", "--N", "5000", "--k", "3", "--h", "0.05"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["covering_radius"].get<double>() < 0.1);
    CHECK(doc["schema_version"] == 1);
    // Re-runs are byte-identical.
    CHECK(run({"density", "--rule", "primes", "--N", "5000", "--k", "3", "--h", "0.05"}).out == r.out);
}

TEST_CASE("construct with verification") {
    const auto spec = scratch("rho12.json");
    std::ofstream(spec) << R"({"k": 2, "kind": "finite-set", "generators": [[{"q": "1", "r": 1}, {"q": "2", "r": 1}]]})";
    const Result r = run({"construct", "--spec", spec.string(), "--M", "20", "--verify"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::vector<nlohmann::json> records;
    while (std::getline(lines, line)) records.push_back(nlohmann::json::parse(line));
    REQUIRE(records.size() == 21);
    CHECK(records.front()["c"] == nlohmann::json::array({"3", "2"}));
    CHECK(records.back()["report"] == "verification");
    CHECK(records.back()["forward_hausdorff"].get<double>() < 1e-6);

    const auto dump = scratch("dump.jsonl");
    const auto report = scratch("report.json");
    REQUIRE(run({"construct", "--spec", spec.string(), "--M", "5", "--verify", "--L", "2", "--dump", dump.string(),
                 "--report", report.string()})
                .code == 0);
    CHECK(nlohmann::json::parse(slurp(report))["M"] == 5);

    const Result verify = run({"verify", "--builtin", "hyperplane-boundary", "--k", "3", "--M", "12", "--L", "6"});
    REQUIRE(verify.code == 0);
    CHECK(nlohmann::json::parse(verify.out)["mechanism"]["violations"] == 0);
}

TEST_CASE("the remaining subcommands") {
    const Result gap = run({"ratio-gap", "--rule", "naturals", "--N", "1000", "--windows", "4"});
    REQUIRE(gap.code == 0);
    CHECK(nlohmann::json::parse(gap.out)["windows"].size() == 4);

    const Result witness = run({"witness", "--rule", "naturals", "--N", "100", "--x", "0.6,0.8", "--m", "10"});
    REQUIRE(witness.code == 0);
    CHECK(nlohmann::json::parse(witness.out)["tuple"] == nlohmann::json::array({"7", "9"}));

    const Result chain = run({"chain", "--builtin", "hyperplane-boundary", "--M", "20", "--k", "3", "--h", "0.05",
                              "--distinct"});
    REQUIRE(chain.code == 0);
    const auto chain_doc = nlohmann::json::parse(chain.out);
    CHECK(chain_doc["eps_k"].get<double>() > chain_doc["eps_k_minus_1"].get<double>());

    const Result remark = run({"demo-remark", "--k", "3", "--M", "15"});
    REQUIRE(remark.code == 0);
    CHECK(nlohmann::json::parse(remark.out)["separation_exact"] == "sqrt(2 - 2*(1/2*sqrt(3)))");

    const Result audit = run({"net-audit", "--k", "3", "--h", "0.2", "--samples", "2000"});
    REQUIRE(audit.code == 0);
    CHECK(nlohmann::json::parse(audit.out)["within_h"] == true);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == directions::cli::usage);
    CHECK(run({"frobnicate"}).code == directions::cli::usage);
    CHECK(run({"density", "--rule", "primes", "--k", "2"}).code == directions::cli::usage);  // missing --N
    CHECK(run({"density", "--rule", "squares", "--N", "10"}).code == directions::cli::usage);
    CHECK(run({"--help"}).code == directions::cli::ok);

    CHECK(run({"demo-remark", "--k", "2"}).code == directions::cli::precondition);
    CHECK(run({"witness", "--rule", "naturals", "--N", "100", "--x", "0.6,0.8", "--m", "1000"}).code ==
          directions::cli::precondition);
    CHECK(run({"construct", "--spec", "/nonexistent/target.json"}).code == directions::cli::precondition);
    CHECK(run({"witness", "--rule", "naturals", "--N", "100", "--x", "0,0", "--m", "10"}).code ==
          directions::cli::precondition);

    setenv("DIRECTIONS_BUDGET", "tuples=100", 1);
    const Result tight = run({"enumerate", "--rule", "naturals", "--N", "100", "--k", "2"});
    unsetenv("DIRECTIONS_BUDGET");
    CHECK(tight.code == directions::cli::resource);
    CHECK(tight.err.find("sampling") != std::string::npos);
}
