#include "directions/errors.hpp"

#include <cstdlib>
#include <sstream>

namespace directions {

namespace {

std::uint64_t parse_count(const std::string& text) {
    std::size_t used = 0;
    double value = 0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw PreconditionError("invalid budget value '" + text + "'");
    }
    if (used != text.size() || !(value >= 1.0) || value > 1e19) {
        throw PreconditionError("invalid budget value '" + text + "'");
    }
    return static_cast<std::uint64_t>(value);
}

}  // namespace

Budget Budget::parse(const std::string& text) {
    Budget budget;
    if (text.empty()) return budget;
    if (text.find('=') == std::string::npos) {
        budget.max_tuples = parse_count(text);
        return budget;
    }
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw PreconditionError("invalid budget item '" + item + "'");
        const std::string key = item.substr(0, eq);
        const std::uint64_t value = parse_count(item.substr(eq + 1));
        if (key == "tuples") {
            budget.max_tuples = value;
        } else if (key == "elements") {
            budget.max_elements = value;
        } else if (key == "net") {
            budget.max_net_points = value;
        } else {
            throw PreconditionError("unknown budget key '" + key + "'");
        }
    }
    return budget;
}

Budget Budget::from_env() {
    const char* env = std::getenv("DIRECTIONS_BUDGET");
    return env ? parse(env) : Budget{};
}

}  // namespace directions
