#include "directions/constructor.hpp"

#include "directions/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace directions {

namespace {

using HighFloat = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<320>>;

HighFloat high(const Natural& n) { return HighFloat(n); }

/// |rho(c) - y| with y given by exact squared coordinates, at ~1000 bits.
double rho_error_high(const IntTuple& c, const TargetPoint& y) {
    HighFloat norm_sq = 0;
    for (const auto& e : c.entries()) norm_sq += high(e) * high(e);
    const HighFloat norm = sqrt(norm_sq);
    HighFloat err_sq = 0;
    for (std::size_t i = 0; i < c.dim(); ++i) {
        const Rational& y2 = y.squared_unit()[i];
        const HighFloat yi = sqrt(high(numerator(y2)) / high(denominator(y2)));
        const HighFloat d = high(c[i]) / norm - yi;
        err_sq += d * d;
    }
    return static_cast<double>(sqrt(err_sq));
}

std::string decimal(const Natural& n) {
    std::ostringstream out;
    out << n;
    return out.str();
}

GroundSet elements_through(const std::vector<StepRecord>& history, std::uint64_t M) {
    std::map<Natural, std::vector<Origin>> merged;
    for (const auto& step : history) {
        if (step.m > M) break;
        for (std::size_t i = 0; i < step.c.dim(); ++i) merged[step.c[i]].push_back({i, step.m});
    }
    std::vector<Natural> values;
    std::vector<std::vector<Origin>> origins;
    for (auto& [value, from] : merged) {
        values.push_back(value);
        origins.push_back(std::move(from));
    }
    GroundRule rule;
    rule.kind = RuleKind::constructed;
    GroundSet set = GroundSet::from_elements(rule, std::move(values));
    set.set_origins(std::move(origins));
    return set;
}

std::string tuple_string(const std::vector<Natural>& entries) {
    std::string out = "(";
    for (std::size_t j = 0; j < entries.size(); ++j) {
        if (j) out += ", ";
        out += decimal(entries[j]);
    }
    return out + ")";
}

/// Visits every ordered k-tuple of indices into [0, n), optionally with
/// pairwise distinct entries.
template <typename Visit>
void for_each_tuple(std::size_t n, std::size_t k, bool distinct, Visit&& visit) {
    if (n == 0 || (distinct && n < k)) return;
    std::vector<std::size_t> idx(k, 0);
    auto valid = [&] {
        if (!distinct) return true;
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = a + 1; b < k; ++b) {
                if (idx[a] == idx[b]) return false;
            }
        }
        return true;
    };
    while (true) {
        if (valid()) visit(idx);
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] + 1 == n) idx[--pos] = 0;
        if (pos == 0) return;
        ++idx[pos - 1];
    }
}

void check_tuple_budget(std::size_t n, std::size_t k, bool distinct, const Budget& budget) {
    if (tuple_count(n, k, distinct) > budget.max_tuples) {
        throw ResourceError("tuple count exceeds the tuple budget; lower M or raise DIRECTIONS_BUDGET");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Steps

GroundSet ConstructionState::ground_set() const { return elements_through(history_, history_.size()); }

IntTuple construct_step(const TargetPoint& y, std::uint64_t m, ConstructionState& state) {
    const std::size_t k = state.k_;
    if (y.dim() != k) throw PreconditionError("target dimension differs from the construction");
    if (m != state.history_.size() + 1) throw PreconditionError("construction steps must be made in order");

    std::vector<FactorialFloor> floors;
    std::vector<Natural> bases;
    for (std::size_t i = 0; i < k; ++i) {
        floors.push_back(factorial_floor(y, i, m));
        bases.push_back(floors.back().value);
    }

    // Greedy offsets: at most k - 1 values of s_i are blocked.
    std::vector<std::uint64_t> s(k, 0);
    std::vector<Natural> shifted;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::uint64_t candidate = 1; candidate <= k; ++candidate) {
            const Natural value = bases[i] + candidate;
            if (std::find(shifted.begin(), shifted.end(), value) == shifted.end()) {
                s[i] = candidate;
                shifted.push_back(value);
                break;
            }
        }
        if (s[i] == 0) throw InternalError("no admissible offset s_i");
    }

    // Each earlier step blocks at most one t, since t -> (u+t)/(v+t) is injective for u != v.
    std::uint64_t t = 0;
    PrimitiveDirection ratio;
    for (std::uint64_t candidate = 1; candidate <= m; ++candidate) {
        const Natural pair[2] = {shifted[0] + candidate, shifted[1] + candidate};
        ratio = primitive(std::span<const Natural>(pair, 2));
        if (!state.registry_.contains(ratio)) {
            t = candidate;
            break;
        }
    }
    if (t == 0) throw InternalError("no admissible shift t");

    std::vector<Natural> entries;
    for (const auto& v : shifted) entries.push_back(v + t);
    IntTuple c(std::move(entries));

    StepCertificate cert;
    cert.distinct_entries = c.has_distinct_entries();
    cert.new_ratio = state.registry_.insert(ratio).second;
    const Natural f = factorial(m);
    const Rational f_sq(f * f);
    cert.floor_offsets = true;
    for (std::size_t i = 0; i < k; ++i) {
        const Natural& F = floors[i].value;
        const Rational target = f_sq * y.squared_unit()[i];
        const bool certified = Rational(F * F) <= target && target < Rational((F + 1) * (F + 1));
        const Natural offset = c[i] - F;
        cert.floor_offsets = cert.floor_offsets && certified && offset >= 0 && offset <= Natural(k + m);
    }
    cert.rho_error = rho_error_high(c, y);
    cert.rho_bound_value = static_cast<double>(10 * (k + m)) / static_cast<double>(f);
    cert.rho_bound = m < 4 || cert.rho_error <= cert.rho_bound_value;

    state.history_.push_back(StepRecord{m, y, std::move(bases), std::move(s), t, c, std::move(floors), cert});
    return c;
}

bool Construction::all_certified() const {
    return std::all_of(state.history().begin(), state.history().end(),
                       [](const StepRecord& r) { return r.certificate.all(); });
}

Construction construct(const TargetSpec& spec, std::uint64_t M) {
    if (spec.kind() == TargetKind::custom_enumerated) {
        throw PreconditionError("construction needs a verifiable target; custom enumerators are unverifiable");
    }
    if (spec.kind() == TargetKind::finite_set) {
        if (spec.points().empty()) throw PreconditionError("empty target set");
        const ValidityReport validity = validate_target(spec);
        if (!validity.all_ok()) {
            std::string msg = "target set is not closed";
            if (!validity.witnesses.empty()) {
                const auto& w = validity.witnesses.front();
                msg += ": " + w.action + " maps " + w.point + " to " + w.missing_image;
            }
            throw PreconditionError(msg);
        }
    }
    Construction out{spec, ConstructionState(spec.dim()), {}};
    DenseEnumerator enumerator(spec);
    for (std::uint64_t m = 1; m <= M; ++m) construct_step(enumerator.next(), m, out.state);
    out.elements = out.state.ground_set();
    return out;
}

// ---------------------------------------------------------------------------
// Verification

VerificationReport verify_construction(const Construction& construction, std::uint64_t M, std::uint64_t L_index,
                                       double h, double tolerance, const Budget& budget) {
    const auto& history = construction.state.history();
    const TargetSpec& spec = construction.spec;
    const std::size_t k = spec.dim();
    if (M == 0 || M > history.size()) throw PreconditionError("M must lie in [1, number of constructed steps]");
    if (L_index >= M) throw PreconditionError("L_index must be smaller than M");
    if (!(h > 0) || !(tolerance > 0)) throw PreconditionError("h and tolerance must be positive");

    VerificationReport report;
    report.M = M;
    report.L_index = L_index;
    report.h = h;
    report.tolerance = tolerance;
    report.tail_threshold = factorial(L_index);

    // Forward: every sample point of X is hit by some rho(c^(m)).
    std::vector<UnitVector> cloud;
    for (std::uint64_t m = 1; m <= M; ++m) cloud.push_back(rho(history[m - 1].c));
    std::vector<UnitVector> sample;
    if (spec.kind() == TargetKind::finite_set) {
        for (const auto& p : spec.points()) sample.push_back(p.unit());
    } else {
        // An infinite X is probed along its own dense sequence past the scale L.
        for (std::uint64_t m = L_index + 1; m <= M; ++m) sample.push_back(history[m - 1].y.unit());
    }
    report.forward_sample_size = sample.size();
    for (const auto& x : sample) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& u : cloud) best = std::min(best, distance(x, u));
        report.forward_hausdorff = std::max(report.forward_hausdorff, best);
    }

    // Backward: distinct-entry directions beyond the threshold must sit near X.
    const GroundSet tail = elements_through(history, M).tail(report.tail_threshold);
    report.tail_elements = tail.size();
    if (tail.size() < k) return report;
    EnumerationOptions options;
    options.budget = budget;
    const DirectionCloud directions_cloud = directions(tail, k, true, options);
    report.tail_directions = directions_cloud.size();
    for (std::size_t d = 0; d < directions_cloud.size(); ++d) {
        const double dist = spec.distance_to(directions_cloud.unit_at(d));
        if (dist > tolerance) ++report.backward_violations;
        if (dist > report.backward_hausdorff || report.worst_direction.empty()) {
            report.backward_hausdorff = std::max(report.backward_hausdorff, dist);
            report.worst_direction = directions_cloud.primitive_at(d).to_string();
        }
    }

    // Mechanism: a tuple whose largest scale is m1 points at rho_I(pi(y^(m1))).
    check_tuple_budget(tail.size(), k, true, budget);
    std::vector<Origin> origin;
    for (const auto& from : tail.origins()) {
        origin.push_back(*std::max_element(from.begin(), from.end(),
                                           [](const Origin& a, const Origin& b) { return a.step < b.step; }));
    }
    const std::vector<double> values = tail.as_doubles();
    for_each_tuple(tail.size(), k, true, [&](const std::vector<std::size_t>& idx) {
        std::uint64_t m1 = 0;
        for (auto j : idx) m1 = std::max(m1, origin[j].step);
        const StepRecord& step = history[m1 - 1];
        const double scale = static_cast<double>(factorial(m1));
        std::vector<double> w(k, 0.0), a(k), e(k);
        for (std::size_t j = 0; j < k; ++j) {
            a[j] = values[idx[j]];
            if (origin[idx[j]].step == m1) {
                const std::size_t i = origin[idx[j]].coordinate;
                w[j] = step.y.unit()[i];
                // 0 <= c_i - m1! y_i <= c_i - floor(m1! y_i)
                e[j] = static_cast<double>(step.c[i] - step.floors[i].value) / scale;
            } else {
                e[j] = a[j] / scale;
            }
        }
        const double w_norm = norm(w);
        if (w_norm == 0) return;
        const double bound = 2 * norm(e) / w_norm;
        const double dist = distance(rho(a), rho(w));
        report.mechanism_max_distance = std::max(report.mechanism_max_distance, dist);
        if (bound > 0) report.mechanism_max_ratio = std::max(report.mechanism_max_ratio, dist / bound);
        if (dist > bound + 1e-12) ++report.mechanism_violations;
    });
    return report;
}

// ---------------------------------------------------------------------------
// Repeated entries break the realization

RemarkReport demo_remark(std::size_t k, std::uint64_t M, const Budget& budget) {
    if (k < 3) throw PreconditionError("the repeated-entry counterexample needs k >= 3");
    if (M < 2) throw PreconditionError("demo_remark needs M >= 2");

    std::vector<ExactCoord> eta(k, ExactCoord(0));
    eta[0] = ExactCoord(1);
    eta[1] = ExactCoord::sqrt_of(Rational(2));
    std::vector<ExactCoord> theta_coords(k, ExactCoord(1));
    theta_coords[1] = ExactCoord::sqrt_of(Rational(2));
    const TargetPoint theta(std::move(theta_coords));
    const TargetPoint generator(std::move(eta));

    const TargetSpec X = close_generators(std::span<const TargetPoint>(&generator, 1));
    const Construction built = construct(X, M);
    const GroundSet& A = built.elements;

    RemarkReport report;
    report.k = k;
    report.M = M;
    report.target_size = X.points().size();
    report.theta = theta.to_string();

    auto nearest = [&](const GroundSet& set, bool distinct, std::string* best_tuple) {
        check_tuple_budget(set.size(), k, distinct, budget);
        const std::vector<double> values = set.as_doubles();
        const auto target = theta.unit().coords();
        double best = std::numeric_limits<double>::infinity();
        std::vector<std::size_t> best_idx;
        std::vector<double> v(k);
        for_each_tuple(set.size(), k, distinct, [&](const std::vector<std::size_t>& idx) {
            for (std::size_t j = 0; j < k; ++j) v[j] = values[idx[j]];
            const double d = distance(rho(v).coords(), target);
            if (d < best) {
                best = d;
                best_idx = idx;
            }
        });
        if (best_tuple && !best_idx.empty()) {
            std::vector<Natural> entries;
            for (auto j : best_idx) entries.push_back(set[j]);
            *best_tuple = tuple_string(entries);
        }
        return best;
    };

    report.repetition_distance = nearest(A, false, &report.repetition_direction);
    report.tail_threshold = factorial((M + 1) / 2);
    const GroundSet tail = A.tail(report.tail_threshold);
    report.distinct_tail_distance =
        tail.size() >= k ? nearest(tail, true, nullptr) : std::numeric_limits<double>::infinity();

    // |theta - x|^2 = 2 - 2 <theta, x> for unit vectors, with <theta, x> a surd sum.
    report.separation = std::numeric_limits<double>::infinity();
    for (const auto& x : X.points()) {
        const SurdSum ip = theta.inner_product(x);
        const double d = std::sqrt(std::max(0.0, 2.0 - 2.0 * ip.to_double()));
        if (d < report.separation) {
            report.separation = d;
            report.separation_exact = "sqrt(2 - 2*(" + ip.to_string() + "))";
            report.separation_point = x.to_string();
        }
    }
    return report;
}

}  // namespace directions
