#include "directions/targets.hpp"

#include "directions/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace directions {

namespace mp = boost::multiprecision;

namespace {

constexpr std::size_t kMaxFiniteDim = 10;

double sqrt_of_rational(const Rational& value) {
    using Float = mp::cpp_bin_float_50;
    const Float v = Float(mp::numerator(value)) / Float(mp::denominator(value));
    return static_cast<double>(mp::sqrt(v));
}

std::uint64_t full_mask(std::size_t k) { return (std::uint64_t{1} << k) - 1; }

std::string describe_mask(std::size_t k, std::uint64_t mask) {
    std::ostringstream out;
    out << "rho_I, I={";
    bool first = true;
    for (std::size_t i = 0; i < k; ++i) {
        if ((mask >> i) & 1u) {
            if (!first) out << ',';
            out << i + 1;
            first = false;
        }
    }
    out << '}';
    return out.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// TargetPoint

TargetPoint::TargetPoint(std::vector<ExactCoord> coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) throw PreconditionError("target points need k >= 2");
    Rational norm_sq = 0;
    for (const auto& c : coords_) {
        if (c.sign() < 0) throw DomainError("target coordinates must be nonnegative");
        norm_sq += c.square();
    }
    if (norm_sq == 0) throw DomainError("target vector must be nonzero");
    key_.reserve(coords_.size());
    std::vector<double> unit;
    unit.reserve(coords_.size());
    for (const auto& c : coords_) {
        key_.push_back(c.square() / norm_sq);
        unit.push_back(sqrt_of_rational(key_.back()));
    }
    unit_ = rho(std::span<const double>(unit));
}

TargetPoint TargetPoint::from_integers(std::span<const Natural> v) {
    std::vector<ExactCoord> coords;
    coords.reserve(v.size());
    for (const auto& e : v) coords.emplace_back(Rational(e), Natural(1));
    return TargetPoint(std::move(coords));
}

TargetPoint TargetPoint::from_integers(std::initializer_list<long long> v) {
    const std::vector<Natural> n(v.begin(), v.end());
    return from_integers(std::span<const Natural>(n));
}

std::vector<ExactCoord> TargetPoint::unit_coords() const {
    std::vector<ExactCoord> out;
    out.reserve(key_.size());
    for (const auto& y2 : key_) out.push_back(ExactCoord::sqrt_of(y2));
    return out;
}

bool TargetPoint::meets(const IndexSet& index_set) const {
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (index_set.contains(i) && !coords_[i].is_zero()) return true;
    }
    return false;
}

TargetPoint TargetPoint::permuted(const Permutation& pi) const {
    if (pi.dim() != dim()) throw DomainError("permutation dimension mismatch");
    std::vector<ExactCoord> out(dim());
    for (std::size_t i = 0; i < dim(); ++i) out[i] = coords_[pi(i)];
    return TargetPoint(std::move(out));
}

TargetPoint TargetPoint::projected(const IndexSet& index_set) const {
    if (!meets(index_set)) throw DomainError("index set does not meet the point");
    std::vector<ExactCoord> out = coords_;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (!index_set.contains(i)) out[i] = ExactCoord();
    }
    return TargetPoint(std::move(out));
}

SurdSum TargetPoint::inner_product(const TargetPoint& other) const {
    if (other.dim() != dim()) throw PreconditionError("dimension mismatch");
    SurdSum sum;
    for (std::size_t i = 0; i < dim(); ++i) sum.add(ExactCoord::sqrt_of(key_[i] * other.key_[i]));
    return sum;
}

std::string TargetPoint::to_string() const {
    std::string out = "rho(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) out += ", ";
        out += coords_[i].to_string();
    }
    return out + ")";
}

// ---------------------------------------------------------------------------
// TargetSpec

std::string_view to_string(TargetKind kind) {
    switch (kind) {
        case TargetKind::finite_set: return "finite-set";
        case TargetKind::orthant_sphere_full: return "orthant-sphere-full";
        case TargetKind::hyperplane_boundary: return "hyperplane-boundary";
        case TargetKind::custom_enumerated: return "custom-enumerated";
    }
    return "unknown";
}

TargetKind parse_target_kind(std::string_view name) {
    for (auto kind : {TargetKind::finite_set, TargetKind::orthant_sphere_full,
                      TargetKind::hyperplane_boundary, TargetKind::custom_enumerated}) {
        if (to_string(kind) == name) return kind;
    }
    throw PreconditionError("unknown target kind '" + std::string(name) + "'");
}

TargetSpec TargetSpec::finite_set(std::size_t k, std::vector<TargetPoint> points) {
    if (k < 2) throw PreconditionError("target dimension must be >= 2");
    if (points.empty()) throw PreconditionError("finite target needs at least one point");
    for (const auto& p : points) {
        if (p.dim() != k) throw PreconditionError("target point dimension mismatch");
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    TargetSpec spec(TargetKind::finite_set, k);
    spec.points_ = std::move(points);
    return spec;
}

TargetSpec TargetSpec::orthant_sphere_full(std::size_t k) {
    if (k < 2 || k > 16) throw PreconditionError("target dimension must be in [2, 16]");
    return TargetSpec(TargetKind::orthant_sphere_full, k);
}

TargetSpec TargetSpec::hyperplane_boundary(std::size_t k) {
    if (k < 2 || k > 16) throw PreconditionError("target dimension must be in [2, 16]");
    return TargetSpec(TargetKind::hyperplane_boundary, k);
}

TargetSpec TargetSpec::custom(std::size_t k, Enumerator enumerator, std::string description) {
    if (k < 2) throw PreconditionError("target dimension must be >= 2");
    if (!enumerator) throw PreconditionError("custom target needs an enumerator");
    TargetSpec spec(TargetKind::custom_enumerated, k);
    spec.custom_ = std::move(enumerator);
    spec.description_ = std::move(description);
    return spec;
}

double TargetSpec::distance_to(const UnitVector& x) const {
    if (x.dim() != k_) throw PreconditionError("dimension mismatch");
    switch (kind_) {
        case TargetKind::orthant_sphere_full:
            return 0.0;
        case TargetKind::hyperplane_boundary: {
            // Nearest point of { y_i = 0 } is rho(x - x_i e_i), at squared
            // distance 2 - 2 sqrt(1 - x_i^2) = 2 x_i^2 / (1 + sqrt(1 - x_i^2)).
            const double smallest = *std::min_element(x.coords().begin(), x.coords().end());
            const double t = smallest * smallest;
            return std::sqrt(2.0 * t / (1.0 + std::sqrt(std::max(0.0, 1.0 - t))));
        }
        case TargetKind::finite_set: {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& p : points_) best = std::min(best, distance(p.unit(), x));
            return best;
        }
        case TargetKind::custom_enumerated:
            break;
    }
    throw PreconditionError("custom-enumerated targets have no distance oracle");
}

bool TargetSpec::contains(const TargetPoint& p) const {
    if (p.dim() != k_) return false;
    switch (kind_) {
        case TargetKind::orthant_sphere_full:
            return true;
        case TargetKind::hyperplane_boundary:
            return std::any_of(p.coords().begin(), p.coords().end(),
                               [](const ExactCoord& c) { return c.is_zero(); });
        case TargetKind::finite_set:
            return std::binary_search(points_.begin(), points_.end(), p);
        case TargetKind::custom_enumerated:
            break;
    }
    throw PreconditionError("membership in a custom-enumerated target is undecidable here");
}

// ---------------------------------------------------------------------------
// Closure and validation

TargetSpec close_generators(std::span<const TargetPoint> points) {
    if (points.empty()) throw PreconditionError("close_generators needs at least one point");
    const std::size_t k = points.front().dim();
    if (k > kMaxFiniteDim) throw PreconditionError("finite targets support k <= 10");

    // Adjacent transpositions generate every permutation; together with all
    // meeting projections the worklist reaches the closure.
    std::vector<Permutation> generators;
    for (std::size_t i = 0; i + 1 < k; ++i) {
        std::vector<std::size_t> swapped(k);
        std::iota(swapped.begin(), swapped.end(), std::size_t{0});
        std::swap(swapped[i], swapped[i + 1]);
        generators.emplace_back(std::move(swapped));
    }

    std::set<TargetPoint> closed;
    std::deque<TargetPoint> work;
    for (const auto& p : points) {
        if (p.dim() != k) throw PreconditionError("target point dimension mismatch");
        if (closed.insert(p).second) work.push_back(p);
    }
    while (!work.empty()) {
        const TargetPoint p = work.front();
        work.pop_front();
        auto visit = [&](TargetPoint image) {
            if (closed.insert(image).second) work.push_back(std::move(image));
        };
        for (const auto& pi : generators) visit(p.permuted(pi));
        for (std::uint64_t mask = 1; mask < full_mask(k); ++mask) {
            const auto index_set = IndexSet::from_mask(k, mask);
            if (p.meets(index_set)) visit(p.projected(index_set));
        }
    }
    return TargetSpec::finite_set(k, std::vector<TargetPoint>(closed.begin(), closed.end()));
}

ValidityReport validate_target(const TargetSpec& spec) {
    ValidityReport report;
    switch (spec.kind()) {
        case TargetKind::orthant_sphere_full:
        case TargetKind::hyperplane_boundary:
            report.closed_ok = report.permutation_ok = report.projection_ok = true;
            report.verdict = Verdict::valid;
            return report;
        case TargetKind::custom_enumerated:
            report.verdict = Verdict::unverifiable;
            report.witnesses.push_back({"", "no closure certificate for a custom enumerator", ""});
            return report;
        case TargetKind::finite_set:
            break;
    }

    const std::size_t k = spec.dim();
    if (k > kMaxFiniteDim) throw PreconditionError("finite targets support k <= 10");
    // Finite subsets of the sphere are closed.
    report.closed_ok = true;
    report.permutation_ok = true;
    report.projection_ok = true;
    const auto permutations = Permutation::all(k);
    for (const auto& p : spec.points()) {
        for (const auto& pi : permutations) {
            TargetPoint image = p.permuted(pi);
            if (!spec.contains(image)) {
                report.permutation_ok = false;
                report.witnesses.push_back({p.to_string(), "permutation " + pi.to_string(), image.to_string()});
            }
        }
        for (std::uint64_t mask = 1; mask <= full_mask(k); ++mask) {
            const auto index_set = IndexSet::from_mask(k, mask);
            if (!p.meets(index_set)) continue;
            TargetPoint image = p.projected(index_set);
            if (!spec.contains(image)) {
                report.projection_ok = false;
                report.witnesses.push_back({p.to_string(), describe_mask(k, mask), image.to_string()});
            }
        }
    }
    report.verdict = report.all_ok() ? Verdict::valid : Verdict::invalid;
    return report;
}

// ---------------------------------------------------------------------------
// Dense enumeration

DenseEnumerator::DenseEnumerator(const TargetSpec& spec) : spec_(spec) {}

bool DenseEnumerator::accept(const std::vector<std::uint64_t>& v) const {
    std::uint64_t g = 0;
    bool has_zero = false;
    std::size_t nonzero = 0;
    for (auto e : v) {
        g = std::gcd(g, e);
        has_zero = has_zero || e == 0;
        nonzero += e != 0;
    }
    if (g != 1 || nonzero <= 1) return false;  // basis vectors are emitted first
    return spec_.kind() != TargetKind::hyperplane_boundary || has_zero;
}

void DenseEnumerator::fill_batch() {
    const std::size_t k = spec_.dim();
    batch_.clear();
    batch_pos_ = 0;
    while (batch_.empty()) {
        ++max_entry_;
        std::vector<std::uint64_t> v(k, 0);
        // Odometer over {0..max}^k in lexicographic order.
        while (true) {
            if (*std::max_element(v.begin(), v.end()) == max_entry_ && accept(v)) batch_.push_back(v);
            std::size_t pos = k;
            while (pos > 0 && v[pos - 1] == max_entry_) v[--pos] = 0;
            if (pos == 0) break;
            ++v[pos - 1];
        }
    }
}

TargetPoint DenseEnumerator::next() {
    const std::uint64_t m = ++produced_;
    const std::size_t k = spec_.dim();
    switch (spec_.kind()) {
        case TargetKind::finite_set:
            return spec_.points()[(m - 1) % spec_.points().size()];
        case TargetKind::custom_enumerated:
            return spec_.custom_enumerator()(m);
        case TargetKind::orthant_sphere_full:
        case TargetKind::hyperplane_boundary:
            break;
    }
    if (m <= k || (spec_.kind() == TargetKind::hyperplane_boundary && k == 2)) {
        std::vector<Natural> e(k, 0);
        e[(m - 1) % k] = 1;
        return TargetPoint::from_integers(std::span<const Natural>(e));
    }
    if (batch_pos_ >= batch_.size()) fill_batch();
    const auto& v = batch_[batch_pos_++];
    const std::vector<Natural> entries(v.begin(), v.end());
    return TargetPoint::from_integers(std::span<const Natural>(entries));
}

TargetPoint enumerate_dense(const TargetSpec& spec, std::uint64_t m) {
    if (m == 0) throw PreconditionError("dense enumeration is indexed from m = 1");
    if (spec.kind() == TargetKind::finite_set) return spec.points()[(m - 1) % spec.points().size()];
    if (spec.kind() == TargetKind::custom_enumerated) return spec.custom_enumerator()(m);
    DenseEnumerator enumerator(spec);
    for (std::uint64_t i = 1; i < m; ++i) enumerator.next();
    return enumerator.next();
}

}  // namespace directions
