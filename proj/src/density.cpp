#include "directions/density.hpp"

#include "directions/exact.hpp"
#include "directions/kd_tree.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace directions {

namespace {

std::string decimal(const Natural& n) {
    std::ostringstream out;
    out << n;
    return out.str();
}

double max_norm_distance_sq() { return 2.0; }

/// Exact pruned nearest-tuple search for one net point of the chamber.
class TupleSearch {
public:
    TupleSearch(const std::vector<double>& values, std::size_t k, bool distinct)
        : values_(values), k_(k), distinct_(distinct), tuple_(k), lo_(k), hi_(k) {}

    /// Smallest squared distance from x to rho(a) over tuples with
    /// non-increasing entries; `hint` seeds the bound with a known tuple.
    double run(std::span<const double> x, const std::vector<std::size_t>* hint) {
        x_ = x;
        best_sq_ = std::numeric_limits<double>::infinity();
        best_idx_.clear();
        if (hint) consider_indices(*hint);
        seed_by_rounding();
        if (!std::isfinite(best_sq_)) best_sq_ = max_norm_distance_sq() + 1e-9;
        const std::size_t n = values_.size();
        const std::size_t min_top = distinct_ ? k_ - 1 : 0;
        for (std::size_t i0 = n; i0-- > min_top;) {
            idx_[0] = i0;
            tuple_[0] = values_[i0];
            descend(1, distinct_ ? static_cast<std::ptrdiff_t>(i0) - 1 : static_cast<std::ptrdiff_t>(i0));
        }
        return best_sq_;
    }

    const std::vector<std::size_t>& best_indices() const { return best_idx_; }

private:
    void update_ranges() {
        // |rho(a) - x| < d forces a_j / a_0 into ((x_j - d)/(x_0 + d), (x_j + d)/(x_0 - d)).
        const double d = std::sqrt(best_sq_) * (1 + 1e-9) + 1e-15;
        for (std::size_t j = 1; j < k_; ++j) {
            lo_[j] = std::max(0.0, (x_[j] - d) / (x_[0] + d));
            hi_[j] = x_[0] > d ? (x_[j] + d) / (x_[0] - d) : std::numeric_limits<double>::infinity();
        }
    }

    void descend(std::size_t level, std::ptrdiff_t max_index) {
        if (level == k_) {
            evaluate();
            return;
        }
        const double a0 = tuple_[0];
        for (std::ptrdiff_t i = max_index; i >= 0; --i) {
            // Ranges only shrink as the best distance improves.
            update_ranges();
            const double high_value = a0 * hi_[level] * (1 + 1e-12);
            const double low_value = a0 * lo_[level] * (1 - 1e-12);
            if (values_[static_cast<std::size_t>(i)] > high_value) {
                const auto upper = std::upper_bound(values_.begin(), values_.end(), high_value) - values_.begin() - 1;
                i = std::min(i, static_cast<std::ptrdiff_t>(upper));
                if (i < 0) break;
            }
            const double v = values_[static_cast<std::size_t>(i)];
            if (v < low_value) break;
            idx_[level] = static_cast<std::size_t>(i);
            tuple_[level] = v;
            descend(level + 1, distinct_ ? i - 1 : i);
        }
    }

    void evaluate() {
        double sum = 0;
        for (std::size_t j = 0; j < k_; ++j) sum += tuple_[j] * tuple_[j];
        const double inv = 1.0 / std::sqrt(sum);
        double sq = 0;
        for (std::size_t j = 0; j < k_; ++j) {
            const double d = tuple_[j] * inv - x_[j];
            sq += d * d;
        }
        if (sq < best_sq_) {
            best_sq_ = sq;
            best_idx_.assign(idx_, idx_ + k_);
        }
    }

    void consider_indices(const std::vector<std::size_t>& indices) {
        if (indices.size() != k_) return;
        for (std::size_t j = 1; j < k_; ++j) {
            if (indices[j] > indices[j - 1] || (distinct_ && indices[j] == indices[j - 1])) return;
        }
        for (std::size_t j = 0; j < k_; ++j) {
            idx_[j] = indices[j];
            tuple_[j] = values_[indices[j]];
        }
        evaluate();
    }

    void seed_by_rounding() {
        const std::size_t n = values_.size();
        std::vector<std::size_t> tops;
        for (std::size_t t = 0; t < std::min<std::size_t>(n, 8); ++t) tops.push_back(n - 1 - t);
        for (std::size_t step = 1; step < n; step *= 2) tops.push_back(n - 1 - std::min(n - 1, step * 8));
        std::vector<std::size_t> candidate(k_);
        for (std::size_t top : tops) {
            candidate[0] = top;
            bool ok = true;
            for (std::size_t j = 1; j < k_ && ok; ++j) {
                const double want = values_[top] * x_[j] / x_[0];
                auto it = std::lower_bound(values_.begin(), values_.end(), want);
                std::size_t pick = static_cast<std::size_t>(it - values_.begin());
                if (pick == n || (pick > 0 && want - values_[pick - 1] < values_[pick] - want)) --pick;
                if (distinct_ && candidate[j - 1] == 0) {
                    ok = false;
                    break;
                }
                const std::size_t cap = distinct_ ? candidate[j - 1] - 1 : candidate[j - 1];
                candidate[j] = std::min(pick, cap);
            }
            if (ok) consider_indices(candidate);
        }
    }

    const std::vector<double>& values_;
    std::size_t k_;
    bool distinct_;
    std::span<const double> x_;
    std::vector<double> tuple_;
    std::size_t idx_[64] = {};
    std::vector<std::size_t> best_idx_;
    std::vector<double> lo_, hi_;
    double best_sq_ = 0;
};

}  // namespace

// ---------------------------------------------------------------------------
// SphereNet

double SphereNet::mesh_bound() const { return std::sqrt(static_cast<double>(k_ - 1)) / (2.0 * static_cast<double>(n_)); }

std::vector<std::size_t> SphereNet::chamber() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i) {
        const auto p = point(i);
        if (std::is_sorted(p.begin(), p.end(), std::greater<>())) out.push_back(i);
    }
    return out;
}

SphereNet sphere_net(std::size_t k, double h, const Budget& budget) {
    if (k < 2 || k > 16) throw PreconditionError("sphere nets need 2 <= k <= 16");
    if (!(h > 0.0) || h > 1.0) throw PreconditionError("net resolution h must lie in (0, 1]");
    const auto n = static_cast<std::uint64_t>(std::ceil(static_cast<double>(k) / (2.0 * h) - 1e-12));
    // (n+1)^k - n^k points.
    const double estimate = std::pow(static_cast<double>(n + 1), static_cast<double>(k)) -
                            std::pow(static_cast<double>(n), static_cast<double>(k));
    if (estimate > static_cast<double>(budget.max_net_points)) {
        throw ResourceError("net of resolution h is too large for the net-point budget");
    }
    SphereNet net;
    net.k_ = k;
    net.h_ = h;
    net.n_ = n;
    net.points_.reserve(static_cast<std::size_t>(estimate) * k);
    std::vector<std::uint64_t> v(k, 0);
    std::vector<double> row(k);
    while (true) {
        if (*std::max_element(v.begin(), v.end()) == n) {
            double sum = 0;
            for (auto e : v) sum += static_cast<double>(e) * static_cast<double>(e);
            const double inv = 1.0 / std::sqrt(sum);
            for (std::size_t j = 0; j < k; ++j) net.points_.push_back(static_cast<double>(v[j]) * inv);
        }
        std::size_t pos = k;
        while (pos > 0 && v[pos - 1] == n) v[--pos] = 0;
        if (pos == 0) break;
        ++v[pos - 1];
    }
    return net;
}

NetAudit net_audit(const SphereNet& net, std::uint64_t samples, std::uint64_t seed) {
    if (samples == 0) throw PreconditionError("net audit needs at least one sample");
    const KdTree tree(net.flat(), net.dim());
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    NetAudit audit{net.dim(), net.resolution(), net.denominator(), net.size(), samples, seed, net.mesh_bound(), 0.0};
    std::vector<double> x(net.dim());
    for (std::uint64_t s = 0; s < samples; ++s) {
        // |gaussian| vectors are uniform on the orthant sphere after normalization.
        double sq = 0;
        do {
            sq = 0;
            for (auto& v : x) {
                v = std::abs(gauss(rng));
                sq += v * v;
            }
        } while (sq == 0);
        const double inv = 1 / std::sqrt(sq);
        for (auto& v : x) v *= inv;
        audit.max_distance = std::max(audit.max_distance, tree.nearest(x).distance);
    }
    return audit;
}

// ---------------------------------------------------------------------------
// Covering radius

DensityReport covering_radius(const DirectionCloud& cloud, const SphereNet& net) {
    if (cloud.empty()) throw DomainError("covering radius of an empty cloud");
    if (cloud.dim() != net.dim()) throw PreconditionError("cloud and net dimensions differ");
    const KdTree tree(cloud.flat_units(), cloud.dim());
    DensityReport report;
    std::size_t arg = 0;
    double worst = -1.0;
    for (std::size_t i = 0; i < net.size(); ++i) {
        const double d = tree.nearest(net.point(i)).distance;
        if (d > worst) {
            worst = d;
            arg = i;
        }
    }
    const auto p = net.point(arg);
    report.covering_radius = worst;
    report.argmax_net_point = UnitVector::from_normalized(std::vector<double>(p.begin(), p.end()));
    report.source = cloud.source_rule();
    report.N = decimal(cloud.source_bound());
    report.k = cloud.dim();
    report.h = net.resolution();
    report.cloud_size = cloud.size();
    report.net_size = net.size();
    report.distinct_entries_only = cloud.distinct_entries_only();
    report.sampled = cloud.sampled();
    report.method = "kd-tree";
    return report;
}

DensityReport covering_radius(const GroundSet& A, std::size_t k, bool distinct_entries_only, const SphereNet& net) {
    if (A.empty()) throw DomainError("covering radius of an empty cloud");
    if (k != net.dim()) throw PreconditionError("cloud and net dimensions differ");
    if (k > 64) throw PreconditionError("implicit covering radius supports k <= 64");
    if (distinct_entries_only && A.size() < k) throw DomainError("no distinct-entry tuples: |A| < k");

    const std::vector<double> values = A.as_doubles();
    TupleSearch search(values, k, distinct_entries_only);
    double worst_sq = -1.0;
    std::size_t arg = 0;
    std::vector<std::size_t> hint;
    for (std::size_t i : net.chamber()) {
        const double sq = search.run(net.point(i), hint.empty() ? nullptr : &hint);
        hint = search.best_indices();
        if (sq > worst_sq) {
            worst_sq = sq;
            arg = i;
        }
    }
    const auto p = net.point(arg);
    DensityReport report;
    report.covering_radius = std::sqrt(std::max(0.0, worst_sq));
    report.argmax_net_point = UnitVector::from_normalized(std::vector<double>(p.begin(), p.end()));
    report.source = A.rule().describe();
    report.N = decimal(A.bound());
    report.k = k;
    report.h = net.resolution();
    report.cloud_size = tuple_count(A.size(), k, distinct_entries_only);
    report.net_size = net.size();
    report.distinct_entries_only = distinct_entries_only;
    report.sampled = false;
    report.method = "implicit-exhaustive";
    return report;
}

// ---------------------------------------------------------------------------
// Ratio gaps

std::vector<double> RatioGapStat::trend() const {
    std::vector<double> out;
    for (const auto& w : windows) out.push_back(w.max_gap);
    return out;
}

bool RatioGapStat::strictly_decreasing() const {
    for (std::size_t i = 1; i < windows.size(); ++i) {
        if (!(windows[i].max_gap < windows[i - 1].max_gap)) return false;
    }
    return true;
}

RatioGapStat ratio_gap(const GroundSet& A, std::size_t window_count) {
    if (window_count == 0) throw PreconditionError("ratio_gap needs at least one window");
    if (A.size() < 2 * window_count) throw PreconditionError("ratio_gap needs |A| >= 2 * window_count");
    const std::size_t count = A.size() - 1;  // ratios a_n / a_{n-1}, n = 2..|A|
    RatioGapStat stat;
    for (std::size_t w = 0; w < window_count; ++w) {
        const std::size_t begin = 1 + count * w / window_count;
        const std::size_t end = 1 + count * (w + 1) / window_count;
        Rational best = 0;
        for (std::size_t n = begin; n < end; ++n) {
            // max of (a_n - a_{n-1}) / a_{n-1}, compared exactly
            Rational gap(A[n] - A[n - 1], A[n - 1]);
            if (gap > best) best = std::move(gap);
        }
        stat.windows.push_back({begin + 1, end, static_cast<double>(best)});
        stat.max_gap = std::max(stat.max_gap, stat.windows.back().max_gap);
    }
    return stat;
}

// ---------------------------------------------------------------------------
// Witness tuples

int compare_scaled(const Natural& a, std::uint64_t m, double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("compare_scaled expects finite x >= 0");
    // x is read as its shortest round-trip decimal, so 0.6 means 3/5.
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific);
    const std::string text(buf, res.ptr);
    const auto e = text.find('e');
    std::string digits;
    std::int64_t point = 0;
    for (std::size_t i = 0; i < e; ++i) {
        if (text[i] == '.') {
            point = static_cast<std::int64_t>(e - i - 1);
        } else {
            digits += text[i];
        }
    }
    const std::int64_t exponent = std::stoll(text.substr(e + 1)) - point;
    Natural lhs = a;
    Natural rhs = Natural(m) * Natural(digits);
    const Natural scale = boost::multiprecision::pow(Natural(10), static_cast<unsigned>(std::llabs(exponent)));
    if (exponent >= 0) {
        rhs *= scale;
    } else {
        lhs *= scale;
    }
    return lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
}

WitnessResult witness_tuple(const GroundSet& A, const UnitVector& x, std::uint64_t m) {
    if (A.size() < 2) throw PreconditionError("witness needs at least two elements");
    if (m == 0) throw PreconditionError("m must be positive");
    const std::size_t k = x.dim();
    const double min_x = *std::min_element(x.coords().begin(), x.coords().end());
    if (!(min_x > 0.0)) throw PreconditionError("witness needs x with every coordinate > 0");
    if (compare_scaled(A[0], m, min_x) > 0) {
        std::ostringstream msg;
        msg << "m = " << m << " is below a_1 / min x_i = " << static_cast<double>(A[0]) / min_x;
        throw PreconditionError(msg.str());
    }

    WitnessResult result;
    std::vector<Natural> entries;
    double max_ratio = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
        // least element strictly greater than m * x_i
        const auto it = std::partition_point(A.elements().begin(), A.elements().end(),
                                             [&](const Natural& a) { return compare_scaled(a, m, x[i]) <= 0; });
        if (it == A.elements().end()) {
            std::ostringstream msg;
            msg << "no element of A exceeds m*x_" << i + 1 << " = " << static_cast<double>(m) * x[i]
                << "; regenerate A with N > " << static_cast<std::uint64_t>(std::floor(static_cast<double>(m) * x[i]));
            throw PreconditionError(msg.str());
        }
        const auto pos = static_cast<std::size_t>(it - A.elements().begin());
        // a_{m_i - 1} <= m x_i < a_{m_i}, exactly
        if (pos == 0 || compare_scaled(A[pos - 1], m, x[i]) > 0 || compare_scaled(A[pos], m, x[i]) <= 0) {
            throw InternalError("witness sandwich violated");
        }
        entries.push_back(A[pos]);
        result.indices.push_back(pos + 1);
        max_ratio = std::max(max_ratio, static_cast<double>(Rational(A[pos], A[pos - 1])));
    }
    result.tuple = IntTuple(std::move(entries));
    result.error = distance(rho(result.tuple), x);
    result.max_ratio = max_ratio;
    // x <= a/m <= R x coordinatewise gives |rho(a) - x| <= 2 (R - 1).
    if (result.error > 2.0 * (max_ratio - 1.0) + 1e-12) throw InternalError("witness error exceeds the ratio bound");
    return result;
}

// ---------------------------------------------------------------------------
// Dimension chain

ChainReport chain_check(const GroundSet& A, std::size_t k, double h, bool distinct_entries_only,
                        const Budget& budget) {
    if (k < 3) throw PreconditionError("chain_check needs k >= 3");
    ChainReport report{covering_radius(A, k, distinct_entries_only, sphere_net(k, h, budget)),
                       covering_radius(A, k - 1, distinct_entries_only, sphere_net(k - 1, h, budget))};
    return report;
}

}  // namespace directions
