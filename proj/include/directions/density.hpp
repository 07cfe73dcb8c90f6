#pragma once

// Denseness diagnostics for direction sets: covering radii over nets of the
// orthant sphere, the ratio-gap statistic a_n / a_{n-1} - 1, witness tuples
// approximating a prescribed interior direction, and the dimension chain.

#include "directions/core.hpp"
#include "directions/enumeration.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace directions {

/// Points rho(v / n) for every v in {0..n}^k with max(v) = n, i.e. the
/// normalized grid on the faces of the unit cube. Radial projection of the
/// faces onto the sphere is 1-Lipschitz, so the mesh is at most
/// sqrt(k-1) / (2n); n = ceil(k / (2h)) makes it <= h.
class SphereNet {
public:
    std::size_t dim() const { return k_; }
    double resolution() const { return h_; }
    std::uint64_t denominator() const { return n_; }
    /// Proven bound on the distance from any sphere point to the net.
    double mesh_bound() const;

    std::size_t size() const { return points_.size() / k_; }
    std::span<const double> point(std::size_t i) const { return {&points_[i * k_], k_}; }
    const std::vector<double>& flat() const { return points_; }
    /// Net points with non-increasing coordinates. The net is closed under
    /// permutations, so these represent every orbit.
    std::vector<std::size_t> chamber() const;

private:
    friend SphereNet sphere_net(std::size_t, double, const Budget&);
    std::size_t k_ = 0;
    double h_ = 0;
    std::uint64_t n_ = 0;
    std::vector<double> points_;
};

SphereNet sphere_net(std::size_t k, double h, const Budget& budget = Budget::from_env());

/// Monte-Carlo check of the mesh bound: uniform random orthant directions
/// against their nearest net point.
struct NetAudit {
    std::size_t k = 0;
    double h = 0;
    std::uint64_t denominator = 0;
    std::uint64_t net_size = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    double mesh_bound = 0;
    double max_distance = 0;
    bool within_h() const { return max_distance <= h; }
};

NetAudit net_audit(const SphereNet& net, std::uint64_t samples, std::uint64_t seed);

/// Max over net points of the distance to the nearest cloud direction.
struct DensityReport {
    double covering_radius = 0;
    UnitVector argmax_net_point;
    std::string source;           // rule description
    std::string N;                // ground-set bound, decimal
    std::size_t k = 0;
    double h = 0;
    std::uint64_t cloud_size = 0;  // directions, or tuples for implicit clouds
    std::uint64_t net_size = 0;
    bool distinct_entries_only = false;
    bool sampled = false;
    std::string method;
};

/// Covering radius of a materialized cloud (k-d tree nearest neighbors).
DensityReport covering_radius(const DirectionCloud& cloud, const SphereNet& net);

/// Covering radius of the full D^k(A) (or its distinct-entry variant)
/// without materializing it: for each net point an exact pruned search over
/// sorted tuples, bracketing every coordinate ratio a_j / a_1 by the
/// current best distance.
DensityReport covering_radius(const GroundSet& A, std::size_t k, bool distinct_entries_only,
                              const SphereNet& net);

struct RatioWindow {
    std::size_t first_index;  // 1-based n of the first ratio a_n / a_{n-1}
    std::size_t last_index;
    double max_gap;
};

/// Evidence for a_{n-1} / a_n -> 1. A decreasing trend supports the
/// sufficient condition for denseness; the condition is sufficient, not
/// necessary, and no finite prefix proves it.
struct RatioGapStat {
    std::vector<RatioWindow> windows;
    double max_gap = 0;
    std::vector<double> trend() const;
    bool strictly_decreasing() const;
    static constexpr const char* caveat =
        "a_{n-1}/a_n -> 1 is sufficient but not necessary for denseness; a finite prefix is evidence only";
};

RatioGapStat ratio_gap(const GroundSet& A, std::size_t window_count);

struct WitnessResult {
    IntTuple tuple;
    std::vector<std::size_t> indices;  // 1-based m_i with tuple_i = a_{m_i}
    double error = 0;                  // |rho(tuple) - x|
    double max_ratio = 0;              // max_i a_{m_i} / a_{m_i - 1}
};

/// For m >= a_1 / min_i x_i picks, for each i, the least a_{m_i} > m x_i,
/// so that a_{m_i - 1} <= m x_i < a_{m_i} (checked exactly, see
/// compare_scaled) and
/// |rho(a) - x| <= 2 (max_ratio - 1) (checked numerically).
WitnessResult witness_tuple(const GroundSet& A, const UnitVector& x, std::uint64_t m);

struct ChainReport {
    DensityReport upper;  // dimension k
    DensityReport lower;  // dimension k - 1
    /// eps_{k-1} <= eps_k + 2h
    bool forward_holds() const { return lower.covering_radius <= upper.covering_radius + 2 * upper.h; }
};

ChainReport chain_check(const GroundSet& A, std::size_t k, double h, bool distinct_entries_only = false,
                        const Budget& budget = Budget::from_env());

/// Three-way exact comparison of a with m * x, where the double x stands for
/// its shortest round-trip decimal.
int compare_scaled(const Natural& a, std::uint64_t m, double x);

}  // namespace directions
