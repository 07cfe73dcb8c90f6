#pragma once

// Realizing a target set X as the accumulation set of distinct-entry
// directions: c_i^(m) = floor(m! y_i^(m)) + s_i^(m) + t^(m), where y^(m) runs
// through a dense sequence of X.

#include "directions/core.hpp"
#include "directions/enumeration.hpp"
#include "directions/exact.hpp"
#include "directions/targets.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace directions {

inline constexpr unsigned kDefaultPrecisionCap = 16384;

Natural factorial(std::uint64_t m);

/// Certified floor(m! * y_i) for a coordinate of a target point.
struct FactorialFloor {
    std::uint64_t m = 0;
    std::size_t i = 0;
    Natural value;
    unsigned precision_bits = 0;  // 0 when resolved exactly
    bool exact = false;           // true when m! * y_i was decided symbolically
};

/// Encloses m! * q * sqrt(r) (the canonical unit coordinate) in a dyadic
/// interval, doubling the precision from 64 bits until the interval holds
/// no integer. Rational coordinates are floored exactly. Throws
/// ResourceError past `precision_cap` bits.
FactorialFloor factorial_floor(const TargetPoint& y, std::size_t i, std::uint64_t m,
                               unsigned precision_cap = kDefaultPrecisionCap);

/// Per-step checks, all evaluated when the step is made.
struct StepCertificate {
    bool distinct_entries = false;   // C1
    bool new_ratio = false;          // C2
    bool floor_offsets = false;      // C3: 0 <= c_i - floor(m! y_i) <= k + m, exactly
    bool rho_bound = true;           // C4 (checked for m >= 4)
    double rho_error = 0;            // |rho(c) - y| at high precision
    double rho_bound_value = 0;      // 10 (k + m) / m!
    bool all() const { return distinct_entries && new_ratio && floor_offsets && rho_bound; }
};

struct StepRecord {
    std::uint64_t m = 0;
    TargetPoint y;
    std::vector<Natural> bases;
    std::vector<std::uint64_t> s;
    std::uint64_t t = 0;
    IntTuple c;
    std::vector<FactorialFloor> floors;
    StepCertificate certificate;
};

class ConstructionState {
public:
    explicit ConstructionState(std::size_t k) : k_(k) {}

    std::size_t dim() const { return k_; }
    const std::vector<StepRecord>& history() const { return history_; }
    const std::set<PrimitiveDirection>& registry() const { return registry_; }
    /// Every constructed value with all of its (coordinate, step) origins.
    GroundSet ground_set() const;

private:
    friend IntTuple construct_step(const TargetPoint&, std::uint64_t, ConstructionState&);
    std::size_t k_;
    std::vector<StepRecord> history_;
    std::set<PrimitiveDirection> registry_;
};

/// Step m >= 1 for target y = y^(m): greedy s, least admissible t, then the
/// certificates. Steps must be made in order m = 1, 2, ...
IntTuple construct_step(const TargetPoint& y, std::uint64_t m, ConstructionState& state);

struct Construction {
    TargetSpec spec;
    ConstructionState state;
    GroundSet elements;

    bool all_certified() const;
};

/// Steps 1..M along the dense enumeration of `spec`.
Construction construct(const TargetSpec& spec, std::uint64_t M);

struct VerificationReport {
    std::uint64_t M = 0;
    std::uint64_t L_index = 0;
    double h = 0;
    double tolerance = 0;
    Natural tail_threshold;          // L_index!
    std::size_t forward_sample_size = 0;
    double forward_hausdorff = 0;    // max over the X sample of the distance to {rho(c^(m))}
    std::size_t tail_elements = 0;
    std::size_t tail_directions = 0;
    double backward_hausdorff = 0;   // max over tail directions of the distance to X
    std::size_t backward_violations = 0;
    std::string worst_direction;
    /// Each tail tuple against its own projected target rho_I(pi(y^(m1))),
    /// where m1 is the largest scale in the tuple: distance versus the
    /// provable bound 2|e| / |w|.
    double mechanism_max_distance = 0;
    double mechanism_max_ratio = 0;  // max of distance / bound
    std::size_t mechanism_violations = 0;
};

VerificationReport verify_construction(const Construction& construction, std::uint64_t M, std::uint64_t L_index,
                                       double h, double tolerance = 1e-3,
                                       const Budget& budget = Budget::from_env());

struct RemarkReport {
    std::size_t k = 0;
    std::uint64_t M = 0;
    std::size_t target_size = 0;
    std::string theta;
    double repetition_distance = 0;  // min over D^k(A) of the distance to theta
    std::string repetition_direction;
    Natural tail_threshold;
    double distinct_tail_distance = 0;  // min over tail D^k distinct of the distance to theta
    double separation = 0;              // dist(theta, X)
    std::string separation_exact;
    std::string separation_point;
};

/// X = closure of rho(1, sqrt 2, 0, ..., 0); theta = rho(1, sqrt 2, 1, ..., 1)
/// lies outside X but is approached by repeated-entry tuples of the
/// construction. Distinct-entry tuples beyond scale ceil(M/2)! stay away.
RemarkReport demo_remark(std::size_t k, std::uint64_t M, const Budget& budget = Budget::from_env());

}  // namespace directions
