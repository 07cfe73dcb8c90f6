#pragma once

// Candidate accumulation sets X of the orthant sphere, their closure under
// coordinate permutations and coordinate-subset projections, admissibility
// checks and deterministic dense enumerations.

#include "directions/core.hpp"
#include "directions/exact.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace directions {

/// A point rho(v) of the sphere given by an exact nonnegative vector v of
/// surds. Identity is decided exactly on the squared unit coordinates
/// v_i^2 / |v|^2, which are rationals.
class TargetPoint {
public:
    explicit TargetPoint(std::vector<ExactCoord> coords);
    /// Integer direction, e.g. an enumerated lattice point.
    static TargetPoint from_integers(std::span<const Natural> v);
    static TargetPoint from_integers(std::initializer_list<long long> v);

    std::size_t dim() const { return coords_.size(); }
    /// The pre-normalization vector v.
    const std::vector<ExactCoord>& coords() const { return coords_; }
    /// y_i = v_i / |v| in exact form.
    std::vector<ExactCoord> unit_coords() const;
    /// y_i^2, the canonical identity of the point.
    const std::vector<Rational>& squared_unit() const { return key_; }
    const UnitVector& unit() const { return unit_; }

    bool meets(const IndexSet& index_set) const;
    TargetPoint permuted(const Permutation& pi) const;
    TargetPoint projected(const IndexSet& index_set) const;

    /// Exact value of <this, other> as a surd sum.
    SurdSum inner_product(const TargetPoint& other) const;

    std::string to_string() const;

    bool operator==(const TargetPoint& other) const { return key_ == other.key_; }
    /// Canonical order: lexicographically decreasing squared coordinates,
    /// so (1,0,...,0) comes first.
    bool operator<(const TargetPoint& other) const { return other.key_ < key_; }

private:
    std::vector<ExactCoord> coords_;
    std::vector<Rational> key_;
    UnitVector unit_;
};

enum class TargetKind { finite_set, orthant_sphere_full, hyperplane_boundary, custom_enumerated };

std::string_view to_string(TargetKind kind);
TargetKind parse_target_kind(std::string_view name);

/// A finitely described candidate X. Finite sets keep their points in
/// canonical order without duplicates; the two infinite built-ins are the
/// whole orthant sphere and the union of the coordinate hyperplanes
/// { x : x_i = 0 for some i }.
class TargetSpec {
public:
    using Enumerator = std::function<TargetPoint(std::uint64_t m)>;

    /// Raw finite set; not closed unless the points already are.
    static TargetSpec finite_set(std::size_t k, std::vector<TargetPoint> points);
    static TargetSpec orthant_sphere_full(std::size_t k);
    static TargetSpec hyperplane_boundary(std::size_t k);
    /// A user enumerator m -> y^(m); accepted without closure verification.
    static TargetSpec custom(std::size_t k, Enumerator enumerator, std::string description = {});

    TargetKind kind() const { return kind_; }
    std::size_t dim() const { return k_; }
    const std::vector<TargetPoint>& points() const { return points_; }
    const Enumerator& custom_enumerator() const { return custom_; }
    const std::string& description() const { return description_; }

    /// Euclidean distance from x to X. Exact formulas for the built-ins,
    /// a finite minimum for finite sets; throws PreconditionError for
    /// custom enumerators.
    double distance_to(const UnitVector& x) const;
    bool contains(const TargetPoint& p) const;

private:
    TargetSpec(TargetKind kind, std::size_t k) : kind_(kind), k_(k) {}

    TargetKind kind_;
    std::size_t k_;
    std::vector<TargetPoint> points_;
    Enumerator custom_;
    std::string description_;
};

/// One failed closure condition: the point, the offending map, and its
/// image missing from the set.
struct ClosureWitness {
    std::string point;
    std::string action;
    std::string missing_image;
};

enum class Verdict { valid, invalid, unverifiable };

struct ValidityReport {
    bool closed_ok = false;
    bool permutation_ok = false;
    bool projection_ok = false;
    Verdict verdict = Verdict::invalid;
    std::vector<ClosureWitness> witnesses;

    bool all_ok() const { return closed_ok && permutation_ok && projection_ok; }
};

/// Smallest finite superset of `points` closed under every coordinate
/// permutation and every rho_I with I meeting the point.
TargetSpec close_generators(std::span<const TargetPoint> points);

/// Checks the three admissibility conditions exactly. Built-in infinite
/// kinds are valid by construction; custom enumerators are unverifiable.
ValidityReport validate_target(const TargetSpec& spec);

/// Streams y^(1), y^(2), ... for a spec.
///
/// Finite sets cycle through their points in canonical order. The two
/// infinite kinds walk primitive integer directions: first the basis vectors
/// e_1..e_k, then every other primitive vector by increasing largest entry
/// and lexicographically increasing within one largest entry; the
/// hyperplane kind keeps only vectors with a zero coordinate (for k = 2
/// that is just e_1, e_2, which are cycled).
class DenseEnumerator {
public:
    explicit DenseEnumerator(const TargetSpec& spec);
    TargetPoint next();
    std::uint64_t position() const { return produced_; }

private:
    bool accept(const std::vector<std::uint64_t>& v) const;
    void fill_batch();

    TargetSpec spec_;
    std::uint64_t produced_ = 0;
    std::uint64_t max_entry_ = 0;
    std::vector<std::vector<std::uint64_t>> batch_;
    std::size_t batch_pos_ = 0;
};

/// y^(m), m >= 1. Linear in m; use DenseEnumerator for sequences.
TargetPoint enumerate_dense(const TargetSpec& spec, std::uint64_t m);

}  // namespace directions
