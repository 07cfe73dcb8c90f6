#pragma once

// Ground sets A (finite prefixes A ∩ [1, N]) and the finite direction sets
// D^k(A ∩ [1,N]) and D^{k distinct}(A ∩ [1,N]) with exact deduplication.

#include "directions/core.hpp"
#include "directions/errors.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace directions {

enum class RuleKind { explicit_list, naturals, primes, powers, polynomial, constructed };

std::string_view to_string(RuleKind kind);
RuleKind parse_rule_kind(std::string_view name);

struct GroundRule {
    RuleKind kind = RuleKind::naturals;
    std::uint64_t base = 2;    // powers-of-b
    unsigned degree = 2;       // polynomial n^d
    std::vector<Natural> explicit_elements;

    std::string describe() const;
};

/// Where a constructed element came from: coordinate i (0-based) of c^(m).
struct Origin {
    std::size_t coordinate;
    std::uint64_t step;
};

/// A sorted, duplicate-free finite prefix of some A ⊆ N.
class GroundSet {
public:
    GroundSet() = default;
    /// Wraps arbitrary positive integers (sorted and deduplicated here).
    static GroundSet from_elements(GroundRule rule, std::vector<Natural> elements);

    const GroundRule& rule() const { return rule_; }
    const std::vector<Natural>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    bool empty() const { return elements_.empty(); }
    const Natural& operator[](std::size_t i) const { return elements_[i]; }
    const Natural& bound() const { return bound_; }

    /// True when every element fits in 64 bits; the fast paths use words().
    bool fits_u64() const { return words_.has_value(); }
    const std::vector<std::uint64_t>& words() const { return *words_; }
    /// Elements as doubles (for geometry only).
    std::vector<double> as_doubles() const;

    /// Elements >= threshold, same rule.
    GroundSet tail(const Natural& threshold) const;

    /// Provenance for constructed sets, parallel to elements().
    const std::vector<std::vector<Origin>>& origins() const { return origins_; }
    void set_origins(std::vector<std::vector<Origin>> origins);

private:
    GroundRule rule_;
    std::vector<Natural> elements_;
    std::optional<std::vector<std::uint64_t>> words_;
    Natural bound_ = 0;
    std::vector<std::vector<Origin>> origins_;

    friend GroundSet ground_set(const GroundRule&, std::uint64_t, const Budget&);
};

/// Primes <= n by a segmented sieve of Eratosthenes.
std::vector<std::uint64_t> sieve_primes(std::uint64_t n);

/// Materializes A ∩ [1, N] for a rule; ResourceError when N exceeds the
/// element budget for rules whose materialization is linear in N.
GroundSet ground_set(const GroundRule& rule, std::uint64_t N, const Budget& budget = Budget::from_env());

/// A finite, exactly deduplicated set of primitive directions.
class DirectionCloud {
public:
    DirectionCloud() = default;
    DirectionCloud(std::size_t k, bool distinct_entries_only);

    std::size_t dim() const { return k_; }
    bool distinct_entries_only() const { return distinct_; }
    bool sampled() const { return sampled_; }
    std::uint64_t tuples_examined() const { return tuples_examined_; }
    const std::string& source_rule() const { return source_rule_; }
    const Natural& source_bound() const { return source_bound_; }

    std::size_t size() const;
    bool empty() const { return size() == 0; }
    PrimitiveDirection primitive_at(std::size_t i) const;
    UnitVector unit_at(std::size_t i) const;
    /// All directions as a flat row-major array of unit coordinates.
    std::vector<double> flat_units() const;
    bool contains(const PrimitiveDirection& d) const;

    /// Sorted primitive directions; equality is exact set equality.
    std::vector<PrimitiveDirection> to_vector() const;
    bool operator==(const DirectionCloud& other) const;

private:
    std::size_t k_ = 0;
    bool distinct_ = false;
    bool sampled_ = false;
    std::uint64_t tuples_examined_ = 0;
    std::string source_rule_;
    Natural source_bound_ = 0;
    // Row-major entries, rows sorted lexicographically and unique.
    std::variant<std::vector<std::uint64_t>, std::vector<Natural>> rows_;

    friend class CloudBuilder;
};

struct EnumerationOptions {
    /// Fall back to uniform tuple sampling when the tuple count exceeds the
    /// budget; otherwise such requests raise ResourceError.
    bool allow_sampling = false;
    std::uint64_t sample_size = 1'000'000;
    std::uint64_t seed = 1;
    /// Partition the first coordinate across this many workers.
    unsigned workers = 1;
    Budget budget = Budget::from_env();
};

/// Number of ordered k-tuples (distinct entries when requested) from n
/// elements, saturating at UINT64_MAX.
std::uint64_t tuple_count(std::uint64_t n, std::size_t k, bool distinct_entries_only);

/// Every primitive direction of an ordered k-tuple from A, with or without
/// the pairwise-distinct restriction.
DirectionCloud directions(const GroundSet& A, std::size_t k, bool distinct_entries_only,
                          const EnumerationOptions& options = {});

/// Directions of distinct-entry tuples whose smallest entry is >= L; a
/// finite proxy for directions of tuples with |a| -> infinity.
DirectionCloud accumulation_candidates(const GroundSet& A, std::size_t k, const Natural& L,
                                       const EnumerationOptions& options = {});

}  // namespace directions
