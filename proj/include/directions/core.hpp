#pragma once

// Exact and floating direction arithmetic on the nonnegative orthant sphere
// S^{k-1} = { x in [0,1]^k : |x| = 1 }.
//
// Coordinates are numbered 1..k in documentation and 0..k-1 in code; every
// index-carrying type (IndexSet, Permutation) stores the 0-based form.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace directions {

using Natural = boost::multiprecision::cpp_int;

inline constexpr double kUnitNormTolerance = 1e-12;

/// A point of the orthant sphere in floating point.
class UnitVector {
public:
    UnitVector() = default;

    /// Wraps already-normalized coordinates; throws DomainError if a
    /// coordinate is negative or the norm is off by more than 1e-12.
    static UnitVector from_normalized(std::vector<double> coords);

    std::size_t dim() const { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    std::span<const double> coords() const { return coords_; }

    bool operator==(const UnitVector&) const = default;

private:
    explicit UnitVector(std::vector<double> coords) : coords_(std::move(coords)) {}
    std::vector<double> coords_;
};

/// k >= 2 positive integers.
class IntTuple {
public:
    IntTuple() = default;
    explicit IntTuple(std::vector<Natural> entries);
    IntTuple(std::initializer_list<long long> entries);

    std::size_t dim() const { return entries_.size(); }
    const Natural& operator[](std::size_t i) const { return entries_[i]; }
    std::span<const Natural> entries() const { return entries_; }
    bool has_distinct_entries() const;

    bool operator==(const IntTuple&) const = default;

private:
    std::vector<Natural> entries_;
};

/// Nonnegative integer vector with gcd 1; the exact canonical
/// representative of the direction rho(a) of any a proportional to it.
class PrimitiveDirection {
public:
    PrimitiveDirection() = default;

    std::size_t dim() const { return entries_.size(); }
    const Natural& operator[](std::size_t i) const { return entries_[i]; }
    std::span<const Natural> entries() const { return entries_; }
    std::string to_string() const;

    bool operator==(const PrimitiveDirection&) const = default;
    std::strong_ordering operator<=>(const PrimitiveDirection& other) const;

private:
    explicit PrimitiveDirection(std::vector<Natural> entries) : entries_(std::move(entries)) {}
    std::vector<Natural> entries_;

    friend PrimitiveDirection primitive(std::span<const Natural>);
};

/// Nonempty subset of coordinates, stored 0-based.
class IndexSet {
public:
    /// Throws PreconditionError if empty or out of range.
    IndexSet(std::size_t k, std::vector<std::size_t> members);
    /// Builds from a bitmask over {0..k-1}.
    static IndexSet from_mask(std::size_t k, std::uint64_t mask);
    static IndexSet all(std::size_t k);

    std::size_t dim() const { return k_; }
    bool contains(std::size_t i) const { return ((mask_ >> i) & 1u) != 0; }
    std::uint64_t mask() const { return mask_; }
    std::vector<std::size_t> members() const;

private:
    IndexSet() = default;
    std::size_t k_ = 0;
    std::uint64_t mask_ = 0;
};

/// Bijection of {0..k-1}; image[i] = pi(i).
class Permutation {
public:
    /// Throws DomainError unless `image` is a bijection of {0..k-1}.
    explicit Permutation(std::vector<std::size_t> image);
    static Permutation identity(std::size_t k);
    /// All k! permutations in lexicographic order of their images.
    static std::vector<Permutation> all(std::size_t k);

    std::size_t dim() const { return image_.size(); }
    std::size_t operator()(std::size_t i) const { return image_[i]; }
    std::span<const std::size_t> image() const { return image_; }
    Permutation inverse() const;
    std::string to_string() const;

    bool operator==(const Permutation&) const = default;

private:
    std::vector<std::size_t> image_;
};

/// rho(v) = v / |v|; v nonnegative and nonzero, else DomainError.
UnitVector rho(std::span<const double> v);
UnitVector rho(std::span<const Natural> v);
UnitVector rho(const IntTuple& a);
UnitVector rho(const PrimitiveDirection& d);

/// Reduces a nonnegative integer vector by the gcd of its entries.
/// Two vectors have equal primitive forms iff they define the same direction.
PrimitiveDirection primitive(std::span<const Natural> a);
PrimitiveDirection primitive(std::initializer_list<long long> a);

/// Zeroes the coordinates outside I and renormalizes. Defined only when I
/// meets x, i.e. x_j != 0 for some j in I; otherwise DomainError.
UnitVector rho_I(const UnitVector& x, const IndexSet& index_set);
bool meets(const IndexSet& index_set, const UnitVector& x);

/// pi(x) = (x_{pi(1)}, ..., x_{pi(k)}).
UnitVector permute(const UnitVector& x, const Permutation& pi);

/// f_k(x) = rho(x_1, ..., x_{k-1}, 0): embeds S^{k-2} into S^{k-1}.
UnitVector lift(const UnitVector& x);

double distance(std::span<const double> a, std::span<const double> b);
double distance(const UnitVector& a, const UnitVector& b);
double norm(std::span<const double> v);

}  // namespace directions
