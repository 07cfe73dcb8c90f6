#include "directions/core.hpp"

#include "directions/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace directions {

namespace {

constexpr std::size_t kMaxDim = 64;

void require_dim(std::size_t k) {
    if (k == 0 || k > kMaxDim) throw PreconditionError("dimension must be in [1, 64]");
}

}  // namespace

// ---------------------------------------------------------------------------
// UnitVector

UnitVector UnitVector::from_normalized(std::vector<double> coords) {
    if (coords.empty()) throw DomainError("unit vector needs at least one coordinate");
    for (double c : coords) {
        if (!(c >= 0.0) || c > 1.0 + kUnitNormTolerance) {
            throw DomainError("unit vector coordinates must lie in [0, 1]");
        }
    }
    if (std::abs(norm(coords) - 1.0) > kUnitNormTolerance) {
        throw DomainError("vector is not normalized");
    }
    for (double& c : coords) c = std::min(c, 1.0);
    return UnitVector(std::move(coords));
}

// ---------------------------------------------------------------------------
// IntTuple

IntTuple::IntTuple(std::vector<Natural> entries) : entries_(std::move(entries)) {
    if (entries_.size() < 2) throw PreconditionError("integer tuples need k >= 2 entries");
    for (const auto& e : entries_) {
        if (e < 1) throw PreconditionError("integer tuple entries must be positive");
    }
}

IntTuple::IntTuple(std::initializer_list<long long> entries)
    : IntTuple(std::vector<Natural>(entries.begin(), entries.end())) {}

bool IntTuple::has_distinct_entries() const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        for (std::size_t j = i + 1; j < entries_.size(); ++j) {
            if (entries_[i] == entries_[j]) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// PrimitiveDirection

std::string PrimitiveDirection::to_string() const {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) out << ',';
        out << entries_[i];
    }
    out << ')';
    return out.str();
}

std::strong_ordering PrimitiveDirection::operator<=>(const PrimitiveDirection& other) const {
    if (auto c = entries_.size() <=> other.entries_.size(); c != 0) return c;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i] < other.entries_[i]) return std::strong_ordering::less;
        if (other.entries_[i] < entries_[i]) return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

PrimitiveDirection primitive(std::span<const Natural> a) {
    if (a.empty()) throw DomainError("primitive of an empty vector");
    Natural g = 0;
    for (const auto& e : a) {
        if (e < 0) throw DomainError("primitive expects nonnegative entries");
        if (e != 0) g = (g == 0) ? Natural(e) : Natural(boost::multiprecision::gcd(g, e));
    }
    if (g == 0) throw DomainError("primitive of the zero vector");
    std::vector<Natural> reduced(a.begin(), a.end());
    if (g != 1) {
        for (auto& e : reduced) e /= g;
    }
    return PrimitiveDirection(std::move(reduced));
}

PrimitiveDirection primitive(std::initializer_list<long long> a) {
    const std::vector<Natural> v(a.begin(), a.end());
    return primitive(std::span<const Natural>(v));
}

// ---------------------------------------------------------------------------
// IndexSet

IndexSet::IndexSet(std::size_t k, std::vector<std::size_t> members) : k_(k) {
    require_dim(k);
    if (members.empty()) throw PreconditionError("index set must be nonempty");
    for (std::size_t i : members) {
        if (i >= k) throw PreconditionError("index set member out of range");
        mask_ |= std::uint64_t{1} << i;
    }
}

IndexSet IndexSet::from_mask(std::size_t k, std::uint64_t mask) {
    require_dim(k);
    const std::uint64_t full = (k == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1);
    if (mask == 0 || (mask & ~full) != 0) throw PreconditionError("invalid index set mask");
    IndexSet s;
    s.k_ = k;
    s.mask_ = mask;
    return s;
}

IndexSet IndexSet::all(std::size_t k) {
    require_dim(k);
    return from_mask(k, (k == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1));
}

std::vector<std::size_t> IndexSet::members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < k_; ++i) {
        if (contains(i)) out.push_back(i);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (std::size_t v : image_) {
        if (v >= image_.size() || seen[v]) throw DomainError("index map is not a bijection");
        seen[v] = true;
    }
}

Permutation Permutation::identity(std::size_t k) {
    std::vector<std::size_t> image(k);
    std::iota(image.begin(), image.end(), std::size_t{0});
    return Permutation(std::move(image));
}

std::vector<Permutation> Permutation::all(std::size_t k) {
    std::vector<std::size_t> image(k);
    std::iota(image.begin(), image.end(), std::size_t{0});
    std::vector<Permutation> out;
    do {
        out.emplace_back(image);
    } while (std::next_permutation(image.begin(), image.end()));
    return out;
}

Permutation Permutation::inverse() const {
    std::vector<std::size_t> inv(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i]] = i;
    return Permutation(std::move(inv));
}

std::string Permutation::to_string() const {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < image_.size(); ++i) {
        if (i) out << ' ';
        out << image_[i] + 1;
    }
    out << ']';
    return out.str();
}

// ---------------------------------------------------------------------------
// Maps on the sphere

double norm(std::span<const double> v) {
    // Scale by the largest entry so that squares neither overflow nor underflow.
    double scale = 0.0;
    for (double c : v) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return 0.0;
    double sum = 0.0;
    for (double c : v) {
        const double r = c / scale;
        sum += r * r;
    }
    return scale * std::sqrt(sum);
}

double distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw PreconditionError("dimension mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

double distance(const UnitVector& a, const UnitVector& b) { return distance(a.coords(), b.coords()); }

UnitVector rho(std::span<const double> v) {
    if (v.empty()) throw DomainError("rho of an empty vector");
    for (double c : v) {
        if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("rho expects finite nonnegative entries");
    }
    const double n = norm(v);
    if (n == 0.0) throw DomainError("rho of the zero vector");
    std::vector<double> out(v.begin(), v.end());
    for (double& c : out) c = std::min(c / n, 1.0);
    return UnitVector::from_normalized(std::move(out));
}

UnitVector rho(std::span<const Natural> v) {
    if (v.empty()) throw DomainError("rho of an empty vector");
    Natural largest = 0;
    for (const auto& e : v) {
        if (e < 0) throw DomainError("rho expects nonnegative entries");
        if (e > largest) largest = e;
    }
    if (largest == 0) throw DomainError("rho of the zero vector");
    // Drop low bits of huge entries so the double conversion stays finite.
    const std::size_t bits = boost::multiprecision::msb(largest) + 1;
    const std::size_t shift = bits > 960 ? bits - 960 : 0;
    std::vector<double> approx;
    approx.reserve(v.size());
    for (const auto& e : v) approx.push_back(static_cast<double>(Natural(e >> shift)));
    return rho(std::span<const double>(approx));
}

UnitVector rho(const IntTuple& a) { return rho(a.entries()); }

UnitVector rho(const PrimitiveDirection& d) { return rho(d.entries()); }

bool meets(const IndexSet& index_set, const UnitVector& x) {
    if (index_set.dim() != x.dim()) throw PreconditionError("dimension mismatch");
    for (std::size_t i = 0; i < x.dim(); ++i) {
        if (index_set.contains(i) && x[i] != 0.0) return true;
    }
    return false;
}

UnitVector rho_I(const UnitVector& x, const IndexSet& index_set) {
    if (!meets(index_set, x)) throw DomainError("index set does not meet the point");
    if (index_set.mask() == IndexSet::all(x.dim()).mask()) return x;
    std::vector<double> y(x.coords().begin(), x.coords().end());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!index_set.contains(i)) y[i] = 0.0;
    }
    return rho(std::span<const double>(y));
}

UnitVector permute(const UnitVector& x, const Permutation& pi) {
    if (pi.dim() != x.dim()) throw DomainError("permutation dimension mismatch");
    std::vector<double> y(x.dim());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[pi(i)];
    return UnitVector::from_normalized(std::move(y));
}

UnitVector lift(const UnitVector& x) {
    if (x.dim() < 2) throw PreconditionError("lift needs a point of S^{k-2} with k >= 3");
    std::vector<double> y(x.coords().begin(), x.coords().end());
    y.push_back(0.0);
    return UnitVector::from_normalized(std::move(y));
}

}  // namespace directions
