#include "directions/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

namespace directions {

namespace {

constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();

template <typename Int>
bool row_less(const Int* a, const Int* b, std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
    }
    return false;
}

template <typename Int>
bool row_equal(const Int* a, const Int* b, std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
        if (a[i] != b[i]) return false;
    }
    return true;
}

/// Sorts the rows of a row-major array and drops duplicates.
template <typename Int>
void sort_unique_rows(std::vector<Int>& rows, std::size_t k) {
    const std::size_t n = rows.size() / k;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return row_less(&rows[a * k], &rows[b * k], k); });
    std::vector<Int> out;
    out.reserve(rows.size());
    for (std::size_t idx = 0; idx < n; ++idx) {
        const Int* row = &rows[order[idx] * k];
        if (!out.empty() && row_equal(&out[out.size() - k], row, k)) continue;
        out.insert(out.end(), row, row + k);
    }
    rows = std::move(out);
}

Natural gcd_of(const Natural& a, const Natural& b) { return boost::multiprecision::gcd(a, b); }
std::uint64_t gcd_of(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

/// Appends the primitive form of `tuple` to `rows`.
template <typename Int>
void push_primitive(std::vector<Int>& rows, const std::vector<Int>& tuple) {
    Int g = tuple[0];
    for (std::size_t i = 1; i < tuple.size() && g != 1; ++i) g = gcd_of(g, tuple[i]);
    for (const auto& e : tuple) rows.push_back(g == 1 ? e : Int(e / g));
}

/// Exhaustive enumeration of tuples whose first index lies in [first, last).
template <typename Int>
std::vector<Int> enumerate_range(const std::vector<Int>& values, std::size_t k, bool distinct,
                                 std::size_t first, std::size_t last) {
    std::vector<Int> rows;
    const std::size_t n = values.size();
    std::vector<std::size_t> idx(k, 0);
    std::vector<Int> tuple(k);
    for (std::size_t i0 = first; i0 < last; ++i0) {
        idx.assign(k, 0);
        idx[0] = i0;
        while (true) {
            bool ok = true;
            if (distinct) {
                for (std::size_t i = 0; i < k && ok; ++i) {
                    for (std::size_t j = i + 1; j < k && ok; ++j) ok = idx[i] != idx[j];
                }
            }
            if (ok) {
                for (std::size_t i = 0; i < k; ++i) tuple[i] = values[idx[i]];
                push_primitive(rows, tuple);
            }
            std::size_t pos = k;
            while (pos > 1 && idx[pos - 1] + 1 == n) idx[--pos] = 0;
            if (pos == 1) break;
            ++idx[pos - 1];
        }
    }
    sort_unique_rows(rows, k);
    return rows;
}

template <typename Int>
std::vector<Int> enumerate_all(const std::vector<Int>& values, std::size_t k, bool distinct, unsigned workers) {
    const std::size_t n = values.size();
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (workers == 1) return enumerate_range(values, k, distinct, 0, n);

    std::vector<std::vector<Int>> parts(workers);
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t first = n * w / workers;
        const std::size_t last = n * (w + 1) / workers;
        threads.emplace_back([&, w, first, last] { parts[w] = enumerate_range(values, k, distinct, first, last); });
    }
    for (auto& t : threads) t.join();
    std::vector<Int> rows;
    for (auto& part : parts) rows.insert(rows.end(), part.begin(), part.end());
    sort_unique_rows(rows, k);
    return rows;
}

template <typename Int>
std::vector<Int> enumerate_sampled(const std::vector<Int>& values, std::size_t k, bool distinct,
                                   std::uint64_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
    std::vector<Int> rows;
    std::vector<std::size_t> idx(k);
    std::vector<Int> tuple(k);
    for (std::uint64_t s = 0; s < samples; ++s) {
        while (true) {
            for (auto& i : idx) i = pick(rng);
            if (!distinct) break;
            auto sorted = idx;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) break;
        }
        for (std::size_t i = 0; i < k; ++i) tuple[i] = values[idx[i]];
        push_primitive(rows, tuple);
    }
    sort_unique_rows(rows, k);
    return rows;
}

}  // namespace

// ---------------------------------------------------------------------------
// Rules and ground sets

std::string_view to_string(RuleKind kind) {
    switch (kind) {
        case RuleKind::explicit_list: return "explicit";
        case RuleKind::naturals: return "naturals";
        case RuleKind::primes: return "primes";
        case RuleKind::powers: return "powers";
        case RuleKind::polynomial: return "polynomial";
        case RuleKind::constructed: return "constructed";
    }
    return "unknown";
}

RuleKind parse_rule_kind(std::string_view name) {
    for (auto kind : {RuleKind::explicit_list, RuleKind::naturals, RuleKind::primes, RuleKind::powers,
                      RuleKind::polynomial, RuleKind::constructed}) {
        if (to_string(kind) == name) return kind;
    }
    throw PreconditionError("unknown ground-set rule '" + std::string(name) + "'");
}

std::string GroundRule::describe() const {
    std::ostringstream out;
    out << to_string(kind);
    if (kind == RuleKind::powers) out << "-of-" << base;
    if (kind == RuleKind::polynomial) out << "-n^" << degree;
    return out.str();
}

GroundSet GroundSet::from_elements(GroundRule rule, std::vector<Natural> elements) {
    for (const auto& e : elements) {
        if (e < 1) throw PreconditionError("ground set elements must be positive integers");
    }
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    GroundSet set;
    set.rule_ = std::move(rule);
    set.elements_ = std::move(elements);
    set.bound_ = set.elements_.empty() ? Natural(0) : set.elements_.back();
    if (set.elements_.empty() || set.elements_.back() <= kU64Max) {
        std::vector<std::uint64_t> words;
        words.reserve(set.elements_.size());
        for (const auto& e : set.elements_) words.push_back(static_cast<std::uint64_t>(e));
        set.words_ = std::move(words);
    }
    return set;
}

std::vector<double> GroundSet::as_doubles() const {
    std::vector<double> out;
    out.reserve(elements_.size());
    if (words_) {
        for (auto w : *words_) out.push_back(static_cast<double>(w));
    } else {
        for (const auto& e : elements_) out.push_back(static_cast<double>(e));
    }
    return out;
}

GroundSet GroundSet::tail(const Natural& threshold) const {
    const auto first = std::lower_bound(elements_.begin(), elements_.end(), threshold);
    GroundSet out = from_elements(rule_, std::vector<Natural>(first, elements_.end()));
    out.bound_ = bound_;
    if (!origins_.empty()) {
        const auto offset = static_cast<std::size_t>(first - elements_.begin());
        out.origins_.assign(origins_.begin() + static_cast<std::ptrdiff_t>(offset), origins_.end());
    }
    return out;
}

void GroundSet::set_origins(std::vector<std::vector<Origin>> origins) {
    if (origins.size() != elements_.size()) throw PreconditionError("provenance size mismatch");
    origins_ = std::move(origins);
}

std::vector<std::uint64_t> sieve_primes(std::uint64_t n) {
    std::vector<std::uint64_t> primes;
    if (n < 2) return primes;
    const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n))) + 1;
    std::vector<bool> small(root + 1, true);
    std::vector<std::uint64_t> base;
    for (std::uint64_t p = 2; p <= root; ++p) {
        if (!small[p]) continue;
        base.push_back(p);
        for (std::uint64_t q = p * p; q <= root; q += p) small[q] = false;
    }
    constexpr std::uint64_t kSegment = 1u << 16;
    std::vector<char> segment(kSegment);
    for (std::uint64_t low = 2; low <= n; low += kSegment) {
        const std::uint64_t high = std::min(n, low + kSegment - 1);
        std::fill(segment.begin(), segment.end(), 1);
        for (std::uint64_t p : base) {
            if (p * p > high) break;
            std::uint64_t start = std::max(p * p, (low + p - 1) / p * p);
            for (std::uint64_t q = start; q <= high; q += p) segment[q - low] = 0;
        }
        for (std::uint64_t v = low; v <= high; ++v) {
            if (segment[v - low]) primes.push_back(v);
        }
    }
    return primes;
}

GroundSet ground_set(const GroundRule& rule, std::uint64_t N, const Budget& budget) {
    if (N < 1) throw PreconditionError("ground-set bound N must be >= 1");
    std::vector<Natural> elements;
    switch (rule.kind) {
        case RuleKind::naturals:
            if (N > budget.max_elements) throw ResourceError("N exceeds the element budget");
            elements.reserve(N);
            for (std::uint64_t n = 1; n <= N; ++n) elements.emplace_back(n);
            break;
        case RuleKind::primes:
            if (N > budget.max_elements) throw ResourceError("N exceeds the sieve memory budget");
            for (auto p : sieve_primes(N)) elements.emplace_back(p);
            break;
        case RuleKind::powers: {
            if (rule.base < 2) throw PreconditionError("powers rule needs base >= 2");
            Natural v = 1;
            while (v <= N) {
                elements.push_back(v);
                v *= rule.base;
            }
            break;
        }
        case RuleKind::polynomial: {
            if (rule.degree < 1) throw PreconditionError("polynomial rule needs degree >= 1");
            for (std::uint64_t n = 1;; ++n) {
                Natural v = boost::multiprecision::pow(Natural(n), rule.degree);
                if (v > N) break;
                elements.push_back(std::move(v));
            }
            break;
        }
        case RuleKind::explicit_list:
            for (const auto& e : rule.explicit_elements) {
                if (e >= 1 && e <= N) elements.push_back(e);
            }
            break;
        case RuleKind::constructed:
            throw PreconditionError("constructed ground sets come from construct(), not a rule");
    }
    GroundSet set = GroundSet::from_elements(rule, std::move(elements));
    set.bound_ = N;
    return set;
}

// ---------------------------------------------------------------------------
// DirectionCloud

class CloudBuilder {
public:
    template <typename Int>
    static DirectionCloud make(std::size_t k, bool distinct, bool sampled, std::uint64_t examined,
                               const GroundSet& source, std::vector<Int> rows) {
        DirectionCloud cloud(k, distinct);
        cloud.sampled_ = sampled;
        cloud.tuples_examined_ = examined;
        cloud.source_rule_ = source.rule().describe();
        cloud.source_bound_ = source.bound();
        cloud.rows_ = std::move(rows);
        return cloud;
    }
};

DirectionCloud::DirectionCloud(std::size_t k, bool distinct_entries_only)
    : k_(k), distinct_(distinct_entries_only), rows_(std::vector<std::uint64_t>{}) {}

std::size_t DirectionCloud::size() const {
    if (k_ == 0) return 0;
    return std::visit([&](const auto& rows) { return rows.size() / k_; }, rows_);
}

PrimitiveDirection DirectionCloud::primitive_at(std::size_t i) const {
    return std::visit(
        [&](const auto& rows) {
            std::vector<Natural> entries(rows.begin() + static_cast<std::ptrdiff_t>(i * k_),
                                         rows.begin() + static_cast<std::ptrdiff_t>((i + 1) * k_));
            return primitive(std::span<const Natural>(entries));
        },
        rows_);
}

UnitVector DirectionCloud::unit_at(std::size_t i) const {
    const auto flat = std::visit(
        [&](const auto& rows) {
            std::vector<double> v;
            for (std::size_t j = 0; j < k_; ++j) v.push_back(static_cast<double>(rows[i * k_ + j]));
            return v;
        },
        rows_);
    return rho(std::span<const double>(flat));
}

std::vector<double> DirectionCloud::flat_units() const {
    std::vector<double> out;
    out.reserve(size() * k_);
    std::visit(
        [&](const auto& rows) {
            using Int = typename std::decay_t<decltype(rows)>::value_type;
            if constexpr (std::is_same_v<Int, std::uint64_t>) {
                for (std::size_t r = 0; r < size(); ++r) {
                    double sum = 0;
                    for (std::size_t j = 0; j < k_; ++j) {
                        const double v = static_cast<double>(rows[r * k_ + j]);
                        sum += v * v;
                    }
                    const double n = std::sqrt(sum);
                    for (std::size_t j = 0; j < k_; ++j) out.push_back(static_cast<double>(rows[r * k_ + j]) / n);
                }
            } else {
                for (std::size_t r = 0; r < size(); ++r) {
                    std::vector<Natural> row(rows.begin() + static_cast<std::ptrdiff_t>(r * k_),
                                             rows.begin() + static_cast<std::ptrdiff_t>((r + 1) * k_));
                    const auto u = rho(std::span<const Natural>(row));
                    out.insert(out.end(), u.coords().begin(), u.coords().end());
                }
            }
        },
        rows_);
    return out;
}

bool DirectionCloud::contains(const PrimitiveDirection& d) const {
    if (d.dim() != k_) return false;
    return std::visit(
        [&](const auto& rows) {
            using Int = typename std::decay_t<decltype(rows)>::value_type;
            std::vector<Int> key;
            for (const auto& e : d.entries()) {
                if constexpr (std::is_same_v<Int, std::uint64_t>) {
                    if (e > kU64Max) return false;
                    key.push_back(static_cast<std::uint64_t>(e));
                } else {
                    key.push_back(e);
                }
            }
            std::size_t lo = 0;
            std::size_t hi = size();
            while (lo < hi) {
                const std::size_t mid = (lo + hi) / 2;
                if (row_less(&rows[mid * k_], key.data(), k_)) {
                    lo = mid + 1;
                } else {
                    hi = mid;
                }
            }
            return lo < size() && row_equal(&rows[lo * k_], key.data(), k_);
        },
        rows_);
}

std::vector<PrimitiveDirection> DirectionCloud::to_vector() const {
    std::vector<PrimitiveDirection> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(primitive_at(i));
    return out;
}

bool DirectionCloud::operator==(const DirectionCloud& other) const {
    return k_ == other.k_ && to_vector() == other.to_vector();
}

// ---------------------------------------------------------------------------
// Enumeration

std::uint64_t tuple_count(std::uint64_t n, std::size_t k, bool distinct_entries_only) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < k; ++i) {
        const std::uint64_t factor = distinct_entries_only ? (n > i ? n - i : 0) : n;
        if (factor == 0) return 0;
        if (count > kU64Max / factor) return kU64Max;
        count *= factor;
    }
    return count;
}

DirectionCloud directions(const GroundSet& A, std::size_t k, bool distinct_entries_only,
                          const EnumerationOptions& options) {
    if (k < 2) throw PreconditionError("directions need k >= 2");
    if (A.empty()) throw PreconditionError("ground set is empty");
    if (distinct_entries_only && A.size() < k) {
        throw PreconditionError("distinct-entry tuples need |A| >= k");
    }
    const std::uint64_t count = tuple_count(A.size(), k, distinct_entries_only);
    const bool sample = count > options.budget.max_tuples;
    if (sample && !options.allow_sampling) {
        throw ResourceError("tuple count " + std::to_string(count) + " exceeds the budget of " +
                            std::to_string(options.budget.max_tuples) +
                            "; rerun in sampling mode or raise DIRECTIONS_BUDGET");
    }
    if (sample && options.sample_size > options.budget.max_tuples) {
        throw ResourceError("sample size exceeds the tuple budget");
    }

    if (A.fits_u64()) {
        auto rows = sample ? enumerate_sampled(A.words(), k, distinct_entries_only, options.sample_size, options.seed)
                           : enumerate_all(A.words(), k, distinct_entries_only, options.workers);
        return CloudBuilder::make(k, distinct_entries_only, sample, sample ? options.sample_size : count, A,
                                  std::move(rows));
    }
    auto rows = sample ? enumerate_sampled(A.elements(), k, distinct_entries_only, options.sample_size, options.seed)
                       : enumerate_all(A.elements(), k, distinct_entries_only, options.workers);
    return CloudBuilder::make(k, distinct_entries_only, sample, sample ? options.sample_size : count, A,
                              std::move(rows));
}

DirectionCloud accumulation_candidates(const GroundSet& A, std::size_t k, const Natural& L,
                                       const EnumerationOptions& options) {
    if (k < 2) throw PreconditionError("directions need k >= 2");
    if (L < 1) throw PreconditionError("tail threshold L must be positive");
    const GroundSet tail = A.tail(L);
    if (tail.size() < k) {
        auto cloud = CloudBuilder::make(k, true, false, 0, A, std::vector<std::uint64_t>{});
        return cloud;
    }
    return directions(tail, k, true, options);
}

}  // namespace directions
