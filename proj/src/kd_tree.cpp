#include "directions/kd_tree.hpp"

#include "directions/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace directions {

namespace {
constexpr std::size_t kLeafSize = 16;
}

KdTree::KdTree(std::vector<double> points, std::size_t dim) : points_(std::move(points)), dim_(dim) {
    if (dim_ == 0 || points_.size() % dim_ != 0) throw PreconditionError("malformed point array");
    order_.resize(size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    if (!order_.empty()) build(0, order_.size());
}

int KdTree::build(std::size_t begin, std::size_t end) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back({begin, end, 0, 0.0});
    if (end - begin <= kLeafSize) return id;

    // Split on the axis of largest spread at the median.
    std::size_t axis = 0;
    double widest = -1.0;
    for (std::size_t a = 0; a < dim_; ++a) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::size_t i = begin; i < end; ++i) {
            const double v = points_[order_[i] * dim_ + a];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (hi - lo > widest) {
            widest = hi - lo;
            axis = a;
        }
    }
    const std::size_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                     order_.begin() + static_cast<std::ptrdiff_t>(mid),
                     order_.begin() + static_cast<std::ptrdiff_t>(end), [&](std::size_t a, std::size_t b) {
                         return points_[a * dim_ + axis] < points_[b * dim_ + axis];
                     });
    const double split = points_[order_[mid] * dim_ + axis];
    const int left = build(begin, mid);
    const int right = build(mid, end);
    nodes_[id].axis = axis;
    nodes_[id].split = split;
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
}

void KdTree::search(int node_id, std::span<const double> query, Hit& best, double& best_sq) const {
    const Node& node = nodes_[static_cast<std::size_t>(node_id)];
    if (node.left < 0) {
        for (std::size_t i = node.begin; i < node.end; ++i) {
            const std::size_t idx = order_[i];
            double sq = 0.0;
            for (std::size_t a = 0; a < dim_; ++a) {
                const double d = points_[idx * dim_ + a] - query[a];
                sq += d * d;
            }
            // Ties go to the smaller index so results do not depend on layout.
            if (sq < best_sq || (sq == best_sq && idx < best.index)) {
                best_sq = sq;
                best.index = idx;
            }
        }
        return;
    }
    const double diff = query[node.axis] - node.split;
    const int near = diff < 0 ? node.left : node.right;
    const int far = diff < 0 ? node.right : node.left;
    search(near, query, best, best_sq);
    if (diff * diff <= best_sq) search(far, query, best, best_sq);
}

KdTree::Hit KdTree::nearest(std::span<const double> query) const {
    if (order_.empty()) throw DomainError("nearest neighbor in an empty tree");
    if (query.size() != dim_) throw PreconditionError("query dimension mismatch");
    Hit best{std::numeric_limits<std::size_t>::max(), 0.0};
    double best_sq = std::numeric_limits<double>::infinity();
    search(0, query, best, best_sq);
    best.distance = std::sqrt(best_sq);
    return best;
}

}  // namespace directions
