#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace directions {

/// Static k-d tree over a flat row-major point array, exact Euclidean
/// nearest-neighbor queries.
class KdTree {
public:
    KdTree(std::vector<double> points, std::size_t dim);

    struct Hit {
        std::size_t index;
        double distance;
    };

    /// Nearest stored point to `query`; the tree must be nonempty.
    Hit nearest(std::span<const double> query) const;

    std::size_t size() const { return dim_ ? points_.size() / dim_ : 0; }
    std::size_t dim() const { return dim_; }
    std::span<const double> point(std::size_t i) const { return {&points_[i * dim_], dim_}; }

private:
    struct Node {
        std::size_t begin, end;     // range in order_
        std::size_t axis;
        double split;
        int left = -1, right = -1;  // children, -1 for leaves
    };

    int build(std::size_t begin, std::size_t end);
    void search(int node, std::span<const double> query, Hit& best, double& best_sq) const;

    std::vector<double> points_;
    std::size_t dim_;
    std::vector<std::size_t> order_;
    std::vector<Node> nodes_;
};

}  // namespace directions
