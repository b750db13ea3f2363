#pragma once

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sparsecond {

/// 0-based (row, col) position inside an n x n grid.
using IndexPair = std::pair<int, int>;

namespace detail {

// Kuhn augmenting-path matching of rows against columns; adj[r] lists the
// columns reachable from row r. Returns the maximum matching size.
class BipartiteMatcher {
public:
    explicit BipartiteMatcher(const std::vector<std::vector<int>>& adj)
        : adj_(adj), col_match_(adj.size(), -1), visited_(adj.size(), 0) {}

    int run() {
        int matched = 0;
        for (std::size_t r = 0; r < adj_.size(); ++r) {
            std::fill(visited_.begin(), visited_.end(), 0);
            if (augment(static_cast<int>(r))) ++matched;
        }
        return matched;
    }

private:
    bool augment(int r) {
        for (int c : adj_[static_cast<std::size_t>(r)]) {
            if (visited_[static_cast<std::size_t>(c)]) continue;
            visited_[static_cast<std::size_t>(c)] = 1;
            if (col_match_[static_cast<std::size_t>(c)] < 0 ||
                augment(col_match_[static_cast<std::size_t>(c)])) {
                col_match_[static_cast<std::size_t>(c)] = r;
                return true;
            }
        }
        return false;
    }

    const std::vector<std::vector<int>>& adj_;
    std::vector<int> col_match_;
    std::vector<char> visited_;
};

}  // namespace detail

/// A sparsity support: the set of positions allowed to hold nonzeros in an
/// n x n matrix. Immutable after construction; the structural rank (maximum
/// row-column bipartite matching over the support) is computed eagerly. A
/// pattern admits nonsingular matrices iff structural_rank() == n.
class Pattern {
public:
    Pattern(int n, std::vector<IndexPair> support)
        : Pattern(n, std::move(support), /*known_rank=*/-1) {}

    int n() const noexcept { return n_; }

    /// |S|, the support cardinality.
    int size() const noexcept { return static_cast<int>(support_.size()); }

    /// Sorted row-major list of support positions.
    const std::vector<IndexPair>& support() const noexcept { return support_; }

    int structural_rank() const noexcept { return structural_rank_; }

    bool full_structural_rank() const noexcept { return structural_rank_ == n_; }

    bool contains(int i, int j) const noexcept {
        return mask_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
                     static_cast<std::size_t>(j)] != 0;
    }

private:
    friend Pattern make_pattern_trusted(int, std::vector<IndexPair>, int);

    Pattern(int n, std::vector<IndexPair> support, int known_rank)
        : n_(n), support_(std::move(support)) {
        if (n_ < 1) throw std::invalid_argument("Pattern: n must be >= 1");
        std::sort(support_.begin(), support_.end());
        mask_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0);
        for (const auto& [i, j] : support_) {
            if (i < 0 || i >= n_ || j < 0 || j >= n_)
                throw std::invalid_argument("Pattern: index pair (" + std::to_string(i + 1) +
                                            "," + std::to_string(j + 1) + ") out of range");
            auto& cell = mask_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
                               static_cast<std::size_t>(j)];
            if (cell) throw std::invalid_argument("Pattern: duplicate pair (" +
                                                  std::to_string(i + 1) + "," +
                                                  std::to_string(j + 1) + ")");
            cell = 1;
        }
        structural_rank_ = known_rank >= 0 ? known_rank : compute_structural_rank();
    }

    int compute_structural_rank() const {
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_));
        for (const auto& [i, j] : support_) adj[static_cast<std::size_t>(i)].push_back(j);
        return detail::BipartiteMatcher(adj).run();
    }

    int n_;
    std::vector<IndexPair> support_;
    std::vector<char> mask_;
    int structural_rank_ = 0;
};

using PatternPtr = std::shared_ptr<const Pattern>;

/// Maximum bipartite matching size between rows and columns over the support.
inline int structural_rank(const Pattern& p) noexcept { return p.structural_rank(); }

// Factory back door for shapes whose rank is known by construction.
inline Pattern make_pattern_trusted(int n, std::vector<IndexPair> support, int rank) {
    return Pattern(n, std::move(support), rank);
}

enum class PatternKind { dense, lower_triangular, upper_triangular, tridiagonal, band };

/// Builds one of the named shapes. `band_k` is only read for PatternKind::band
/// and must lie in [0, n-1]; band(0) is diagonal, band(1) tridiagonal.
inline PatternPtr make_pattern(PatternKind kind, int n, int band_k = 0) {
    if (n < 1) throw std::invalid_argument("make_pattern: n must be >= 1");
    std::vector<IndexPair> support;
    switch (kind) {
        case PatternKind::dense:
            support.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) support.emplace_back(i, j);
            break;
        case PatternKind::lower_triangular:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j <= i; ++j) support.emplace_back(i, j);
            break;
        case PatternKind::upper_triangular:
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) support.emplace_back(i, j);
            break;
        case PatternKind::tridiagonal:
            band_k = std::min(1, n - 1);
            [[fallthrough]];
        case PatternKind::band:
            if (band_k < 0 || band_k > n - 1)
                throw std::invalid_argument("make_pattern: band width must be in [0, n-1]");
            for (int i = 0; i < n; ++i)
                for (int j = std::max(0, i - band_k); j <= std::min(n - 1, i + band_k); ++j)
                    support.emplace_back(i, j);
            break;
    }
    // Every shape above contains the diagonal, so the rank is n.
    return std::make_shared<const Pattern>(make_pattern_trusted(n, std::move(support), n));
}

inline PatternPtr share_pattern(Pattern p) {
    return std::make_shared<const Pattern>(std::move(p));
}

}  // namespace sparsecond
