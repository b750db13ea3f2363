#pragma once

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sparsecond/pattern.hpp"
#include "sparsecond/rng.hpp"

namespace sparsecond {

/// Dense row-major n x n matrix of doubles tagged with its sparsity pattern.
/// Entries off the pattern are exactly zero; set() enforces this, so the
/// invariant holds for the lifetime of the object.
class Matrix {
public:
    explicit Matrix(PatternPtr pattern)
        : pattern_(std::move(pattern)),
          n_(pattern_->n()),
          a_(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0.0) {}

    Matrix(PatternPtr pattern, std::vector<double> entries)
        : pattern_(std::move(pattern)), n_(pattern_->n()), a_(std::move(entries)) {
        if (a_.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_))
            throw std::invalid_argument("Matrix: entry buffer size mismatch");
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (a_[idx(i, j)] != 0.0 && !pattern_->contains(i, j))
                    throw std::invalid_argument("Matrix: nonzero entry (" +
                                                std::to_string(i + 1) + "," +
                                                std::to_string(j + 1) + ") off pattern");
    }

    int n() const noexcept { return n_; }

    double operator()(int i, int j) const noexcept { return a_[idx(i, j)]; }

    void set(int i, int j, double v) {
        if (v != 0.0 && !pattern_->contains(i, j))
            throw std::invalid_argument("Matrix::set: position (" + std::to_string(i + 1) +
                                        "," + std::to_string(j + 1) + ") off pattern");
        a_[idx(i, j)] = v;
    }

    const Pattern& pattern() const noexcept { return *pattern_; }
    const PatternPtr& pattern_ptr() const noexcept { return pattern_; }
    const std::vector<double>& data() const noexcept { return a_; }

    double max_abs() const noexcept {
        double m = 0.0;
        for (double v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    /// Infinity norm (maximum absolute row sum).
    double norm_inf() const noexcept {
        double m = 0.0;
        for (int i = 0; i < n_; ++i) {
            double s = 0.0;
            for (int j = 0; j < n_; ++j) s += std::abs(a_[idx(i, j)]);
            m = std::max(m, s);
        }
        return m;
    }

private:
    std::size_t idx(int i, int j) const noexcept {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(j);
    }

    PatternPtr pattern_;
    int n_;
    std::vector<double> a_;
};

/// True when every entry strictly above the diagonal is exactly zero.
inline bool is_lower_triangular(const Matrix& a) noexcept {
    for (int i = 0; i < a.n(); ++i)
        for (int j = i + 1; j < a.n(); ++j)
            if (a(i, j) != 0.0) return false;
    return true;
}

/// True when every entry strictly below the diagonal is exactly zero.
inline bool is_upper_triangular(const Matrix& a) noexcept {
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < i; ++j)
            if (a(i, j) != 0.0) return false;
    return true;
}

/// Fills the support with i.i.d. standard normal draws from `rng`, in
/// row-major support order; off-support entries stay exactly zero.
inline Matrix sample_matrix(const PatternPtr& pattern, CounterRng& rng) {
    Matrix m(pattern);
    for (const auto& [i, j] : pattern->support()) m.set(i, j, rng.next_normal());
    return m;
}

inline Matrix sample_matrix(const PatternPtr& pattern, SeedSpec seed) {
    CounterRng rng(seed);
    return sample_matrix(pattern, rng);
}

/// n i.i.d. standard normal draws continuing `rng`'s stream.
inline std::vector<double> sample_vector(int n, CounterRng& rng) {
    if (n < 1) throw std::invalid_argument("sample_vector: n must be >= 1");
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& x : v) x = rng.next_normal();
    return v;
}

inline std::vector<double> sample_vector(int n, SeedSpec seed) {
    CounterRng rng(seed);
    return sample_vector(n, rng);
}

inline double norm_inf(const std::vector<double>& v) noexcept {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double norm2(const std::vector<double>& v) noexcept {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace sparsecond
