/** Jones projections, generated subalgebras and conditional expectations
 *  in the string algebra. */

#pragma once

#include "forkedtl/multimatrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>
#include <vector>

namespace forkedtl {

inline constexpr double subalgebra_rank_tolerance = 1e-10;
inline constexpr int default_subalgebra_cap = 4096;

/// e_i at `level` (default i+1). Nonzero entries join paths that agree away
/// from vertex i and make a round trip v→w→v there; the entry is
/// √(μ(w)μ(w′)) / (β μ(v)).
inline RealMultiMatrix jones_projection_matrix(const Tower& t, int i, int level = -1) {
    if (level < 0) level = i + 1;
    if (i < 1 || i + 1 > level || level > t.depth())
        throw std::out_of_range("jones_projection_matrix: index " + std::to_string(i) + " out of range");
    auto e = RealMultiMatrix::zero(t, level);
    const auto& lv = t.level(level);
    const double beta = t.beta();
    for (int c = 0; c < t.vertex_count(); ++c) {
        const auto& paths = lv.paths[c];
        std::map<Path, std::vector<int>> groups;
        for (std::size_t a = 0; a < paths.size(); ++a) {
            const Path& p = paths[a];
            if (p[i - 1] != p[i + 1]) continue;
            Path key = p;
            key[i] = -1;
            groups[key].push_back(static_cast<int>(a));
        }
        auto& blk = e.block(c);
        for (const auto& [key, members] : groups) {
            const double mv = t.weight(key[i - 1]);
            for (int a : members)
                for (int b : members)
                    blk(a, b) = std::sqrt(t.weight(paths[a][i]) * t.weight(paths[b][i])) / (beta * mv);
        }
    }
    return e;
}

namespace detail {

/// Flattened coordinates in which the trace inner product is the Euclidean one.
inline Eigen::VectorXd flatten(const RealMultiMatrix& x) {
    Eigen::Index total = 0;
    for (int v = 0; v < x.vertex_count(); ++v) total += x.block(v).size();
    Eigen::VectorXd out(total);
    Eigen::Index at = 0;
    for (int v = 0; v < x.vertex_count(); ++v) {
        const auto& b = x.block(v);
        if (b.size() == 0) continue;
        const double s = std::sqrt(x.tower().trace_weight(x.level(), v));
        out.segment(at, b.size()) = s * Eigen::Map<const Eigen::VectorXd>(b.data(), b.size());
        at += b.size();
    }
    return out;
}

inline RealMultiMatrix unflatten(const Eigen::VectorXd& vec, const Tower& t, int level) {
    auto x = RealMultiMatrix::zero(t, level);
    Eigen::Index at = 0;
    for (int v = 0; v < x.vertex_count(); ++v) {
        auto& b = x.block(v);
        if (b.size() == 0) continue;
        const double s = std::sqrt(t.trace_weight(level, v));
        Eigen::Map<Eigen::VectorXd>(b.data(), b.size()) = vec.segment(at, b.size()) / s;
        at += b.size();
    }
    return x;
}

} // namespace detail

/// Trace-orthonormal basis of a finite-dimensional *-subalgebra.
class SubalgebraBasis {
public:
    SubalgebraBasis() = default;
    SubalgebraBasis(Tower t, int level, std::vector<RealMultiMatrix> elements)
        : tower_(std::move(t)), level_(level), elements_(std::move(elements)) {
        coords_.resize(elements_.empty() ? 0 : detail::flatten(elements_.front()).size(),
                       static_cast<Eigen::Index>(elements_.size()));
        for (std::size_t k = 0; k < elements_.size(); ++k)
            coords_.col(static_cast<Eigen::Index>(k)) = detail::flatten(elements_[k]);
    }

    const std::vector<RealMultiMatrix>& elements() const { return elements_; }
    std::size_t dimension() const { return elements_.size(); }
    const Tower& tower() const { return tower_; }
    int level() const { return level_; }
    const Eigen::MatrixXd& coordinates() const { return coords_; }

    /// max |⟨b_i, b_j⟩ − δ_ij|
    double orthonormality_defect() const {
        if (elements_.empty()) return 0.0;
        Eigen::MatrixXd gram = coords_.transpose() * coords_;
        gram -= Eigen::MatrixXd::Identity(gram.rows(), gram.cols());
        return gram.cwiseAbs().maxCoeff();
    }

private:
    Tower tower_;
    int level_ = 0;
    std::vector<RealMultiMatrix> elements_;
    Eigen::MatrixXd coords_;
};

/// The unital *-algebra generated by `gens` (all at one level of `t`).
/// Words in the generators are explored breadth-first; a word is kept when
/// it is independent of the words kept so far, and only kept words are
/// extended. Candidates are always genuine products of generators, never
/// of orthonormalised vectors, so roundoff does not compound. Throws
/// std::length_error once the dimension would exceed `cap`.
inline SubalgebraBasis generated_subalgebra(const Tower& t, int level, const std::vector<RealMultiMatrix>& gens,
                                            int cap = default_subalgebra_cap) {
    std::vector<RealMultiMatrix> generators;
    for (const auto& g : gens) {
        if (!g.tower().same_as(t) || g.level() != level)
            throw std::invalid_argument("generated_subalgebra: generators must share tower and level");
        generators.push_back(g);
        auto adj = g.adjoint();
        if ((adj - g).max_abs() > 0.0) generators.push_back(std::move(adj));
    }
    std::vector<Eigen::VectorXd> coords;
    std::deque<RealMultiMatrix> pending{RealMultiMatrix::identity(t, level)};
    while (!pending.empty()) {
        RealMultiMatrix word = std::move(pending.front());
        pending.pop_front();
        Eigen::VectorXd v = detail::flatten(word);
        const double before = v.norm();
        if (before == 0.0) continue;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : coords) v -= b.dot(v) * b;
        if (v.norm() <= subalgebra_rank_tolerance * before) continue;
        if (static_cast<int>(coords.size()) >= cap)
            throw std::length_error("generated_subalgebra: dimension exceeds cap " + std::to_string(cap));
        // one more sweep against the new direction's own roundoff
        for (const auto& b : coords) v -= b.dot(v) * b;
        coords.push_back(v / v.norm());
        for (const auto& g : generators) pending.push_back(g * word);
    }
    std::vector<RealMultiMatrix> basis;
    basis.reserve(coords.size());
    for (const auto& c : coords) basis.push_back(detail::unflatten(c, t, level));
    return SubalgebraBasis(t, level, std::move(basis));
}

/// E_B(x) = Σ_b ⟨x, b⟩ b.
inline RealMultiMatrix conditional_expectation(const SubalgebraBasis& basis, const RealMultiMatrix& x,
                                               double eps = 1e-9) {
    if (!x.tower().same_as(basis.tower()) || x.level() != basis.level())
        throw std::invalid_argument("conditional_expectation: element and subalgebra live at different levels");
    if (basis.orthonormality_defect() > eps)
        throw std::invalid_argument("conditional_expectation: basis is not orthonormal");
    if (basis.dimension() == 0) return RealMultiMatrix::zero(basis.tower(), basis.level());
    const Eigen::MatrixXd& q = basis.coordinates();
    Eigen::VectorXd projected = q * (q.transpose() * detail::flatten(x));
    return detail::unflatten(projected, basis.tower(), basis.level());
}

} // namespace forkedtl
