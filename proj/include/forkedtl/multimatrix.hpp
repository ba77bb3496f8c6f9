/** Block-matrix elements of the level-m string algebra. */

#pragma once

#include "forkedtl/tower.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace forkedtl {

namespace detail {
template <class S> inline double real_part(const S& s) { return std::real(s); }
} // namespace detail

/// Element of rA_m r: one square block per vertex v, indexed by the level-m
/// paths ending at v.
template <class Scalar>
class MultiMatrix {
public:
    using Block = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    MultiMatrix() = default;

    static MultiMatrix zero(const Tower& t, int level) {
        MultiMatrix x;
        x.tower_ = t;
        x.level_ = level;
        const auto& lv = t.level(level);
        x.blocks_.reserve(t.vertex_count());
        for (int v = 0; v < t.vertex_count(); ++v) {
            auto n = static_cast<Eigen::Index>(lv.block_size(v));
            x.blocks_.push_back(Block::Zero(n, n));
        }
        return x;
    }

    static MultiMatrix identity(const Tower& t, int level) {
        MultiMatrix x = zero(t, level);
        for (auto& b : x.blocks_) b.setIdentity();
        return x;
    }

    const Tower& tower() const { return tower_; }
    int level() const { return level_; }
    int vertex_count() const { return static_cast<int>(blocks_.size()); }
    const Block& block(int v) const { return blocks_.at(v); }
    Block& block(int v) { return blocks_.at(v); }

    bool compatible(const MultiMatrix& o) const { return tower_.same_as(o.tower_) && level_ == o.level_; }

    MultiMatrix& operator+=(const MultiMatrix& o) {
        check(o);
        for (std::size_t v = 0; v < blocks_.size(); ++v) blocks_[v] += o.blocks_[v];
        return *this;
    }
    MultiMatrix& operator-=(const MultiMatrix& o) {
        check(o);
        for (std::size_t v = 0; v < blocks_.size(); ++v) blocks_[v] -= o.blocks_[v];
        return *this;
    }
    MultiMatrix& operator*=(const Scalar& s) {
        for (auto& b : blocks_) b *= s;
        return *this;
    }
    friend MultiMatrix operator+(MultiMatrix a, const MultiMatrix& b) { return a += b; }
    friend MultiMatrix operator-(MultiMatrix a, const MultiMatrix& b) { return a -= b; }
    friend MultiMatrix operator*(const Scalar& s, MultiMatrix a) { return a *= s; }
    friend MultiMatrix operator*(const MultiMatrix& a, const MultiMatrix& b) {
        a.check(b);
        MultiMatrix out = a;
        for (std::size_t v = 0; v < a.blocks_.size(); ++v) out.blocks_[v].noalias() = a.blocks_[v] * b.blocks_[v];
        return out;
    }

    /// x + s·1
    MultiMatrix plus_scalar(const Scalar& s) const {
        MultiMatrix out = *this;
        for (auto& b : out.blocks_) b.diagonal().array() += s;
        return out;
    }

    MultiMatrix adjoint() const {
        MultiMatrix out = *this;
        for (auto& b : out.blocks_) b = b.adjoint().eval();
        return out;
    }

    /// Largest absolute entry over all blocks.
    double max_abs() const {
        double m = 0.0;
        for (const auto& b : blocks_)
            if (b.size() > 0) m = std::max(m, b.cwiseAbs().maxCoeff());
        return m;
    }

    template <class Other>
    MultiMatrix<Other> cast() const {
        MultiMatrix<Other> out = MultiMatrix<Other>::zero(tower_, level_);
        for (int v = 0; v < vertex_count(); ++v) out.block(v) = blocks_[v].template cast<Other>();
        return out;
    }

private:
    void check(const MultiMatrix& o) const {
        if (!compatible(o)) throw std::invalid_argument("MultiMatrix operands live in different algebras");
    }

    Tower tower_;
    int level_ = 0;
    std::vector<Block> blocks_;
};

using RealMultiMatrix = MultiMatrix<double>;
using ComplexMultiMatrix = MultiMatrix<std::complex<double>>;

/// tr(x) = Σ_v Σ_{ξ→v} x_ξξ · μ(v)/(β^m μ(star)); tr(1) = 1.
template <class Scalar>
Scalar markov_trace(const MultiMatrix<Scalar>& x) {
    Scalar s(0);
    for (int v = 0; v < x.vertex_count(); ++v)
        if (x.block(v).size() > 0) s += x.block(v).trace() * x.tower().trace_weight(x.level(), v);
    return s;
}

/// ⟨x, y⟩ = tr(y* x)
template <class Scalar>
Scalar trace_inner(const MultiMatrix<Scalar>& x, const MultiMatrix<Scalar>& y) {
    if (!x.compatible(y)) throw std::invalid_argument("trace_inner: operands live in different algebras");
    Scalar s(0);
    for (int v = 0; v < x.vertex_count(); ++v)
        if (x.block(v).size() > 0)
            s += (y.block(v).adjoint() * x.block(v)).trace() * x.tower().trace_weight(x.level(), v);
    return s;
}

template <class Scalar>
double trace_norm2(const MultiMatrix<Scalar>& x) {
    return std::sqrt(std::max(0.0, detail::real_part(trace_inner(x, x))));
}

/// Operator norm: largest singular value over the blocks.
template <class Scalar>
double operator_norm(const MultiMatrix<Scalar>& x) {
    double m = 0.0;
    for (int v = 0; v < x.vertex_count(); ++v) {
        const auto& b = x.block(v);
        if (b.size() == 0) continue;
        Eigen::JacobiSVD<typename MultiMatrix<Scalar>::Block> svd(b);
        m = std::max(m, svd.singularValues()(0));
    }
    return m;
}

/// Bratteli inclusion E_{ξ,η} ↦ Σ_c E_{ξc,ηc}, iterated up to `target`.
template <class Scalar>
MultiMatrix<Scalar> embed(const MultiMatrix<Scalar>& x, int target) {
    const Tower& t = x.tower();
    if (target < x.level()) throw std::invalid_argument("embed: target below current level");
    if (target > t.depth()) throw std::out_of_range("embed: target beyond tower depth");
    MultiMatrix<Scalar> cur = x;
    for (int m = x.level(); m < target; ++m) {
        auto next = MultiMatrix<Scalar>::zero(t, m + 1);
        const auto& lv = t.level(m + 1);
        for (int c = 0; c < t.vertex_count(); ++c) {
            const auto& par = lv.parents[c];
            auto& out = next.block(c);
            for (std::size_t i = 0; i < par.size(); ++i)
                for (std::size_t j = 0; j < par.size(); ++j)
                    if (par[i].vertex == par[j].vertex)
                        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                            cur.block(par[i].vertex)(par[i].index, par[j].index);
        }
        cur = std::move(next);
    }
    return cur;
}

/// Diagonal projection onto the level-m paths accepted by `pred`.
template <class Pred>
RealMultiMatrix path_projection(const Tower& t, int level, Pred&& pred) {
    auto x = RealMultiMatrix::zero(t, level);
    const auto& lv = t.level(level);
    for (int v = 0; v < t.vertex_count(); ++v)
        for (std::size_t i = 0; i < lv.paths[v].size(); ++i)
            if (pred(lv.paths[v][i])) x.block(v)(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
    return x;
}

} // namespace forkedtl
