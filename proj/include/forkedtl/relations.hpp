/** Temperley-Lieb relation suite over concrete block-matrix realisations. */

#pragma once

#include "forkedtl/path_algebra.hpp"
#include "forkedtl/verification.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace forkedtl {

inline constexpr int default_markov_word_length = 4;

namespace detail {

// Calls f(word_product) for every non-empty word of length <= max_len over
// `letters`, building products incrementally.
template <class F>
void for_each_word(const std::vector<RealMultiMatrix>& letters, int max_len, F&& f) {
    if (letters.empty() || max_len <= 0) return;
    auto rec = [&](auto&& self, const RealMultiMatrix& prefix, int len) -> void {
        for (const auto& l : letters) {
            RealMultiMatrix w = prefix * l;
            f(w);
            if (len + 1 < max_len) self(self, w, len + 1);
        }
    };
    rec(rec, RealMultiMatrix::identity(letters.front().tower(), letters.front().level()), 0);
}

} // namespace detail

/// max over words w of length <= max_len over `letters` (plus w = 1) of
/// |tr(e·w) − τ·tr(w)|.
inline double markov_defect(const RealMultiMatrix& e, const std::vector<RealMultiMatrix>& letters, double tau,
                            int max_len = default_markov_word_length) {
    double worst = std::abs(markov_trace(e) - tau);
    detail::for_each_word(letters, max_len, [&](const RealMultiMatrix& w) {
        worst = std::max(worst, std::abs(markov_trace(e * w) - tau * markov_trace(w)));
    });
    return worst;
}

/// Relations of a Temperley-Lieb sequence s_0, s_1, ...: projections,
/// s_i s_{i±1} s_i = τ s_i, far commutation, and the Markov property
/// tr(s_i w) = τ tr(w) for words w in s_0..s_{i−1}. `names[i]` labels s_i.
inline VerificationReport tl_relation_checks(const std::string& label, const std::vector<RealMultiMatrix>& seq,
                                             const std::vector<std::string>& names, double tau, double tol,
                                             int markov_len = default_markov_word_length) {
    VerificationReport r;
    const std::string pre = label.empty() ? "" : label + ": ";
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const auto& e = seq[i];
        r.add(pre + names[i] + "^2 = " + names[i], (e * e - e).max_abs(), tol);
        r.add(pre + names[i] + "* = " + names[i], (e.adjoint() - e).max_abs(), tol);
    }
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = 0; j < seq.size(); ++j) {
            if (i == j) continue;
            const auto& a = seq[i];
            const auto& b = seq[j];
            const std::size_t gap = i > j ? i - j : j - i;
            if (gap == 1) {
                r.add(pre + names[i] + " " + names[j] + " " + names[i] + " = tau " + names[i],
                      (a * b * a - tau * a).max_abs(), tol);
            } else if (i < j) {
                r.add(pre + names[i] + " " + names[j] + " = " + names[j] + " " + names[i], (a * b - b * a).max_abs(),
                      tol);
            }
        }
    for (std::size_t i = 0; i < seq.size(); ++i) {
        std::vector<RealMultiMatrix> earlier(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(i));
        r.add(pre + "tr(" + names[i] + " w) = tau tr(w), w over earlier letters, |w| <= " + std::to_string(markov_len),
              markov_defect(seq[i], earlier, tau, markov_len), tol);
    }
    return r;
}

inline std::vector<RealMultiMatrix> jones_sequence(const Tower& t, int level) {
    std::vector<RealMultiMatrix> out;
    for (int i = 1; i < level; ++i) out.push_back(jones_projection_matrix(t, i, level));
    return out;
}

inline std::vector<std::string> indexed_names(const std::string& stem, int first, int count) {
    std::vector<std::string> out;
    for (int i = 0; i < count; ++i) out.push_back(stem + std::to_string(first + i));
    return out;
}

namespace detail {
inline RealMultiMatrix random_element(const Tower& t, int level, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    auto x = RealMultiMatrix::zero(t, level);
    for (int v = 0; v < x.vertex_count(); ++v)
        for (Eigen::Index a = 0; a < x.block(v).rows(); ++a)
            for (Eigen::Index b = 0; b < x.block(v).cols(); ++b) x.block(v)(a, b) = dist(rng);
    return x;
}
} // namespace detail

/// Path-model Jones projections e_1..e_{depth−1} at level `depth`, plus
/// sampled checks that the level inclusions are unital, multiplicative,
/// *-preserving and trace-preserving.
inline VerificationReport verify_tl(const Tower& t, int depth, double tol, unsigned long long seed = 1) {
    if (depth < 1 || depth > t.depth()) throw std::out_of_range("verify_tl: depth beyond tower");
    VerificationReport r({t.graph().name, t.tau(), depth});
    const auto seq = jones_sequence(t, depth);
    r.append(tl_relation_checks("", seq, indexed_names("e", 1, static_cast<int>(seq.size())), t.tau(), tol));
    std::mt19937_64 rng(seed);
    for (int m = 0; m < depth; ++m) {
        const std::string lv = std::to_string(m) + "->" + std::to_string(m + 1);
        r.add("embed " + lv + ": unital",
              (embed(RealMultiMatrix::identity(t, m), m + 1) - RealMultiMatrix::identity(t, m + 1)).max_abs(), tol);
        auto x = detail::random_element(t, m, rng);
        auto y = detail::random_element(t, m, rng);
        r.add("embed " + lv + ": multiplicative", (embed(x * y, m + 1) - embed(x, m + 1) * embed(y, m + 1)).max_abs(),
              tol);
        r.add("embed " + lv + ": adjoint", (embed(x.adjoint(), m + 1) - embed(x, m + 1).adjoint()).max_abs(), tol);
        r.add("embed " + lv + ": trace", std::abs(markov_trace(embed(x, m + 1)) - markov_trace(x)), tol);
    }
    return r;
}

} // namespace forkedtl
