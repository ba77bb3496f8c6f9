/** Fork projections at the trivalent vertex of D_n and the forked
 *  Temperley-Lieb / Evans-Gould relation suites. */

#pragma once

#include "forkedtl/relations.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace forkedtl {

struct ForkedSystem {
    Tower tower;
    int level = 0; // working level
    RealMultiMatrix p, q;
    std::vector<RealMultiMatrix> jones; // e_1..e_{level−1} at `level`
    double tau = 0.0;

    /// The same system with the fork tips exchanged.
    ForkedSystem swapped() const {
        ForkedSystem s = *this;
        std::swap(s.p, s.q);
        return s;
    }
};

/// Diagonal projections onto the paths whose first step goes to f1 (p) or
/// f2 (q), built at level 1 and embedded to `level` (default depth − 1).
inline std::pair<RealMultiMatrix, RealMultiMatrix> fork_projections(const Tower& t, int level = -1) {
    const auto& g = t.graph();
    if (!is_d_at_trivalent(g)) throw std::invalid_argument("fork_projections: tower is not D_n at the trivalent vertex");
    if (t.depth() < 2) throw std::invalid_argument("fork_projections: tower depth must be >= 2");
    if (level < 0) level = t.depth() - 1;
    if (level < 1 || level > t.depth()) throw std::out_of_range("fork_projections: level out of range");
    const int f1 = g.index_of("f1");
    const int f2 = g.index_of("f2");
    auto p = path_projection(t, 1, [f1](const Path& ph) { return ph[1] == f1; });
    auto q = path_projection(t, 1, [f2](const Path& ph) { return ph[1] == f2; });
    return {embed(p, level), embed(q, level)};
}

inline ForkedSystem make_forked_system(const Tower& t, int level = -1) {
    if (level < 0) level = t.depth() - 1;
    auto [p, q] = fork_projections(t, level);
    ForkedSystem fs;
    fs.tower = t;
    fs.level = level;
    fs.p = std::move(p);
    fs.q = std::move(q);
    fs.jones = jones_sequence(t, level);
    fs.tau = t.tau();
    return fs;
}

/// D_n at the trivalent vertex, tower of the given depth, working level depth − 1.
inline ForkedSystem dn_forked_system(int n, int depth) {
    return make_forked_system(build_tower(build_graph("D" + std::to_string(n), "trivalent"), depth));
}

namespace detail {
// The system's operands raised to `level`.
struct RaisedSystem {
    RealMultiMatrix p, q;
    std::vector<RealMultiMatrix> jones;
};

inline RaisedSystem raise(const ForkedSystem& fs, int level) {
    if (level < fs.level || level > fs.tower.depth())
        throw std::out_of_range("forked system cannot be evaluated at level " + std::to_string(level));
    RaisedSystem r{embed(fs.p, level), embed(fs.q, level), {}};
    for (const auto& e : fs.jones) r.jones.push_back(embed(e, level));
    for (int i = static_cast<int>(fs.jones.size()) + 1; i < level; ++i)
        r.jones.push_back(jones_projection_matrix(fs.tower, i, level));
    return r;
}
} // namespace detail

/// Forked Temperley-Lieb axioms at level `depth`: pq = 0, the sequences
/// (p, e_1, ..., e_{depth−1}) and (q, e_1, ...) are Temperley-Lieb with p
/// (resp. q) as e_0, and tr(p w) = τ tr(w) = tr(q w) for words w over the e_i.
inline VerificationReport verify_forked(const ForkedSystem& fs, int depth, double tol,
                                        int markov_len = default_markov_word_length) {
    const auto s = detail::raise(fs, depth);
    VerificationReport r({fs.tower.graph().name, fs.tau, depth});
    r.add("orthogonality: p q = 0", (s.p * s.q).max_abs(), tol);
    r.add("orthogonality: tr(p q) = 0", std::abs(markov_trace(s.p * s.q)), tol);
    r.add("trace: tr(p) = tau", std::abs(markov_trace(s.p) - fs.tau), tol);
    r.add("trace: tr(q) = tau", std::abs(markov_trace(s.q) - fs.tau), tol);

    const int count = static_cast<int>(s.jones.size());
    auto p_names = indexed_names("e", 1, count);
    p_names.insert(p_names.begin(), "p");
    auto q_names = indexed_names("e", 1, count);
    q_names.insert(q_names.begin(), "q");
    std::vector<RealMultiMatrix> p_seq{s.p}, q_seq{s.q};
    p_seq.insert(p_seq.end(), s.jones.begin(), s.jones.end());
    q_seq.insert(q_seq.end(), s.jones.begin(), s.jones.end());
    r.append(tl_relation_checks("p-sequence", p_seq, p_names, fs.tau, tol, markov_len));
    r.append(tl_relation_checks("q-sequence", q_seq, q_names, fs.tau, tol, markov_len));
    r.add("markov: tr(p w) = tau tr(w), w over e_1.., |w| <= " + std::to_string(markov_len),
          markov_defect(s.p, s.jones, fs.tau, markov_len), tol);
    r.add("markov: tr(q w) = tau tr(w), w over e_1.., |w| <= " + std::to_string(markov_len),
          markov_defect(s.q, s.jones, fs.tau, markov_len), tol);
    return r;
}

/// Evans-Gould relations for k = 2. Their generators f_1, f_2, ... and the
/// extra projection f_2' are read as f_1 = p, f_{j+1} = e_j, f_2' = q:
/// (i) q commutes with p and with e_j for j >= 2; (ii) q e_1 q = τ q and
/// e_1 q e_1 = τ(1 − join) e_1, where the join of f_1..f_{k−2} is empty at
/// k = 2; (iii) q p = 0.
inline VerificationReport verify_evans_gould(const ForkedSystem& fs, double tol) {
    const int level = fs.level;
    const auto s = detail::raise(fs, level);
    VerificationReport r({fs.tower.graph().name, fs.tau, level});
    const int count = static_cast<int>(s.jones.size());

    auto tl_names = indexed_names("e", 1, count);
    tl_names.insert(tl_names.begin(), "p");
    std::vector<RealMultiMatrix> tl_seq{s.p};
    tl_seq.insert(tl_seq.end(), s.jones.begin(), s.jones.end());
    r.append(tl_relation_checks("TL sequence (p, e_1, ...)", tl_seq, tl_names, fs.tau, tol));

    r.add("(i) q p = p q", (s.q * s.p - s.p * s.q).max_abs(), tol);
    for (int j = 2; j <= count; ++j) {
        const auto& e = s.jones[j - 1];
        r.add("(i) q e" + std::to_string(j) + " = e" + std::to_string(j) + " q", (s.q * e - e * s.q).max_abs(), tol);
    }
    if (count >= 1) {
        const auto& e1 = s.jones[0];
        r.add("(ii) q e1 q = tau q", (s.q * e1 * s.q - fs.tau * s.q).max_abs(), tol);
        r.add("(ii) join e_1 v ... v e_{k-2}: vacuous at k=2", 0.0, tol);
        r.add("(ii) e1 q e1 = tau (1 - join) e1 = tau e1", (e1 * s.q * e1 - fs.tau * e1).max_abs(), tol);
    }
    r.add("(iii) q p = 0", (s.q * s.p).max_abs(), tol);
    r.add("projection: q^2 = q", (s.q * s.q - s.q).max_abs(), tol);
    r.add("projection: q* = q", (s.q.adjoint() - s.q).max_abs(), tol);
    r.add("trace: tr(q) = tau", std::abs(markov_trace(s.q) - fs.tau), tol);
    return r;
}

} // namespace forkedtl
