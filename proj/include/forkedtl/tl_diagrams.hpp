/** Diagrammatic Temperley-Lieb algebra TL_n(δ). */

#pragma once

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace forkedtl {

inline constexpr int max_diagram_strands = 12;

/// A planar pairing of 2n boundary points. Points 0..n-1 run along the
/// bottom left to right, points n..2n-1 along the top left to right.
class TLDiagram {
public:
    TLDiagram() = default;

    explicit TLDiagram(std::vector<int> pairing) : pairing_(std::move(pairing)) {
        if (pairing_.size() % 2 != 0) throw std::invalid_argument("pairing must have even length");
        const int m = static_cast<int>(pairing_.size());
        for (int a = 0; a < m; ++a) {
            int b = pairing_[a];
            if (b < 0 || b >= m || b == a || pairing_[b] != a)
                throw std::invalid_argument("pairing is not a fixed-point-free involution");
        }
        if (!planar()) throw std::invalid_argument("pairing is not planar");
    }

    static TLDiagram identity(int n) {
        std::vector<int> p(2 * n);
        for (int i = 0; i < n; ++i) {
            p[i] = n + i;
            p[n + i] = i;
        }
        return TLDiagram(std::move(p));
    }

    /// Cup-cap at strands i, i+1 (1-based), through-strands elsewhere.
    static TLDiagram cup_cap(int i, int n) {
        if (i < 1 || i > n - 1) throw std::out_of_range("cup_cap: index out of range");
        TLDiagram d = identity(n);
        auto& p = d.pairing_;
        int b = i - 1;
        p[b] = b + 1;
        p[b + 1] = b;
        p[n + b] = n + b + 1;
        p[n + b + 1] = n + b;
        return d;
    }

    int strands() const { return static_cast<int>(pairing_.size() / 2); }
    const std::vector<int>& pairing() const { return pairing_; }
    int partner(int point) const { return pairing_[point]; }

    /// Position of a boundary point when walking the boundary circle:
    /// bottom left to right, then top right to left.
    int circular_position(int point) const {
        const int n = strands();
        return point < n ? point : 3 * n - 1 - point;
    }

    int through_strands() const {
        const int n = strands();
        int count = 0;
        for (int i = 0; i < n; ++i)
            if (pairing_[i] >= n) ++count;
        return count;
    }

    /// Top-bottom mirror image; the adjoint of a basis diagram.
    TLDiagram reversed() const {
        const int n = strands();
        std::vector<int> p(2 * n);
        auto flip = [n](int x) { return x < n ? x + n : x - n; };
        for (int a = 0; a < 2 * n; ++a) p[flip(a)] = flip(pairing_[a]);
        return TLDiagram(std::move(p));
    }

    /// Bracket word along the boundary circle: '(' opens a pair, ')' closes it.
    std::string brackets() const {
        const int m = static_cast<int>(pairing_.size());
        std::string out(m, '?');
        for (int a = 0; a < m; ++a) {
            int ca = circular_position(a), cb = circular_position(pairing_[a]);
            out[ca] = ca < cb ? '(' : ')';
        }
        return out;
    }

    auto operator<=>(const TLDiagram&) const = default;

private:
    bool planar() const {
        const int m = static_cast<int>(pairing_.size());
        for (int a = 0; a < m; ++a) {
            int x1 = circular_position(a), y1 = circular_position(pairing_[a]);
            if (x1 > y1) std::swap(x1, y1);
            for (int b = 0; b < m; ++b) {
                int x2 = circular_position(b), y2 = circular_position(pairing_[b]);
                if (x2 > y2) std::swap(x2, y2);
                if (x1 < x2 && x2 < y1 && y1 < y2) return false;
            }
        }
        return true;
    }

    std::vector<int> pairing_;
};

/// Stacks `upper` on top of `lower`. Returns the resulting diagram and the
/// number of closed loops, found by union-find over the 4n strand endpoints.
inline std::pair<TLDiagram, int> compose(const TLDiagram& lower, const TLDiagram& upper) {
    const int n = lower.strands();
    if (upper.strands() != n) throw std::invalid_argument("compose: strand-count mismatch");
    std::vector<int> parent(4 * n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    for (int a = 0; a < 2 * n; ++a) {
        unite(a, lower.partner(a));
        unite(2 * n + a, 2 * n + upper.partner(a));
    }
    for (int j = 0; j < n; ++j) unite(n + j, 2 * n + j); // lower top j == upper bottom j

    // outer boundary: lower bottom (0..n-1) and upper top (3n..4n-1)
    auto outer_label = [n](int node) { return node < n ? node : node - 2 * n; };
    std::vector<int> first(4 * n, -1);
    std::vector<int> result(2 * n, -1);
    std::vector<bool> touches_outer(4 * n, false);
    auto visit = [&](int node) {
        int root = find(node);
        touches_outer[root] = true;
        if (first[root] < 0) {
            first[root] = outer_label(node);
        } else {
            result[first[root]] = outer_label(node);
            result[outer_label(node)] = first[root];
        }
    };
    for (int i = 0; i < n; ++i) visit(i);
    for (int i = 3 * n; i < 4 * n; ++i) visit(i);
    int loops = 0;
    for (int x = 0; x < 4 * n; ++x)
        if (find(x) == x && !touches_outer[x]) ++loops;
    return {TLDiagram(std::move(result)), loops};
}

/// Closed loops in the trace closure (top point j joined to bottom point j).
inline int closure_loops(const TLDiagram& d) {
    const int n = d.strands();
    std::vector<int> parent(2 * n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int a = 0; a < 2 * n; ++a) parent[find(a)] = find(d.partner(a));
    for (int j = 0; j < n; ++j) parent[find(j)] = find(n + j);
    int loops = 0;
    for (int x = 0; x < 2 * n; ++x)
        if (find(x) == x) ++loops;
    return loops;
}

/// All planar pairings on n strands in lexicographic order of the pairing
/// array (Catalan-many).
inline std::vector<TLDiagram> enumerate_diagrams(int n, int max_n = max_diagram_strands) {
    if (n < 0) throw std::invalid_argument("enumerate_diagrams: n must be non-negative");
    if (n > max_n) throw std::invalid_argument("enumerate_diagrams: n exceeds maximum");
    const int m = 2 * n;
    // Dyck words on the boundary circle are exactly the planar matchings.
    auto point_of = [n](int c) { return c < n ? c : 3 * n - 1 - c; };
    std::vector<std::vector<int>> matchings;
    std::vector<int> circ(m, -1), open;
    auto rec = [&](auto&& self, int pos, int opened) -> void {
        if (pos == m) {
            matchings.push_back(circ);
            return;
        }
        if (opened < n) {
            open.push_back(pos);
            self(self, pos + 1, opened + 1);
            open.pop_back();
        }
        if (!open.empty()) {
            int a = open.back();
            open.pop_back();
            circ[a] = pos;
            circ[pos] = a;
            self(self, pos + 1, opened);
            circ[a] = circ[pos] = -1;
            open.push_back(a);
        }
    };
    rec(rec, 0, 0);
    std::vector<TLDiagram> out;
    out.reserve(matchings.size());
    for (const auto& c : matchings) {
        std::vector<int> p(m);
        for (int a = 0; a < m; ++a) p[point_of(a)] = point_of(c[a]);
        out.emplace_back(std::move(p));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Laurent polynomial in δ with integer coefficients, for exact checks.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(long long c) { // NOLINT: integers embed as constants
        if (c != 0) terms_[0] = c;
    }
    static LaurentPoly monomial(int power, long long c = 1) {
        LaurentPoly p;
        if (c != 0) p.terms_[power] = c;
        return p;
    }

    const std::map<int, long long>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    double evaluate(double delta) const {
        double s = 0.0;
        for (auto [k, c] : terms_) s += static_cast<double>(c) * std::pow(delta, k);
        return s;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (auto [k, c] : o.terms_) add(k, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (auto [k, c] : o.terms_) add(k, -c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly out;
        for (auto [ka, ca] : a.terms_)
            for (auto [kb, cb] : b.terms_) out.add(ka + kb, ca * cb);
        return out;
    }
    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

private:
    void add(int k, long long c) {
        auto& slot = terms_[k];
        slot += c;
        if (slot == 0) terms_.erase(k);
    }

    std::map<int, long long> terms_;
};

namespace detail {
inline bool is_zero_coeff(double c) { return c == 0.0; }
inline bool is_zero_coeff(const LaurentPoly& c) { return c.is_zero(); }
} // namespace detail

/// Finite linear combination of n-strand diagrams.
template <class Coeff>
class BasicTLElement {
public:
    using Terms = std::map<TLDiagram, Coeff>;

    explicit BasicTLElement(int n = 0) : n_(n) {}
    BasicTLElement(const TLDiagram& d, Coeff c) : n_(d.strands()) { add(d, std::move(c)); }

    static BasicTLElement identity(int n) { return BasicTLElement(TLDiagram::identity(n), Coeff(1)); }

    int strands() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const TLDiagram& d, const Coeff& c) {
        if (d.strands() != n_) throw std::invalid_argument("TLElement: strand-count mismatch");
        auto [it, inserted] = terms_.try_emplace(d, c);
        if (!inserted) it->second += c;
        if (detail::is_zero_coeff(it->second)) terms_.erase(it);
    }

    BasicTLElement& operator+=(const BasicTLElement& o) {
        check(o);
        for (const auto& [d, c] : o.terms_) add(d, c);
        return *this;
    }
    BasicTLElement& operator-=(const BasicTLElement& o) {
        check(o);
        for (const auto& [d, c] : o.terms_) add(d, Coeff(0) - c);
        return *this;
    }
    friend BasicTLElement operator+(BasicTLElement a, const BasicTLElement& b) { return a += b; }
    friend BasicTLElement operator-(BasicTLElement a, const BasicTLElement& b) { return a -= b; }
    friend BasicTLElement operator*(const Coeff& s, const BasicTLElement& a) {
        BasicTLElement out(a.n_);
        for (const auto& [d, c] : a.terms_) out.add(d, s * c);
        return out;
    }

    /// Adjoint (coefficients are real here).
    BasicTLElement adjoint() const {
        BasicTLElement out(n_);
        for (const auto& [d, c] : terms_) out.add(d.reversed(), c);
        return out;
    }

    friend bool operator==(const BasicTLElement&, const BasicTLElement&) = default;

private:
    void check(const BasicTLElement& o) const {
        if (o.n_ != n_) throw std::invalid_argument("TLElement: strand-count mismatch");
    }

    int n_;
    Terms terms_;
};

using TLElement = BasicTLElement<double>;
using ExactTLElement = BasicTLElement<LaurentPoly>;

/// Bilinear extension of stacking `b` on top of `a`; each closed loop
/// contributes loop_value(loops).
template <class Coeff, class LoopValue>
BasicTLElement<Coeff> multiply_with(const BasicTLElement<Coeff>& a, const BasicTLElement<Coeff>& b,
                                    LoopValue&& loop_value) {
    if (a.strands() != b.strands()) throw std::invalid_argument("multiply: strand-count mismatch");
    BasicTLElement<Coeff> out(a.strands());
    for (const auto& [da, ca] : a.terms())
        for (const auto& [db, cb] : b.terms()) {
            auto [d, loops] = compose(da, db);
            out.add(d, ca * cb * loop_value(loops));
        }
    return out;
}

inline TLElement multiply(const TLElement& a, const TLElement& b, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("multiply: delta must be positive");
    return multiply_with(a, b, [delta](int loops) { return std::pow(delta, loops); });
}

/// Exact product with δ kept formal.
inline ExactTLElement multiply(const ExactTLElement& a, const ExactTLElement& b) {
    return multiply_with(a, b, [](int loops) { return LaurentPoly::monomial(loops); });
}

/// e_i = δ⁻¹·U_i.
inline TLElement jones_projection_diagram(int i, int n, double delta) {
    if (i < 1 || i > n - 1) throw std::out_of_range("jones_projection_diagram: index out of range");
    if (!(delta > 0.0)) throw std::invalid_argument("jones_projection_diagram: delta must be positive");
    return TLElement(TLDiagram::cup_cap(i, n), 1.0 / delta);
}

inline ExactTLElement jones_projection_exact(int i, int n) {
    if (i < 1 || i > n - 1) throw std::out_of_range("jones_projection_exact: index out of range");
    return ExactTLElement(TLDiagram::cup_cap(i, n), LaurentPoly::monomial(-1));
}

/// Normalised Markov trace: tr(d) = δ^(loops(closure d) − n).
inline double markov_trace_diagram(const TLElement& a, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("markov_trace_diagram: delta must be positive");
    double s = 0.0;
    for (const auto& [d, c] : a.terms()) s += c * std::pow(delta, closure_loops(d) - d.strands());
    return s;
}

inline double max_abs_coefficient(const TLElement& a) {
    double m = 0.0;
    for (const auto& [d, c] : a.terms()) m = std::max(m, std::abs(c));
    return m;
}

inline nlohmann::ordered_json to_json(const TLElement& a) {
    nlohmann::ordered_json j;
    j["n"] = a.strands();
    j["terms"] = nlohmann::ordered_json::array();
    for (const auto& [d, c] : a.terms()) {
        nlohmann::ordered_json t;
        t["pairing"] = d.pairing();
        t["coeff"] = c;
        j["terms"].push_back(std::move(t));
    }
    return j;
}

inline TLElement tl_element_from_json(const nlohmann::json& j) {
    TLElement out(j.at("n").get<int>());
    for (const auto& t : j.at("terms")) out.add(TLDiagram(t.at("pairing").get<std::vector<int>>()), t.at("coeff").get<double>());
    return out;
}

} // namespace forkedtl
