/** Angle invariants, fusion dimensions and braid-group representations. */

#pragma once

#include "forkedtl/forked_tl.hpp"
#include "forkedtl/format.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace forkedtl {

enum class AngleMethod { closed_form, ghj_formula, numeric };

inline const char* to_string(AngleMethod m) {
    switch (m) {
    case AngleMethod::closed_form: return "closed_form";
    case AngleMethod::ghj_formula: return "ghj_formula";
    case AngleMethod::numeric: return "numeric";
    }
    return "?";
}

struct AngleResult {
    double lambda = 0.0; // cos² of the angle
    double angle = 0.0;  // radians
    AngleMethod method = AngleMethod::closed_form;
    double index = 0.0;  // [P:N]
    double tau = 0.0;
    bool degenerate = false; // index <= 2: no noncommuting quadrilateral
    std::map<std::string, double> residuals;
    std::map<std::string, double> details; // non-residual diagnostics

    double degrees() const { return angle * 180.0 / std::numbers::pi; }
};

namespace detail {
inline AngleResult angle_from_cosine(double cosine, AngleMethod method, double index) {
    AngleResult r;
    r.method = method;
    r.index = index;
    r.tau = 1.0 / index;
    r.lambda = cosine * cosine;
    r.angle = std::acos(std::clamp(cosine, -1.0, 1.0));
    return r;
}
} // namespace detail

/// T_0 = 0, T_1 = 1, T_{k+2}(x) = T_{k+1}(x) − x T_k(x).
inline double chebyshev_T(int k, double x) {
    if (k < 0) throw std::invalid_argument("chebyshev_T: k must be >= 0");
    double prev = 0.0, cur = 1.0;
    if (k == 0) return prev;
    for (int j = 1; j < k; ++j) {
        double next = cur - x * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

struct FusionDims {
    double index = 0.0;
    std::vector<double> dims; // dim_N V_k, k = 0..K
};

/// dim_N V_k = index^k · T_{2k+1}(1/index)
inline FusionDims fusion_dims(double index, int max_k) {
    if (!(index > 1.0)) throw std::invalid_argument("fusion_dims: index must exceed 1");
    if (max_k < 0) throw std::invalid_argument("fusion_dims: K must be >= 0");
    FusionDims f;
    f.index = index;
    for (int k = 0; k <= max_k; ++k) f.dims.push_back(std::pow(index, k) * chebyshev_T(2 * k + 1, 1.0 / index));
    return f;
}

/// dim_N L²(PQ) = index(index − 1), from V_0 ⊕ 2V_1 ⊕ V_2.
inline double pq_module_dim(double index) {
    if (!(index > 1.0 && index < 4.0)) throw std::invalid_argument("pq_module_dim: requires 1 < index < 4");
    return index * (index - 1.0);
}

/// arccos(1/(index − 1)); flagged degenerate when index <= 2.
inline AngleResult angle_closed_form(double index) {
    if (!(index > 1.0 && index < 4.0)) throw std::invalid_argument("angle_closed_form: requires 1 < index < 4");
    if (index <= 2.0) {
        AngleResult r = detail::angle_from_cosine(1.0, AngleMethod::closed_form, index);
        r.degenerate = true;
        return r;
    }
    return detail::angle_from_cosine(1.0 / (index - 1.0), AngleMethod::closed_form, index);
}

inline double ghj_index(int n) {
    const double c = std::cos(std::numbers::pi / (2.0 * n - 2.0));
    return 4.0 * c * c;
}

/// arccos(1/(4cos²(π/(2n−2)) − 1)) for the D_n GHJ pair.
inline AngleResult angle_ghj(int n) {
    if (n < 4) throw std::invalid_argument("angle_ghj: requires n >= 4");
    const double index = ghj_index(n);
    return detail::angle_from_cosine(1.0 / (index - 1.0), AngleMethod::ghj_formula, index);
}

/// arccos(1/(4cos²(π/2k) − 1)), k = 3..K.
inline std::vector<double> angle_spectrum_set(int max_k) {
    if (max_k < 3) throw std::invalid_argument("angle_spectrum_set: K must be >= 3");
    std::vector<double> out;
    for (int k = 3; k <= max_k; ++k) {
        const double c = std::cos(std::numbers::pi / (2.0 * k));
        out.push_back(std::acos(1.0 / (4.0 * c * c - 1.0)));
    }
    return out;
}

/// λ = ⟨E_P E_Q E_P(x), x⟩ / ⟨x, x⟩ for x = (p − τ)/(1 − τ), with
/// P = alg(p, e_1, ...) and Q = alg(q, e_1, ...) at `level`.
///
/// Residuals recorded: the fit E_Q(x) = c·y and its deviation from
/// c = −τ/(1−τ), the eigen-equation E_P E_Q E_P x = λx, the operator norms of
/// x, y (both 1), ‖x‖₂² = τ/(1−τ), x ∈ P, and x ⟂ N.
inline AngleResult angle_numeric(const ForkedSystem& fs, int level = -1, int cap = default_subalgebra_cap) {
    if (level < 0) level = fs.level;
    if (level < 2) throw std::invalid_argument("angle_numeric: level must be >= 2");
    const auto s = detail::raise(fs, level);
    const Tower& t = fs.tower;
    const double tau = fs.tau;
    const double ratio = tau / (1.0 - tau);
    const RealMultiMatrix x = (1.0 / (1.0 - tau)) * s.p.plus_scalar(-tau);
    const RealMultiMatrix y = (1.0 / (1.0 - tau)) * s.q.plus_scalar(-tau);

    std::vector<RealMultiMatrix> pg{s.p}, qg{s.q};
    pg.insert(pg.end(), s.jones.begin(), s.jones.end());
    qg.insert(qg.end(), s.jones.begin(), s.jones.end());
    const auto pb = generated_subalgebra(t, level, pg, cap);
    const auto qb = generated_subalgebra(t, level, qg, cap);
    const auto nb = generated_subalgebra(t, level, s.jones, cap);

    const auto eq_x = conditional_expectation(qb, x);
    const double c = trace_inner(eq_x, y) / trace_inner(y, y);
    const auto epqp_x = conditional_expectation(pb, conditional_expectation(qb, conditional_expectation(pb, x)));
    const double lambda = trace_inner(epqp_x, x) / trace_inner(x, x);

    AngleResult r = detail::angle_from_cosine(std::sqrt(std::max(0.0, lambda)), AngleMethod::numeric, 1.0 / tau);
    r.lambda = lambda;
    r.residuals["eq_fit"] = (eq_x - c * y).max_abs();
    r.residuals["eq_constant"] = std::abs(c + ratio);
    r.residuals["eq_formula"] = (eq_x + ratio * y).max_abs();
    r.residuals["eigen"] = (epqp_x - lambda * x).max_abs();
    r.residuals["lambda_vs_ratio_sq"] = std::abs(lambda - ratio * ratio);
    r.residuals["x_operator_norm"] = std::abs(operator_norm(x) - 1.0);
    r.residuals["y_operator_norm"] = std::abs(operator_norm(y) - 1.0);
    r.residuals["x_l2_norm_sq"] = std::abs(trace_inner(x, x) - ratio);
    r.residuals["y_l2_norm_sq"] = std::abs(trace_inner(y, y) - ratio);
    r.residuals["x_in_P"] = (conditional_expectation(pb, x) - x).max_abs();
    r.residuals["x_perp_N"] = conditional_expectation(nb, x).max_abs();
    r.details["eq_constant"] = c;
    r.details["dim_P"] = static_cast<double>(pb.dimension());
    r.details["dim_Q"] = static_cast<double>(qb.dimension());
    return r;
}

/// If angle is a rational multiple p/q·π with q <= 12, its symbolic form.
inline std::string pi_fraction(double angle, double tol = 1e-12) {
    for (int den = 1; den <= 12; ++den) {
        const double num = angle / std::numbers::pi * den;
        const double rounded = std::round(num);
        if (rounded >= 1.0 && std::abs(num - rounded) < tol * den) {
            const long long a = static_cast<long long>(rounded);
            if (std::gcd(a, static_cast<long long>(den)) != 1) continue;
            std::string s = a == 1 ? "π" : std::to_string(a) + "π";
            return den == 1 ? s : s + "/" + std::to_string(den);
        }
    }
    return "";
}

inline nlohmann::ordered_json to_json(const AngleResult& r) {
    nlohmann::ordered_json j;
    j["method"] = to_string(r.method);
    j["index"] = round_sig(r.index);
    j["tau"] = round_sig(r.tau);
    j["lambda"] = round_sig(r.lambda);
    j["angle_rad"] = round_sig(r.angle);
    j["angle_deg"] = round_sig(r.degrees());
    j["degenerate"] = r.degenerate;
    nlohmann::ordered_json res = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.residuals) res[k] = round_sig(v);
    j["residuals"] = std::move(res);
    if (!r.details.empty()) {
        nlohmann::ordered_json det = nlohmann::ordered_json::object();
        for (const auto& [k, v] : r.details) det[k] = round_sig(v);
        j["details"] = std::move(det);
    }
    return j;
}

/// Braid generators g_i = (t + 1)e_i − 1 with t = exp(2πi/h), prefixed by
/// g_0 = (t + 1)p − 1 or (t + 1)q − 1 for an initial extension.
enum class BraidExtension { none, p, q };

inline std::vector<ComplexMultiMatrix> braid_generators(const ForkedSystem& fs, BraidExtension ext, int count,
                                                        int level = -1) {
    if (level < 0) level = fs.level;
    const auto s = detail::raise(fs, level);
    if (count < 0 || count > static_cast<int>(s.jones.size()))
        throw std::out_of_range("braid_generators: count exceeds available projections");
    const int h = coxeter_number(fs.tower.graph());
    const std::complex<double> t = std::polar(1.0, 2.0 * std::numbers::pi / h);
    auto gen = [&](const RealMultiMatrix& e) {
        return ((t + 1.0) * e.cast<std::complex<double>>()).plus_scalar(-1.0);
    };
    std::vector<ComplexMultiMatrix> out;
    if (ext == BraidExtension::p) out.push_back(gen(s.p));
    if (ext == BraidExtension::q) out.push_back(gen(s.q));
    for (int i = 0; i < count; ++i) out.push_back(gen(s.jones[i]));
    return out;
}

/// Unitarity, braid relation and far commutation of the generators.
inline VerificationReport verify_braid(const ForkedSystem& fs, BraidExtension ext, int level, double tol) {
    const auto s = detail::raise(fs, level);
    const auto gens = braid_generators(fs, ext, static_cast<int>(s.jones.size()), level);
    const std::string label = ext == BraidExtension::p ? "p-extension" : ext == BraidExtension::q ? "q-extension" : "plain";
    const int first = ext == BraidExtension::none ? 1 : 0;
    VerificationReport r({fs.tower.graph().name, fs.tau, level});
    const auto one = ComplexMultiMatrix::identity(fs.tower, level);
    auto name = [first](std::size_t i) { return "g" + std::to_string(first + static_cast<int>(i)); };
    for (std::size_t i = 0; i < gens.size(); ++i)
        r.add(label + ": " + name(i) + " " + name(i) + "* = 1", (gens[i] * gens[i].adjoint() - one).max_abs(), tol);
    for (std::size_t i = 0; i + 1 < gens.size(); ++i) {
        const auto& a = gens[i];
        const auto& b = gens[i + 1];
        r.add(label + ": " + name(i) + " " + name(i + 1) + " " + name(i) + " = " + name(i + 1) + " " + name(i) + " " +
                  name(i + 1),
              (a * b * a - b * a * b).max_abs(), tol);
    }
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 2; j < gens.size(); ++j)
            r.add(label + ": " + name(i) + " " + name(j) + " = " + name(j) + " " + name(i),
                  (gens[i] * gens[j] - gens[j] * gens[i]).max_abs(), tol);
    return r;
}

} // namespace forkedtl
