/** Named residual checks with tolerances. */

#pragma once

#include "forkedtl/format.hpp"

#include <json.hpp>

#include <algorithm>
#include <string>
#include <vector>

namespace forkedtl {

struct Check {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SystemInfo {
    std::string graph;
    double tau = 0.0;
    int level = 0;
};

class VerificationReport {
public:
    VerificationReport() = default;
    explicit VerificationReport(SystemInfo system) : system_(std::move(system)) {}

    void add(std::string name, double residual, double tolerance) {
        // NaN residuals fail
        checks_.push_back({std::move(name), residual, tolerance, residual <= tolerance});
    }

    void append(const VerificationReport& other) {
        checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
    }

    const std::vector<Check>& checks() const { return checks_; }
    const SystemInfo& system() const { return system_; }

    bool overall() const {
        return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
    }

    const Check* find(const std::string& name) const {
        for (const auto& c : checks_)
            if (c.name == name) return &c;
        return nullptr;
    }

    double max_residual() const {
        double m = 0.0;
        for (const auto& c : checks_) m = std::max(m, c.residual);
        return m;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["system"] = {{"graph", system_.graph}, {"tau", round_sig(system_.tau)}, {"level", system_.level}};
        j["checks"] = nlohmann::ordered_json::array();
        for (const auto& c : checks_)
            j["checks"].push_back({{"name", c.name},
                                   {"residual", round_sig(c.residual)},
                                   {"tolerance", round_sig(c.tolerance)},
                                   {"pass", c.pass}});
        j["overall"] = overall();
        return j;
    }

    std::string to_text() const {
        std::string s = "system: graph=" + system_.graph + " tau=" + format_sig(system_.tau) +
                        " level=" + std::to_string(system_.level) + "\n";
        for (const auto& c : checks_)
            s += std::string(c.pass ? "[pass] " : "[FAIL] ") + c.name + "  residual=" + format_sig(c.residual) +
                 " tol=" + format_sig(c.tolerance) + "\n";
        s += std::string("overall: ") + (overall() ? "pass" : "FAIL") + "\n";
        return s;
    }

private:
    SystemInfo system_;
    std::vector<Check> checks_;
};

} // namespace forkedtl
