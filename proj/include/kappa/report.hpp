#pragma once

#include <string>
#include <vector>

namespace kappa {

/// Outcome of one named identity check. A failed check carries the rendered
/// nonzero residual.
struct Check {
    std::string name;
    bool passed = false;
    std::string residual;
};

struct Report {
    std::string suite;
    std::vector<Check> checks;
    double seconds = 0.0;

    [[nodiscard]] bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    void add(std::string name, bool ok, std::string residual = {}) {
        checks.push_back({std::move(name), ok, ok ? std::string() : std::move(residual)});
    }
};

}  // namespace kappa
