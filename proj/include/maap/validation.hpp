#pragma once

#include <string>
#include <vector>

namespace maap {

struct Violation {
    std::string code;     // short machine-readable tag, e.g. "use-before-def"
    std::string message;  // human-readable detail
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    void add(std::string code, std::string message) {
        violations.push_back({std::move(code), std::move(message)});
    }
    std::string summary() const {
        std::string s;
        for (const auto& v : violations) {
            s += v.code;
            s += ": ";
            s += v.message;
            s += "\n";
        }
        return s;
    }
};

}  // namespace maap
