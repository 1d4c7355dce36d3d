#ifndef CORANK_REPORT_HPP
#define CORANK_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "corank/rational.hpp"

namespace corank {

enum class Verdict { pass, fail, verified_up_to_horizon };

inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::verified_up_to_horizon: return "verified-up-to-horizon";
    }
    return "?";
}

struct ReportViolation {
    std::string state;
    std::string expected;
    std::string actual;
};

// Outcome of a certificate check: verdict, per-state violations, the derived
// bound q∘b, and (optionally) the independently computed lfp for comparison.
struct Report {
    Verdict verdict = Verdict::pass;
    std::vector<ReportViolation> violations;
    std::vector<std::pair<std::string, Rat>> bounds;
    std::optional<std::vector<std::pair<std::string, Rat>>> reference;
    std::optional<std::uint64_t> horizon;

    bool passed() const { return verdict != Verdict::fail; }
};

}  // namespace corank

#endif
