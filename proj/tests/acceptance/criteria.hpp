#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace vacline::acceptance {

struct CriterionResult {
    int id;
    std::string title;
    bool passed;
    std::string detail;
    double seconds;
};

/// One line: "[PASS] 3 <title>: <detail> (<seconds> s)".
std::string format(const CriterionResult& result);

/// Every criterion in order. `on_result` is called as each one finishes.
std::vector<CriterionResult> run_all(const std::function<void(const CriterionResult&)>& on_result = {});

CriterionResult headline_variance();
CriterionResult peak_location();
CriterionResult momentum_equals_energy();
CriterionResult pulse_normalisation();
CriterionResult transmitted_amplitude();
CriterionResult sinc_zero_transparency();
CriterionResult conservation_and_exchange();
CriterionResult long_pulse_suppression();
CriterionResult fock_moments();

}  // namespace vacline::acceptance
