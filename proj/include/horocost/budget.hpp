#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace horocost {

// Enumeration cap shared by all ball/shell/pair iterations. Never truncates
// silently: exceeding the cap raises BudgetError carrying the count reached,
// which is a lower bound on the true cardinality.
class BudgetError : public std::runtime_error {
public:
    BudgetError(const std::string& what_, std::size_t reached_)
        : std::runtime_error(what_ + " (element budget exhausted; lower bound reached: " +
                             std::to_string(reached_) + ")"),
          reached(reached_) {}

    std::size_t reached;
};

std::size_t element_budget();          // default 5'000'000, HOROCOST_BUDGET overrides
void set_element_budget(std::size_t);  // programmatic override (CLI flag)

}  // namespace horocost
