#pragma once

#include <stdexcept>
#include <string>

namespace qmz {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// value outside a convergence domain
struct domain_error : error {
    using error::error;
};

// structurally invalid input (bad depth, non-finite component, out-of-range index)
struct argument_error : error {
    using error::error;
};

// an iteration budget ran out before the requested tolerance was reached
struct budget_error : error {
    using error::error;
};

// some q_i(t) = q^{-(t+i)} - 1 is too close to zero; index identifies i
struct singular_coefficient : error {
    int index;
    singular_coefficient(int i, const std::string& what) : error(what), index(i) {}
};

}  // namespace qmz
