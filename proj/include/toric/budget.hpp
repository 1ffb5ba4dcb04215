#pragma once

#include "toric/error.hpp"

namespace toric {

// Step budget for the enumeration-heavy operations.  A null Budget* means
// unlimited.  charge() throws "BudgetExceeded" once the counter runs out, so
// callers never observe a silently truncated enumeration.
struct Budget {
    long long remaining = 100000000; // CLI default: 1e8 elementary steps

    void charge(long long n = 1) {
        remaining -= n;
        if (remaining < 0) fail("BudgetExceeded");
    }
};

inline void charge(Budget* b, long long n = 1) {
    if (b) b->charge(n);
}

} // namespace toric
