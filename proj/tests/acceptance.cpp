#include <cstdio>

#include "bergman/verify/acceptance.hpp"

int main() {
    const auto results = bergman::verify::run_acceptance();
    int failed = 0;
    for (const auto& r : results) {
        std::printf("[%s] criterion %d: %s | %s | %.2fs (limit %.0fs)\n", r.passed ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.detail.c_str(), r.seconds, r.limit_seconds);
        if (!r.passed) ++failed;
    }
    std::printf("%zu/%zu criteria passed\n", results.size() - failed, results.size());
    return failed == 0 ? 0 : 1;
}
