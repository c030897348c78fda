#include "pwldyn/acceptance.hpp"

#include <cstdio>

int main() {
    auto results = pwldyn::run_acceptance();
    bool all = true;
    for (const auto& r : results) {
        std::printf("[%s] criterion %2d (%7.2f s): %s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.seconds, r.name.c_str());
        if (!r.pass && !r.detail.empty()) std::printf("       %s\n", r.detail.c_str());
        all = all && r.pass;
    }
    std::printf("%s\n", all ? "acceptance: all criteria passed" : "acceptance: FAILURES present");
    return all ? 0 : 1;
}
