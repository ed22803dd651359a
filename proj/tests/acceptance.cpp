// Acceptance suite: one pass/fail line per criterion, aggregated from the
// shared verification claim table.  Exit status is the number of failed
// criteria.

#include <cstdio>
#include <map>

#include "charq/verify.hpp"

int main() {
    using namespace charq;
    FieldCtx F(12);
    VerifyEnv env{F};
    env.threads = 2;

    struct Agg {
        bool pass = true;
        double seconds = 0;
        int claims = 0;
        std::string failures;
    };
    std::map<int, Agg> by_criterion;

    for (const auto& claim : verification_claims()) {
        ClaimResult res;
        try {
            claim.run(env, res);
        } catch (const std::exception& e) {
            res.pass = false;
            res.observed = std::string("exception: ") + e.what();
        }
        auto& agg = by_criterion[claim.criterion];
        agg.pass &= res.pass;
        agg.seconds += res.seconds;
        agg.claims += 1;
        if (!res.pass)
            agg.failures += "\n      " + claim.id + ": expected " + res.expected +
                            "; observed " + res.observed;
        std::fflush(stdout);
    }

    int failed = 0;
    for (int n = 1; n <= 9; ++n) {
        const auto it = by_criterion.find(n);
        const bool pass = it != by_criterion.end() && it->second.pass && it->second.claims > 0;
        if (!pass) ++failed;
        std::printf("criterion %d [%s] %s (%d claim%s, %.1f s)%s\n", n,
                    pass ? "PASS" : "FAIL", criterion_summary(n),
                    it == by_criterion.end() ? 0 : it->second.claims,
                    (it != by_criterion.end() && it->second.claims == 1) ? "" : "s",
                    it == by_criterion.end() ? 0.0 : it->second.seconds,
                    (it == by_criterion.end() || it->second.failures.empty())
                        ? ""
                        : it->second.failures.c_str());
    }
    std::printf("criterion 10 [SKIP] %s\n", criterion_summary(10));
    std::printf("acceptance: %d passed, %d failed, 1 skipped\n", 9 - failed, failed);
    return failed;
}
