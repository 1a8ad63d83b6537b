// One line per acceptance criterion, in criterion order; exit status 1 if any is red.
#include <cstdio>

#include "weyl/verify.hpp"

int main()
{
    const auto &names = weyl::suite_names();
    int failed = 0;
    for (std::size_t i = 0; i < names.size(); ++i) {
        const auto r = weyl::run_suite(names[i]);
        std::printf("%s criterion %zu (%s, %.2f s of %.0f s): %s\n", r.passed ? "PASS" : "FAIL", i + 1, r.name.c_str(),
                    r.seconds, r.limit_seconds, r.detail.c_str());
        failed += r.passed ? 0 : 1;
    }
    std::printf("%zu/%zu criteria passed\n", names.size() - static_cast<std::size_t>(failed), names.size());
    return failed == 0 ? 0 : 1;
}
