// Acceptance suite: evaluates every criterion at its pinned tolerance and
// prints one pass/fail line per criterion plus the underlying checks.
#include <clocale>
#include <cstdio>
#include <exception>

#include "esim/checks.hpp"

int main()
{
    std::setlocale(LC_NUMERIC, "C");
    int failures = 0;
    for (int i = 1; i <= esim::checks::criterion_count(); ++i) {
        bool pass = false;
        std::string detail;
        try {
            const auto list = esim::checks::criterion(i);
            pass = list.all_pass();
            detail = list.report();
        } catch (const std::exception& e) {
            detail = std::string("  exception: ") + e.what() + "\n";
        }
        std::printf("criterion %2d (%s): %s\n", i, esim::checks::criterion_title(i).c_str(),
                    pass ? "PASS" : "FAIL");
        std::fputs(detail.c_str(), stdout);
        if (!pass)
            ++failures;
    }
    std::printf("acceptance: %d/%d criteria passed\n",
                esim::checks::criterion_count() - failures, esim::checks::criterion_count());
    return failures == 0 ? 0 : 1;
}
