// Runs the acceptance criteria and prints one line per criterion.
// Usage: acceptance [--quick] [criterion ids...]

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "zeta_sampler/acceptance.hpp"

int main(int argc, char** argv)
{
    zs::AcceptanceOptions opts;
    std::vector<std::size_t> ids;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--quick") {
            opts.quick = true;
        } else {
            int id = std::atoi(a.c_str());
            if (id < 1 || id > static_cast<int>(zs::acceptance_criteria().size())) {
                std::fprintf(stderr, "usage: acceptance [--quick] [criterion ids 1-10...]\n");
                return 2;
            }
            ids.push_back(static_cast<std::size_t>(id - 1));
        }
    }
    if (ids.empty())
        for (std::size_t i = 0; i < zs::acceptance_criteria().size(); ++i)
            ids.push_back(i);

    int failed = 0;
    for (auto i : ids) {
        auto r = zs::run_criterion(i, opts);
        std::printf("%s [%.1fs]\n", zs::format_result(r).c_str(), r.seconds);
        std::fflush(stdout);
        failed += r.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(ids.size()) - failed, ids.size());
    return failed == 0 ? 0 : 1;
}
