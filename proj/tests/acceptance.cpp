// One line per acceptance criterion; exit status 0 iff every criterion passes.
// Usage: acceptance [id ...]   (default: 1..11)
#include <extremal/verify.hpp>

#include <cstdio>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> ids;
    for (int i = 1; i < argc; ++i) ids.push_back(argv[i]);
    if (ids.empty())
        for (int i = 1; i <= 11; ++i) ids.push_back(std::to_string(i));
    extremal::VerifyOptions opt;
    opt.figureDir = ".";
    int failed = 0;
    for (const auto& id : ids) {
        const auto r = extremal::run_criterion(id, opt);
        std::printf("%s\n", extremal::format_report(r).c_str());
        std::fflush(stdout);
        failed += !r.pass;
    }
    std::printf("%d/%zu criteria passed\n", int(ids.size()) - failed, ids.size());
    return failed ? 1 : 0;
}
