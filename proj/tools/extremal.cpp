// extremal: command-line front end (compute, sweep, verify, gram-dump).
// Exit codes: 0 success, 1 solver error, 2 usage error.
#include <extremal/errors.hpp>
#include <extremal/gram.hpp>
#include <extremal/sweep.hpp>
#include <extremal/verify.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

using namespace extremal;
using json = nlohmann::ordered_json;

namespace {

// "1", "1.5" or "4/3"
double parse_number(const std::string& tok) {
    const auto slash = tok.find('/');
    try {
        size_t used = 0;
        if (slash == std::string::npos) {
            const double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        }
        const std::string a = tok.substr(0, slash), b = tok.substr(slash + 1);
        size_t ua = 0, ub = 0;
        const double num = std::stod(a, &ua), den = std::stod(b, &ub);
        if (ua != a.size() || ub != b.size() || den == 0) throw std::invalid_argument(tok);
        return num / den;
    } catch (const std::logic_error&) {
        throw Error("usage", "not a number: '" + tok + "'");
    }
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string tok; std::getline(ss, tok, ',');)
        if (!tok.empty()) out.push_back(tok);
    return out;
}

int fail(const Error& e) {
    json j;
    j["error"] = e.code();
    j["message"] = e.what();
    std::cout << j.dump() << "\n";
    return e.code() == "usage" ? 2 : 1;
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("usage", "cannot open '" + path + "' for writing");
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sharp constants A(G, pi delta, alpha) for the five symmetry-group densities"};
    app.require_subcommand(1);

    std::string group = "U", route = "auto", delta = "1";
    double alpha = 0, tol = 1e-12;
    int k = 1;
    long nodes = 0;
    auto* cCompute = app.add_subcommand("compute", "one value as a JSON object");
    cCompute->add_option("--group", group, "U, Sp, O, SO(even) or SO(odd)")->required();
    cCompute->add_option("--delta", delta, "bandwidth (fractions like 4/3 allowed)")->required();
    cCompute->add_option("--alpha", alpha, "center height")->required();
    cCompute->add_option("--k", k, "power of (x - alpha)")->capture_default_str();
    cCompute->add_option("--route", route, "auto, variational, kernel or debranges")
        ->capture_default_str();
    cCompute->add_option("--nodes", nodes, "variational window size (default: automatic)");
    cCompute->add_option("--tol", tol, "eigen residual tolerance")->capture_default_str();

    std::string groups = "U,Sp,O,SO(even),SO(odd)", deltas = "1,4/3,3/2,2", out = "-",
                format = "csv";
    double amin = 0, amax = 4, astep = 0.05;
    auto* cSweep = app.add_subcommand("sweep", "alpha sweep to CSV, JSON or SVG");
    cSweep->add_option("--groups", groups, "comma-separated groups")->capture_default_str();
    cSweep->add_option("--deltas", deltas, "comma-separated bandwidths")->capture_default_str();
    cSweep->add_option("--alpha-min", amin)->capture_default_str();
    cSweep->add_option("--alpha-max", amax)->capture_default_str();
    cSweep->add_option("--alpha-step", astep)->capture_default_str();
    cSweep->add_option("--k", k)->capture_default_str();
    cSweep->add_option("--route", route)->capture_default_str();
    cSweep->add_option("--out", out, "output file, - for stdout")->capture_default_str();
    cSweep->add_option("--format", format)
        ->check(CLI::IsMember({"csv", "json", "svg"}))
        ->capture_default_str();

    std::string level = "quick", figureDir;
    bool corrupt = false;
    auto* cVerify = app.add_subcommand("verify", "run the acceptance checks");
    cVerify->add_option("level", level)->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
    cVerify->add_option("--figure-dir", figureDir, "leave the regenerated figure data here");
    cVerify->add_flag("--corrupt-gram", corrupt, "test hook: perturb one sin-weight entry first");

    long nmin = -10, nmax = 10;
    auto* cDump = app.add_subcommand("gram-dump", "weighted Gram matrix as row,col,value CSV");
    cDump->add_option("--group", group)->required();
    cDump->add_option("--delta", delta)->required();
    cDump->add_option("--nmin", nmin)->capture_default_str();
    cDump->add_option("--nmax", nmax)->capture_default_str();
    cDump->add_option("--out", out)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*cCompute) {
            ComputeRequest r;
            r.group = parse_group(group);
            r.delta = parse_number(delta);
            r.alpha = alpha;
            r.k = k;
            r.route = parse_route(route);
            r.tol = tol;
            if (nodes > 0) r.nodes = nodes;
            const ExtremalSolution s = compute(r);
            json j;
            j["group"] = group_name(r.group);
            j["delta"] = r.delta;
            j["alpha"] = r.alpha;
            j["k"] = r.k;
            j["lambda0"] = s.lambda0;
            j["aValue"] = s.aValue;
            j["sqrtA"] = std::sqrt(s.aValue);
            j["route"] = route_name(s.route);
            j["nodes"] = s.nodes;
            j["residual"] = s.residual;
            j["tangential"] = s.tangential;
            j["warnings"] = s.warnings;
            for (const auto& w : s.warnings) std::cerr << "warning: " << w << "\n";
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (*cSweep) {
            SweepConfig cfg;
            cfg.groups.clear();
            for (const auto& g : split(groups)) cfg.groups.push_back(parse_group(g));
            cfg.deltas.clear();
            for (const auto& d : split(deltas)) {
                const double v = parse_number(d);
                if (!(v > 0)) throw Error("usage", "bandwidths must be positive");
                cfg.deltas.push_back(v);
            }
            if (cfg.groups.empty() || cfg.deltas.empty())
                throw Error("usage", "need at least one group and one bandwidth");
            cfg.alphaMin = amin;
            cfg.alphaMax = amax;
            cfg.alphaStep = astep;
            cfg.k = k;
            cfg.route = parse_route(route);
            if (k < 1) throw Error("usage", "k must be at least 1");
            alpha_grid(amin, amax, astep);  // validates the range
            const auto rows = run_sweep(cfg, sweep_threads_from_env());
            std::set<std::string> seen;
            long ok = 0;
            for (const auto& row : rows) {
                ok += row.ok;
                for (const auto& w : row.warnings)
                    if (seen.insert(w).second) std::cerr << "warning: " << w << "\n";
            }
            const std::string text = format == "csv"    ? sweep_csv(rows)
                                     : format == "json" ? sweep_json(rows)
                                                        : sweep_svg(rows);
            write_out(out, text);
            std::cerr << ok << "/" << rows.size() << " points solved\n";
            return 10 * ok >= 9 * long(rows.size()) ? 0 : 1;
        }
        if (*cVerify) {
            if (corrupt) corrupt_sin_weight_for_testing(1, 2, 1e-6);
            VerifyOptions opt;
            opt.figureDir = figureDir;
            const auto reports =
                run_verify(level == "full" ? VerifyLevel::full : VerifyLevel::quick, opt,
                           [](const CriterionReport& r) {
                               std::cout << format_report(r) << std::endl;
                           });
            int failed = 0;
            for (const auto& r : reports) failed += !r.pass;
            std::cout << (reports.size() - failed) << "/" << reports.size() << " passed\n";
            return failed ? 1 : 0;
        }
        if (*cDump) {
            if (nmin > nmax) throw Error("usage", "nmin exceeds nmax");
            const WeightedGram G = assemble_gram(parse_group(group), parse_number(delta), {nmin, nmax});
            std::string text = "row,col,value\n";
            char buf[96];
            for (long i = 0; i < G.window.size(); ++i)
                for (long j = 0; j < G.window.size(); ++j) {
                    std::snprintf(buf, sizeof buf, "%ld,%ld,%.17g\n", nmin + i, nmin + j,
                                  G.entries(i, j));
                    text += buf;
                }
            if (!G.warning.empty()) std::cerr << "warning: " << G.warning << "\n";
            write_out(out, text);
            return 0;
        }
    } catch (const Error& e) {
        return fail(e);
    } catch (const std::exception& e) {
        return fail(Error("solver", e.what()));
    }
    return 2;
}
