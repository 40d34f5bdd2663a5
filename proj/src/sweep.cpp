#include <extremal/debranges.hpp>
#include <extremal/errors.hpp>
#include <extremal/kernel.hpp>
#include <extremal/sweep.hpp>
#include <extremal/variational.hpp>

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <thread>

namespace extremal {

RouteChoice parse_route(const std::string& s) {
    if (s == "auto") return RouteChoice::automatic;
    if (s == "variational") return RouteChoice::variational;
    if (s == "kernel") return RouteChoice::kernel;
    if (s == "debranges") return RouteChoice::debranges;
    throw Error("usage", "unknown route '" + s + "'");
}

namespace {

ExtremalSolution run_variational(const ComputeRequest& r) {
    ProblemSpec p;
    p.group = r.group;
    p.delta = r.delta;
    p.alpha = r.alpha;
    p.k = r.k;
    p.tol = r.tol;
    if (r.nodes) p.window = centered_window(r.delta, r.alpha, *r.nodes);
    return variational_value(p);
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

ExtremalSolution compute(const ComputeRequest& r) {
    if (!(r.delta > 0) || !std::isfinite(r.delta)) throw Error("usage", "delta must be positive");
    if (!std::isfinite(r.alpha)) throw Error("usage", "alpha must be finite");
    if (r.k < 1) throw Error("usage", "k must be at least 1");
    if (r.nodes && *r.nodes < r.k + 2) throw Error("usage", "nodes must be at least k + 2");

    ExtremalSolution s;
    switch (r.route) {
        case RouteChoice::variational:
            s = run_variational(r);
            break;
        case RouteChoice::kernel:
            if (r.k != 1) throw Error("usage", "the kernel route is for k = 1 only");
            s = kernel_value(r.group, r.delta, r.alpha);
            break;
        case RouteChoice::debranges:
            if (r.group != SymmetryGroup::U)
                throw Error("usage", "the determinant route exists for U only");
            s = detroot_value({r.delta, r.alpha, r.k});
            break;
        case RouteChoice::automatic:
            if (r.k >= 2) {
                s = run_variational(r);
                if (r.group == SymmetryGroup::U) {
                    const ExtremalSolution d = detroot_value({r.delta, r.alpha, r.k});
                    if (rel_diff(d.aValue, s.aValue) > 1e-3)
                        s.warnings.push_back("determinant route disagrees: " +
                                             std::to_string(d.aValue));
                }
            } else {
                s = kernel_value(r.group, r.delta, r.alpha);
            }
            break;
    }
    const auto w = weight_params(r.group);
    if (r.delta > 2 && w.gamma != 0)
        s.warnings.push_back("delta > 2: no closed-form kernel is known for this group; "
                             "the numerical value is unverified there");
    if (s.tangential) s.warnings.push_back("first zero found without a sign change");
    return s;
}

std::vector<double> alpha_grid(double lo, double hi, double step) {
    if (!(step > 0)) throw Error("usage", "alpha step must be positive");
    if (lo > hi) throw Error("usage", "alpha min exceeds alpha max");
    std::vector<double> out;
    const long n = long(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(lo + i * step);
    return out;
}

int sweep_threads_from_env() {
    if (const char* e = std::getenv("EXTREMAL_THREADS")) {
        const int t = std::atoi(e);
        if (t > 0) return t;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg, int threads) {
    const std::vector<double> alphas = alpha_grid(cfg.alphaMin, cfg.alphaMax, cfg.alphaStep);
    std::vector<SweepRow> rows;
    for (auto g : cfg.groups)
        for (double d : cfg.deltas)
            for (double a : alphas) {
                SweepRow row;
                row.group = g;
                row.delta = d;
                row.alpha = a;
                row.k = cfg.k;
                rows.push_back(row);
            }

    auto solve = [&](SweepRow& row, bool endpoint) {
        ComputeRequest r;
        r.group = row.group;
        r.delta = row.delta;
        r.alpha = row.alpha;
        r.k = row.k;
        r.route = cfg.route;
        try {
            const ExtremalSolution s = compute(r);
            row.ok = true;
            row.lambda0 = s.lambda0;
            row.aValue = s.aValue;
            row.sqrtA = std::sqrt(s.aValue);
            row.route = route_name(s.route);
            row.nodes = s.nodes;
            row.residual = s.residual;
            row.warnings = s.warnings;
            // numeric kernel points get a variational cross-check at the sweep ends
            if (endpoint && cfg.route == RouteChoice::automatic && s.route == Route::kernel &&
                s.nodes > 0) {
                r.route = RouteChoice::variational;
                const ExtremalSolution v = compute(r);
                if (rel_diff(s.aValue, v.aValue) > 1e-3)
                    row.warnings.push_back("variational cross-check disagrees: " +
                                           std::to_string(v.aValue));
            }
        } catch (const Error& e) {
            row.ok = false;
            row.error = e.code();
        } catch (const std::exception&) {
            row.ok = false;
            row.error = "solver";
        }
    };

    const size_t per = alphas.size();
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i; (i = next.fetch_add(1)) < rows.size();) {
            const size_t j = i % per;
            solve(rows[i], j == 0 || j + 1 == per);
        }
    };
    const int T = std::max(1, threads > 0 ? threads : sweep_threads_from_env());
    std::vector<std::thread> pool;
    for (int t = 1; t < T; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return rows;
}

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

}  // namespace

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    const bool anyFail = std::any_of(rows.begin(), rows.end(), [](auto& r) { return !r.ok; });
    std::string out = "group,delta,alpha,k,sqrtA,aValue,route,nodes,residual";
    out += anyFail ? ",error\n" : "\n";
    for (const auto& r : rows) {
        out += group_name(r.group) + "," + num(r.delta) + "," + num(r.alpha) + "," +
               std::to_string(r.k) + ",";
        if (r.ok)
            out += num(r.sqrtA) + "," + num(r.aValue) + "," + r.route + "," +
                   std::to_string(r.nodes) + "," + num(r.residual);
        else
            out += ",,,,";
        if (anyFail) out += "," + r.error;
        out += "\n";
    }
    return out;
}

std::string sweep_json(const std::vector<SweepRow>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json o;
        o["group"] = group_name(r.group);
        o["delta"] = r.delta;
        o["alpha"] = r.alpha;
        o["k"] = r.k;
        if (r.ok) {
            o["lambda0"] = r.lambda0;
            o["aValue"] = r.aValue;
            o["sqrtA"] = r.sqrtA;
            o["route"] = r.route;
            o["nodes"] = r.nodes;
            o["residual"] = r.residual;
        } else {
            o["error"] = r.error;
        }
        arr.push_back(o);
    }
    return arr.dump(1) + "\n";
}

std::string sweep_svg(const std::vector<SweepRow>& rows) {
    const double W = 800, H = 500, left = 70, right = 170, top = 30, bottom = 60;
    double amin = 1e300, amax = -1e300, ymax = 0;
    for (const auto& r : rows) {
        amin = std::min(amin, r.alpha);
        amax = std::max(amax, r.alpha);
        if (r.ok) ymax = std::max(ymax, r.sqrtA);
    }
    if (rows.empty()) amin = 0, amax = 1;
    if (amax <= amin) amax = amin + 1;
    ymax = ymax > 0 ? ymax * 1.1 : 1.0;
    auto X = [&](double a) { return left + (a - amin) / (amax - amin) * (W - left - right); };
    auto Y = [&](double y) { return H - bottom - y / ymax * (H - top - bottom); };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    static const char* dashes[] = {"", "6,3", "2,2", "8,3,2,3", "1,3"};

    std::string s;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" "
                  "viewBox=\"0 0 %g %g\">\n",
                  W, H, W, H);
    s += buf;
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<path d=\"M%.2f %.2f H%.2f M%.2f %.2f V%.2f\" stroke=\"black\" fill=\"none\"/>\n",
                  left, H - bottom, W - right, left, H - bottom, top);
    s += buf;
    for (int i = 0; i <= 5; ++i) {
        const double a = amin + (amax - amin) * i / 5, y = ymax * i / 5;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\" text-anchor=\"middle\">%.3g</text>\n",
                      X(a), H - bottom + 16, a);
        s += buf;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\" text-anchor=\"end\">%.3g</text>\n",
                      left - 6, Y(y) + 4, y);
        s += buf;
    }
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.2f\" font-size=\"14\" text-anchor=\"middle\">&#945;</text>\n",
                  (left + W - right) / 2, H - 20);
    s += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"20\" y=\"%.2f\" font-size=\"14\" text-anchor=\"middle\" "
                  "transform=\"rotate(-90 20 %.2f)\">&#8730;A</text>\n",
                  (top + H - bottom) / 2, (top + H - bottom) / 2);
    s += buf;

    // one polyline per (group, delta), in first-appearance order
    std::vector<std::pair<SymmetryGroup, double>> keys;
    std::map<std::pair<int, double>, std::string> pts;
    for (const auto& r : rows) {
        const std::pair<int, double> key{int(r.group), r.delta};
        if (!pts.count(key)) {
            keys.push_back({r.group, r.delta});
            pts[key];
        }
        if (!r.ok) continue;
        std::snprintf(buf, sizeof buf, "%.2f,%.2f ", X(r.alpha), Y(r.sqrtA));
        pts[key] += buf;
    }
    std::vector<double> deltas;
    for (const auto& k : keys)
        if (std::find(deltas.begin(), deltas.end(), k.second) == deltas.end())
            deltas.push_back(k.second);
    int line = 0;
    for (const auto& [g, d] : keys) {
        const int di = int(std::find(deltas.begin(), deltas.end(), d) - deltas.begin()) % 5;
        const char* col = colors[int(g) % 5];
        std::string p = pts[{int(g), d}];
        if (!p.empty()) p.pop_back();
        std::snprintf(buf, sizeof buf,
                      "<polyline fill=\"none\" stroke=\"%s\" stroke-width=\"1.5\"%s%s%s points=\"",
                      col, *dashes[di] ? " stroke-dasharray=\"" : "", dashes[di],
                      *dashes[di] ? "\"" : "");
        s += buf;
        s += p + "\"/>\n";
        const double ly = top + 14 * line++;
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\"%s%s%s/>\n",
                      W - right + 10, ly, W - right + 35, ly, col,
                      *dashes[di] ? " stroke-dasharray=\"" : "", dashes[di],
                      *dashes[di] ? "\"" : "");
        s += buf;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\">%s, &#916;=%.4g</text>\n",
                      W - right + 40, ly + 4, group_name(g).c_str(), d);
        s += buf;
    }
    s += "</svg>\n";
    return s;
}

}  // namespace extremal
