// conesmooth command-line front end: certification sweeps, parameter
// searches, and report emission. Every report embeds the parameters, the
// seed, the tolerances and the bound formulas used; exit code 0 only when
// all assertions of the invoked command pass.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "conesmooth/cone2d.hpp"
#include "conesmooth/constants.hpp"
#include "conesmooth/cubify.hpp"
#include "conesmooth/extension.hpp"
#include "conesmooth/panels.hpp"
#include "conesmooth/report.hpp"
#include "conesmooth/smoothing.hpp"

using namespace conesmooth;

namespace {

struct CommonOpts {
    double tol = 1e-10;
    unsigned seed = 1;
    std::string out;
    std::string format = "json";
    int workers = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--tol", o.tol, "tolerance");
    cmd->add_option("--seed", o.seed, "RNG seed (recorded in reports)");
    cmd->add_option("--out", o.out, "output path (stdout if empty)");
    cmd->add_option("--format", o.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--workers", o.workers, "worker threads for sweeps");
}

void emit(const CommonOpts& o, const Json& j, const CsvWriter& csv) {
    const std::string text = (o.format == "csv") ? csv.str() : j.dump(2) + "\n";
    if (o.out.empty())
        std::fputs(text.c_str(), stdout);
    else
        write_file(o.out, text);
}

AllRightComplex load_complex(const std::string& spec) {
    if (spec == "octahedron") return octahedron();
    if (spec == "16cell") return sixteen_cell();
    if (spec.rfind("circle:", 0) == 0) return circle_complex(std::stoi(spec.substr(7)));
    if (spec.rfind("bipyramid:", 0) == 0) return bipyramid(std::stoi(spec.substr(10)));
    std::ifstream f(spec);
    if (!f) throw CLI::ValidationError("--complex", "cannot open " + spec);
    Json j;
    f >> j;
    std::vector<VertexList> simplices;
    for (const auto& s : j.at("simplices")) simplices.push_back(s.get<VertexList>());
    const int nv = j.at("vertices").get<int>();
    if (j.value("closed", true)) return AllRightComplex::from_top(nv, simplices);
    return AllRightComplex::from_list(nv, simplices);
}

GlobalSmoothing smoothing_for(const std::string& spec) {
    if (spec == "octahedron") return octahedron_smoothing();
    if (spec.rfind("bipyramid:", 0) == 0) return bipyramid_smoothing(std::stoi(spec.substr(10)));
    throw CLI::ValidationError("--complex", "no builtin global smoothing for " + spec);
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        out.push_back(std::stod(s.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

// --- pinch2d -----------------------------------------------------------------

int cmd_pinch2d(const CommonOpts& o, int L, double eps, double dmax, int grid) {
    Json rows = Json::array();
    CsvWriter csv;
    csv.header = {"d", "r", "kmin", "kmax", "pass"};
    bool found = false;
    double found_d = 0.0, found_r = 0.0;
    Json profile = Json::array();
    for (double d = 8.0; d <= dmax && !found; d *= 2.0) {
        const double r = 2.0 * d + 8.0;
        const auto G = g_dim1(L, r, d);
        double kmin = -1.0, kmax = -1.0;
        for (int i = 0; i <= grid; ++i) {
            const double t = (r - d - 2.0) + (d + 4.0) * i / grid;
            const double k = G.curvature(t);
            kmin = std::min(kmin, k);
            kmax = std::max(kmax, k);
        }
        // exact-region equalities (P'2 above r, P'3 below r - d)
        const bool exact_above = G.fiber(r + 1.0) == sinh_sq(r + 1.0) * (L / 4.0) &&
                                 G.fiber(r) == sinh_sq(r) * (L / 4.0);
        const bool exact_below =
            G.fiber(r - d) == sinh_sq(r - d) && G.fiber(1.0) == sinh_sq(1.0);
        const bool pass =
            kmin >= -1.0 - eps && kmax <= -1.0 + eps && exact_above && exact_below;
        rows.push_back({{"d", d}, {"r", r}, {"kmin", kmin}, {"kmax", kmax}, {"pass", pass}});
        csv.add_row({format_double(d), format_double(r), format_double(kmin),
                     format_double(kmax), pass ? "1" : "0"});
        if (pass) {
            found = true;
            found_d = d;
            found_r = r;
            for (int i = 0; i <= grid; ++i) {
                const double t = (r - d - 2.0) + (d + 4.0) * i / grid;
                profile.push_back({{"t", t}, {"K", G.curvature(t)}});
            }
        }
    }
    Json j{{"command", "pinch2d"}, {"L", L},       {"eps", eps},   {"dmax", dmax},
           {"grid", grid},         {"seed", o.seed}, {"rows", rows}, {"found", found}};
    if (found) {
        j["d"] = found_d;
        j["r"] = found_r;
        if (!o.out.empty() && o.format == "csv") {
            CsvWriter prof;
            prof.header = {"t", "K"};
            for (const auto& p : profile)
                prof.add_row({format_double(p["t"]), format_double(p["K"])});
            emit(o, j, prof);
            return 0;
        }
    } else {
        j["status"] = "search-exhausted";
    }
    emit(o, j, csv);
    return found ? 0 : 1;
}

// --- identities ---------------------------------------------------------------

int cmd_identities(const CommonOpts& o, long samples, double s_lo, double s_hi) {
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> S(s_lo, s_hi), B(0.01, kPi / 2.0 - 0.01);
    double worst_pyth = 0.0, worst_sine = 0.0, worst_round = 0.0, worst_round_angle = 0.0,
           worst_form = 0.0, worst_axis = 0.0;
    for (long i = 0; i < samples; ++i) {
        const double s = S(rng), beta = B(rng);
        const auto [r, t] = polar_to_extension(s, beta);
        const auto T = RightTriangle::from_legs(r, t);
        worst_pyth = std::max(worst_pyth, T.pythagoras_defect());
        const auto T2 = RightTriangle::from_hyp_angle(s, beta);
        worst_sine = std::max(worst_sine, T2.sine_law_defect());
        const double s_back = hypotenuse(r, t);
        worst_round = std::max(worst_round, std::abs(s_back - s));
        // the angle comparison in the sine domain, where it is well
        // conditioned at beta near pi/2; the angle-domain error is reported
        // separately (it carries a 1/cos(beta) amplification from asin)
        worst_round = std::max(
            worst_round, std::abs(std::sin(angle_from_legs(r, s_back)) - std::sin(beta)));
        worst_round_angle =
            std::max(worst_round_angle, std::abs(angle_from_legs(r, s_back) - beta));

        // form identity sinh^2(s) dbeta^2 + ds^2 = cosh^2(r) dt^2 + dr^2 via
        // closed-form partials of (r, t)(s, beta); the t-partials use the
        // cancellation-free numerators sinh(s) cos^2(beta) / cosh^3(r) and
        // -cosh(s) sin(beta) cos(beta) sinh^2(s) / cosh^3(r)
        const double ch_r = std::cosh(r), sh_s = std::sinh(s), ch_s = std::cosh(s);
        if (std::isfinite(ch_r) && std::isfinite(sh_s)) {
            const double cb = std::cos(beta), sb = std::sin(beta);
            const double r_s = sb * ch_s / ch_r;
            const double r_b = cb * sh_s / ch_r;
            const double sh_t = std::sinh(t);
            if (sh_t > 1e-8) {
                const double t_s = sh_s * cb * cb / (ch_r * ch_r * ch_r * sh_t);
                const double t_b =
                    -ch_s * sb * cb * sh_s * sh_s / (ch_r * ch_r * ch_r * sh_t);
                const double e_ss = ch_r * ch_r * t_s * t_s + r_s * r_s;
                const double e_bb = ch_r * ch_r * t_b * t_b + r_b * r_b;
                const double e_sb = ch_r * ch_r * t_s * t_b + r_s * r_b;
                worst_form = std::max(worst_form, std::abs(e_ss - 1.0));
                worst_form = std::max(worst_form, std::abs(e_bb / (sh_s * sh_s) - 1.0));
                worst_form = std::max(worst_form, std::abs(e_sb) / (sh_s * sh_s));
            }
        }

        // r = asinh(sinh t sin beta): distance to the axis in the hyperboloid
        // model of H^2 (the height coordinate of the embedded point)
        const double tt = std::min(s, 5.0);
        const double x2 = std::sinh(tt) * std::sin(beta);
        worst_axis =
            std::max(worst_axis, std::abs(leg_from_hyp_angle(tt, beta) - std::asinh(x2)));
    }
    Json j{{"command", "identities"},
           {"samples", samples},
           {"seed", o.seed},
           {"s_range", {s_lo, s_hi}},
           {"tol", o.tol}};
    j["max_error"] = {{"pythagoras", worst_pyth},
                      {"law_of_sines", worst_sine},
                      {"round_trip", worst_round},
                      {"polar_extension_form", worst_form},
                      {"axis_distance", worst_axis}};
    j["round_trip_angle_domain"] = worst_round_angle;
    const double worst =
        std::max({worst_pyth, worst_sine, worst_round, worst_form, worst_axis});
    j["pass"] = worst <= o.tol;
    CsvWriter csv;
    csv.header = {"identity", "max_error", "tol", "pass"};
    for (const auto& [k, v] : j["max_error"].items())
        csv.add_row(
            {k, format_double(v), format_double(o.tol), double(v) <= o.tol ? "1" : "0"});
    emit(o, j, csv);
    return worst <= o.tol ? 0 : 1;
}

// --- bounds -------------------------------------------------------------------

int cmd_bounds_361(const CommonOpts& o, const std::vector<double>& t0s, double step) {
    Json rows = Json::array();
    CsvWriter csv;
    csv.header = {"t0", "name", "measured", "bound", "pass"};
    bool all = true;
    for (double t0 : t0s) {
        for (const auto& r : sinh_exp_panel(t0, 50.0, step)) {
            rows.push_back({{"t0", t0},
                            {"name", r.name},
                            {"measured", r.measured},
                            {"bound", r.bound},
                            {"pass", r.pass()}});
            csv.add_row({format_double(t0), r.name, format_double(r.measured),
                         format_double(r.bound), r.pass() ? "1" : "0"});
            all = all && r.pass();
        }
    }
    Json j{{"command", "bounds lemma361"},
           {"t0", t0s},
           {"step", step},
           {"rows", rows},
           {"pass", all}};
    emit(o, j, csv);
    return all ? 0 : 1;
}

int cmd_bounds_355(const CommonOpts& o, const std::vector<double>& r0s, double xi, int grid) {
    Json rows = Json::array();
    CsvWriter csv;
    csv.header = {"r0", "measured", "bound", "pass"};
    bool all = true;
    for (double r0 : r0s) {
        const auto res = rbar_c2_panel(r0, xi, grid);
        rows.push_back({{"r0", r0},
                        {"measured", res.measured},
                        {"bound", res.bound},
                        {"pass", res.pass()}});
        csv.add_row({format_double(r0), format_double(res.measured), format_double(res.bound),
                     res.pass() ? "1" : "0"});
        all = all && res.pass();
    }
    Json j{{"command", "bounds lemma355"},
           {"xi", xi},
           {"grid", grid},
           {"rows", rows},
           {"pass", all}};
    emit(o, j, csv);
    return all ? 0 : 1;
}

int cmd_bounds_332(const CommonOpts& o, const std::vector<double>& t0s, double xi) {
    const auto g0 = round_sphere_metric(1);
    const double c = cst::c_sphere(1);
    const auto rows_panel = chart_deviation_panel(g0, c, xi, t0s);
    Json rows = Json::array();
    CsvWriter csv;
    csv.header = {"t0", "measured", "bound", "pass"};
    bool all = true;
    for (size_t i = 0; i < rows_panel.size(); ++i) {
        const auto& r = rows_panel[i];
        rows.push_back({{"t0", t0s[i]},
                        {"measured", r.measured},
                        {"bound", r.bound},
                        {"pass", r.pass()}});
        csv.add_row({format_double(t0s[i]), format_double(r.measured),
                     format_double(r.bound), r.pass() ? "1" : "0"});
        all = all && r.pass();
    }
    Json j{{"command", "bounds prop332"}, {"xi", xi}, {"c", c}, {"rows", rows}, {"pass", all}};
    emit(o, j, csv);
    return all ? 0 : 1;
}

// --- widths -------------------------------------------------------------------

int cmd_widths(const CommonOpts& o, const std::string& sub, double varsigma, double c,
               double cprime, double r, int m, int k, int count) {
    Json j{{"command", "widths " + sub}, {"varsigma", varsigma}, {"c", c}};
    CsvWriter csv;
    bool pass = true;
    if (sub == "dnp") {
        j["cprime"] = cprime;
        pass = dnp_check_raw(varsigma, c, varsigma, cprime);
        j["dnp"] = pass;
        csv.header = {"varsigma", "c", "cprime", "dnp"};
        csv.add_row({format_double(varsigma), format_double(c), format_double(cprime),
                     pass ? "1" : "0"});
    } else if (sub == "natural") {
        const WidthSet B(varsigma, c);
        j["natural"] = is_natural(B);
        csv.header = {"varsigma", "c", "natural"};
        csv.add_row({format_double(varsigma), format_double(c), B.is_natural() ? "1" : "0"});
    } else if (sub == "induced") {
        const WidthSet B(varsigma, c);
        const auto ind = induced_link_widths(B, k, count);
        csv.header = {"j", "beta_induced", "sin_beta_induced"};
        Json arr = Json::array();
        for (int i = 0; i < count; ++i) {
            arr.push_back(
                {{"j", i}, {"beta", ind[size_t(i)]}, {"sin", std::sin(ind[size_t(i)])}});
            csv.add_row({std::to_string(i), format_double(ind[size_t(i)]),
                         format_double(std::sin(ind[size_t(i)]))});
        }
        j["k"] = k;
        j["induced"] = arr;
    } else if (sub == "schedule") {
        RadiusSchedule S(r, m, varsigma, c);
        csv.header = {"k", "r_k", "s_mk", "r_mk"};
        Json arr = Json::array();
        for (int kk = 0; kk <= m - 2; ++kk) {
            arr.push_back({{"k", kk},
                           {"r_k", S.r_k(kk)},
                           {"s_mk", S.s_mk(kk)},
                           {"r_mk", S.r_mk(kk)}});
            csv.add_row({std::to_string(kk), format_double(S.r_k(kk)),
                         format_double(S.s_mk(kk)), format_double(S.r_mk(kk))});
            pass = pass && S.r_mk(kk) < S.s_mk(kk);
        }
        j["r"] = r;
        j["m"] = m;
        j["rows"] = arr;
    }
    j["pass"] = pass;
    emit(o, j, csv);
    return pass ? 0 : 1;
}

// --- constants -----------------------------------------------------------------

int cmd_constants(const CommonOpts& o, int n, double xi, double c, double cstar, double eps,
                  int k) {
    const auto T = constants(n, xi, c, cstar, eps, k);
    auto entry = [](const LogValue& v) { return Json{{"log", v.log_v}, {"value", v.value()}}; };
    Json j{{"command", "constants"},
           {"n", n},
           {"xi", xi},
           {"c", c},
           {"c_star", cstar},
           {"eps", eps},
           {"k", k},
           {"c_sphere_n", T.c_sphere_n}};
    j["C"] = entry(T.C);
    j["C1"] = entry(T.C1);
    j["C2"] = entry(T.C2);
    j["C3"] = entry(T.C3);
    j["C3_prime"] = entry(T.C3p);
    j["C4"] = entry(T.C4);
    j["C6"] = entry(T.C6);
    j["eps0"] = entry(T.eps0);
    j["a_n+1"] = T.a_n;
    j["a_prime_n+1"] = T.a_prime_n;
    j["d_n+1"] = entry(T.d_n);
    j["lambda_n+1"] = T.lambda_n;
    j["R_n+1_k"] = T.R_nk;
    CsvWriter csv;
    csv.header = {"name", "log", "value"};
    for (const auto& [key, v] : j.items())
        if (v.is_object() && v.contains("log"))
            csv.add_row({key, format_double(v["log"]), format_double(v["value"])});
    emit(o, j, csv);
    return 0;
}

// --- patches -------------------------------------------------------------------

int cmd_patches_cover(const CommonOpts& o, const std::string& complex_name, long samples,
                      double r, double xi, double varsigma, double c, double band_width) {
    const auto P = load_complex(complex_name);
    RadiusSchedule sched(r, P.dim(), varsigma, c);
    const double ball = sched.r_k(P.dim() - 2) - (2.0 + xi);
    const auto tops = P.top_simplices();

    std::vector<int> covered(size_t(samples), 0), disjoint_bad(size_t(samples), 0);
    parallel_for(samples, o.workers, [&](long i) {
        std::mt19937_64 rng(o.seed + 1000003UL * static_cast<unsigned long>(i));
        const int tri = tops[size_t(i) % tops.size()];
        std::uniform_real_distribution<double> radial(ball, ball + band_width);
        ConePoint p{sample_in_simplex(P, tri, rng), radial(rng)};
        const auto labels = classify_patch(P, p, sched, xi);
        covered[size_t(i)] = (!labels.empty() && labels[0].kind != PatchLabel::Ball) ? 1 : 0;
        std::vector<int> ys;
        for (const auto& l : labels)
            if (l.kind == PatchLabel::YSimplex) ys.push_back(l.simplex);
        for (size_t a = 0; a < ys.size(); ++a)
            for (size_t b = a + 1; b < ys.size(); ++b) {
                const auto& va = P.verts(ys[a]);
                const auto& vb = P.verts(ys[b]);
                VertexList common;
                std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(),
                                      std::back_inserter(common));
                if (common.empty() || va.size() == vb.size()) disjoint_bad[size_t(i)]++;
            }
    });
    long cov = 0, bad = 0;
    for (long i = 0; i < samples; ++i) {
        cov += covered[size_t(i)];
        bad += disjoint_bad[size_t(i)];
    }
    const bool pass = (cov == samples) && (bad == 0);
    Json j{{"command", "patches cover"},
           {"complex", complex_name},
           {"samples", samples},
           {"r", r},
           {"r_m2", sched.r_k(P.dim() - 2)},
           {"xi", xi},
           {"varsigma", varsigma},
           {"c", c},
           {"seed", o.seed},
           {"coverage", double(cov) / double(samples)},
           {"disjointness_violations", bad},
           {"pass", pass}};
    CsvWriter csv;
    csv.header = {"samples", "coverage", "disjointness_violations", "pass"};
    csv.add_row({std::to_string(samples), format_double(double(cov) / double(samples)),
                 std::to_string(bad), pass ? "1" : "0"});
    emit(o, j, csv);
    return pass ? 0 : 1;
}

int cmd_patches_absorb(const CommonOpts& o, const std::string& complex_name, long rays,
                       const std::vector<double>& radii, double varsigma, double c) {
    const auto P = load_complex(complex_name);
    RadiusSchedule sched(10.0, P.dim(), varsigma, c);
    const auto tops = P.top_simplices();
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> B(-1.0, 1.0);
    long mismatches = 0, checked = 0;
    // base radius whose schedule has r_{m-2} equal to the probed radius
    const double sin_am2 = sched.alpha.sin_beta(P.dim() - 2);
    for (long i = 0; i < rays; ++i) {
        const auto x = sample_in_simplex(P, tops[size_t(i) % tops.size()], rng);
        const double b = B(rng);
        const auto res = ray_absorption(P, x, b, sched);
        for (double rm2 : radii) {
            if (rm2 <= res.r_threshold) continue;
            const double rr = detail::asinh_exp(detail::log_sinh(rm2) + std::log(sin_am2));
            RadiusSchedule at(rr, P.dim(), varsigma, c);
            const auto labels = classify_patch(P, {x, rm2 + b}, at, 0.0);
            bool found = false;
            for (const auto& l : labels)
                if (l == res.label) found = true;
            if (!found) ++mismatches;
            ++checked;
        }
    }
    const bool pass = mismatches == 0;
    Json j{{"command", "patches absorb"},
           {"complex", complex_name},
           {"rays", rays},
           {"radii", radii},
           {"seed", o.seed},
           {"checked", checked},
           {"mismatches", mismatches},
           {"pass", pass}};
    CsvWriter csv;
    csv.header = {"rays", "checked", "mismatches", "pass"};
    csv.add_row({std::to_string(rays), std::to_string(checked), std::to_string(mismatches),
                 pass ? "1" : "0"});
    emit(o, j, csv);
    return pass ? 0 : 1;
}

int cmd_patches_dnp(const CommonOpts& o, const std::string& complex_name, long samples,
                    double varsigma, double cb, double ca) {
    const auto P = load_complex(complex_name);
    WidthSet Bw(varsigma, cb), Aw(varsigma, ca);
    if (!dnp_check(Bw, Aw)) {
        Json j{{"command", "patches dnp"}, {"error", "width pair fails the DNP criterion"}};
        emit(o, j, {});
        return 1;
    }
    const auto stats = dnp_violations(P, Bw, Aw, samples, o.seed);
    const bool pass = stats.violations == 0;
    Json j{{"command", "patches dnp"},
           {"complex", complex_name},
           {"samples", samples},
           {"varsigma", varsigma},
           {"c", cb},
           {"cprime", ca},
           {"seed", o.seed},
           {"pair_hits", stats.pair_hits},
           {"violations", stats.violations},
           {"pass", pass}};
    CsvWriter csv;
    csv.header = {"samples", "pair_hits", "violations", "pass"};
    csv.add_row({std::to_string(samples), std::to_string(stats.pair_hits),
                 std::to_string(stats.violations), pass ? "1" : "0"});
    emit(o, j, csv);
    return pass ? 0 : 1;
}

// --- cutlimits ------------------------------------------------------------------

int cmd_cutlimits(const CommonOpts& o, const std::string& family,
                  const std::vector<double>& lams, double b, double beta0, double d,
                  int k_prime) {
    RadialFamily fam;
    Vec probe;
    const int chart = 0;
    std::function<Mat(int, const Vec&)> closed;
    if (family == "dim1") {
        fam.atlas = circle_atlas();
        fam.at = [k_prime, d](double lam) { return g_dim1(k_prime, lam, d).as_radial(); };
        probe = Vec::Zero(1);
        const double expect = g_dim1(k_prime, lams[0], d).cut_limit(b);
        closed = [expect](int, const Vec&) { return (expect * Mat::Identity(1, 1)).eval(); };
    } else if (family == "continued") {
        fam.atlas = circle_atlas();
        const double kk = k_prime / 4.0;
        fam.at = [kk, d](double lam) {
            return continuation(sinh_warped(scaled_metric(round_sphere_metric(1), kk)), lam, d);
        };
        probe = Vec::Zero(1);
        closed = [kk, b, d](int c2, const Vec& x) {
            return continued_cut_limit(scaled_metric(round_sphere_metric(1), kk), b, d, c2, x);
        };
    } else if (family == "reindexed") {
        const double kk = k_prime / 4.0;
        fam.at = [kk, d, beta0](double s) {
            const double lam = reindex_extension_family(beta0, s);
            return hyperbolic_extension(
                continuation(sinh_warped(scaled_metric(round_sphere_metric(1), kk)), lam, d), 1);
        };
        fam.atlas = fam.at(lams[0]).atlas;
        probe = Vec(2);
        probe << 0.0, 0.9;
        const double b_eff = b + std::log(std::sin(0.9) / std::sin(beta0));
        closed = [kk, b_eff, d](int, const Vec& x) {
            Mat out = Mat::Zero(2, 2);
            out(0, 0) = std::sin(x[1]) * std::sin(x[1]) *
                        continued_cut_limit(scaled_metric(round_sphere_metric(1), kk), b_eff, d,
                                            0, Vec::Zero(1))(0, 0);
            out(1, 1) = 1.0;
            return out;
        };
    } else {
        throw CLI::ValidationError("--family", "unknown family " + family);
    }
    const auto rep = cut_limit_estimate(fam, b, lams, chart, probe, closed);
    Json j{{"command", "cutlimits"},
           {"family", family},
           {"lambdas", lams},
           {"b", b},
           {"d", d},
           {"converged", rep.converged},
           {"at_floor", rep.at_floor},
           {"cauchy", rep.cauchy},
           {"formula_deviation", rep.formula_deviation},
           {"tol", o.tol}};
    const bool pass = rep.converged && (rep.formula_deviation <= o.tol);
    j["pass"] = pass;
    CsvWriter csv;
    csv.header = {"family", "converged", "formula_deviation", "pass"};
    csv.add_row({family, rep.converged ? "1" : "0", format_double(rep.formula_deviation),
                 pass ? "1" : "0"});
    emit(o, j, csv);
    return pass ? 0 : 1;
}

// --- pinchcone (2-complexes) -----------------------------------------------------

int cmd_pinchcone(const CommonOpts& o, const std::string& complex_name, double eps, double d2,
                  double d3_start, double d3_max, long band_samples) {
    const auto P = load_complex(complex_name);
    const auto phi = smoothing_for(complex_name);

    Json rows = Json::array();
    bool found = false;
    double kmin_best = 0.0, kmax_best = 0.0, d3_found = 0.0, d2_found = 0.0, r_found = 0.0;
    std::string stop_reason;
    double d2_try = d2;
    for (double d3 = d3_start; d3 <= d3_max && !found; d3 *= 2.0, d2_try *= 2.0) {
        SmoothingParams prm;
        prm.xi = 0.5;
        prm.d = {d2_try, d3};
        prm.r = 2.0 * std::max(d2_try, d3) + 2.0;
        prm.c = 1.1;
        prm.varsigma = 0.005;
        std::unique_ptr<Cone2D> cone_ptr;
        try {
            cone_ptr = std::make_unique<Cone2D>(P, prm, phi);
        } catch (const std::domain_error& e) {
            stop_reason = e.what();
            break;
        }
        Cone2D& cone = *cone_ptr;

        double kmin = -1.0, kmax = -1.0;
        bool finite = true;
        // analytic vertex-patch panel through the link band
        for (int v : P.simplices_of_dim(0)) {
            const int vid = P.verts(v)[0];
            for (int i = 0; i <= 200; ++i) {
                const double rp = (prm.r - d2_try - 1.0) + (d2_try + 2.0) * i / 200.0;
                const auto kk = cone.vertex_patch_curvatures(vid, rp);
                kmin = std::min(kmin, kk.min());
                kmax = std::max(kmax, kk.max());
            }
        }
        // finite-difference sweep through the continuation bands
        const double ls = cone.lambda_star(), dp = cone.forcing_width();
        std::mt19937_64 rng(o.seed);
        std::uniform_real_distribution<double> U(0.0, 1.0);
        for (long i = 0; i < band_samples; ++i) {
            const int vid =
                P.verts(P.simplices_of_dim(0)[size_t(i) % P.simplices_of_dim(0).size()])[0];
            const double t0 = ls - dp + 1.0 + (dp + 1.0) * U(rng);
            const double gam = 0.3 + 1.0 * U(rng);
            const double lam = cone.stars().at(vid).length() * U(rng);
            const auto chart = cone.polar_chart(vid, gam, lam, t0);
            auto fn = [&chart](const Vec& q) { return chart(q); };
            const auto range = sectional_range_3d(fn, Vec::Zero(3), 2e-3);
            if (!std::isfinite(range.min) || !std::isfinite(range.max)) finite = false;
            kmin = std::min(kmin, range.min);
            kmax = std::max(kmax, range.max);
        }
        for (const auto& kk : {kmin, kmax})
            if (!std::isfinite(kk)) finite = false;
        const bool pass = finite && kmin >= -1.0 - eps && kmax <= -1.0 + eps;
        rows.push_back({{"d2", d2_try},
                        {"d3", d3},
                        {"r", prm.r},
                        {"kmin", kmin},
                        {"kmax", kmax},
                        {"finite", finite},
                        {"pass", pass}});
        if (pass) {
            found = true;
            kmin_best = kmin;
            kmax_best = kmax;
            d3_found = d3;
            d2_found = d2_try;
            r_found = prm.r;
        }
    }
    Json j{{"command", "pinchcone"}, {"complex", complex_name}, {"eps", eps},
           {"seed", o.seed},         {"rows", rows},            {"found", found}};
    if (found) {
        j["d2"] = d2_found;
        j["d3"] = d3_found;
        j["r"] = r_found;
        j["kmin"] = kmin_best;
        j["kmax"] = kmax_best;
    } else {
        j["status"] = stop_reason.empty() ? "search-exhausted" : ("stopped: " + stop_reason);
    }
    CsvWriter csv;
    csv.header = {"d2", "d3", "r", "kmin", "kmax", "pass"};
    for (const auto& row : rows)
        csv.add_row({format_double(row["d2"]), format_double(row["d3"]),
                     format_double(row["r"]), format_double(row["kmin"]),
                     format_double(row["kmax"]), row["pass"].get<bool>() ? "1" : "0"});
    emit(o, j, csv);
    return found ? 0 : 1;
}

// --- cubify ---------------------------------------------------------------------

int cmd_cubify(const CommonOpts& o, const std::string& complex_name, bool closed) {
    AllRightComplex S = (complex_name.rfind("simplex:", 0) == 0)
                            ? standalone_simplex(std::stoi(complex_name.substr(8)))
                            : load_complex(complex_name);
    const auto C = cubify(S);
    const auto rep = validate_cubification(C, closed);
    Json j{{"command", "cubify"},
           {"complex", complex_name},
           {"cubes", C.cubes.size()},
           {"face_counts", rep.face_counts},
           {"euler", rep.euler},
           {"edge_manifold", rep.edge_manifold},
           {"pass", rep.ok}};
    CsvWriter csv;
    csv.header = {"cubes", "euler", "edge_manifold", "pass"};
    csv.add_row({std::to_string(C.cubes.size()), std::to_string(rep.euler),
                 rep.edge_manifold ? "1" : "0", rep.ok ? "1" : "0"});
    emit(o, j, csv);
    return rep.ok ? 0 : 1;
}

// --- dump -----------------------------------------------------------------------

int cmd_dump(const CommonOpts& o, const std::string& model, int n, int per_axis,
             int histogram_bins) {
    ModelChart chart(n, 1.0, 0.02);
    MetricField f;
    if (model == "exp")
        f = reference_metric(chart);
    else if (model == "sinh")
        f = warped_variable_field(
            chart, [](double t) { return std::sinh(t + 3.0); },
            [n](const Vec& x, double) {
                return n == 1 ? Mat::Identity(1, 1).eval() : gnomonic_round_metric(x);
            });
    else if (model == "cosh")
        f = warped_variable_field(
            chart, [](double t) { return std::cosh(t + 3.0); },
            [n](const Vec& x, double) {
                return n == 1 ? Mat::Identity(1, 1).eval() : gnomonic_round_metric(x);
            });
    else
        throw CLI::ValidationError("--model", "unknown model " + model);

    CsvWriter csv;
    for (int a = 0; a < chart.dim(); ++a) csv.header.push_back("x" + std::to_string(a));
    for (int i = 0; i < chart.dim(); ++i)
        for (int jj = 0; jj < chart.dim(); ++jj)
            csv.header.push_back("g" + std::to_string(i) + std::to_string(jj));
    Json rows = Json::array();
    for (const Vec& p : chart_lattice(chart, per_axis)) {
        const Mat g = f(p);
        std::vector<std::string> row;
        Json coords = Json::array(), comps = Json::array();
        for (int a = 0; a < chart.dim(); ++a) {
            row.push_back(format_double(p[a]));
            coords.push_back(p[a]);
        }
        for (int i = 0; i < chart.dim(); ++i)
            for (int jj = 0; jj < chart.dim(); ++jj) {
                row.push_back(format_double(g(i, jj)));
                comps.push_back(g(i, jj));
            }
        csv.add_row(row);
        rows.push_back({{"x", coords}, {"g", comps}});
    }
    Json j{{"command", "dump"}, {"model", model}, {"n", n}, {"rows", rows}};
    if (histogram_bins > 0) {
        // sectional-curvature histogram over random planes at the lattice
        std::mt19937_64 rng(o.seed);
        std::uniform_real_distribution<double> U(-1.0, 1.0);
        std::vector<double> ks;
        for (const Vec& p : chart_lattice(chart, std::min(per_axis, 5))) {
            PlaneSpec pl;
            pl.point = p;
            pl.u = Vec(chart.dim());
            pl.v = Vec(chart.dim());
            for (int a = 0; a < chart.dim(); ++a) {
                pl.u[a] = U(rng);
                pl.v[a] = U(rng);
            }
            pl.u[0] += 1.5;
            pl.v[chart.dim() - 1] += 1.5;
            ks.push_back(sectional_curvature(f, pl));
        }
        double lo = ks[0], hi = ks[0];
        for (double k : ks) {
            lo = std::min(lo, k);
            hi = std::max(hi, k);
        }
        const double width = (hi - lo) > 1e-12 ? (hi - lo) : 1e-12;
        std::vector<long> bins(size_t(histogram_bins), 0);
        for (double k : ks) {
            int b = int((k - lo) / width * histogram_bins);
            if (b >= histogram_bins) b = histogram_bins - 1;
            bins[size_t(b)]++;
        }
        CsvWriter hist;
        hist.header = {"bin_lo", "bin_hi", "count"};
        Json jb = Json::array();
        for (int b = 0; b < histogram_bins; ++b) {
            const double blo = lo + width * b / histogram_bins;
            const double bhi = lo + width * (b + 1) / histogram_bins;
            hist.add_row({format_double(blo), format_double(bhi),
                          std::to_string(bins[size_t(b)])});
            jb.push_back({{"lo", blo}, {"hi", bhi}, {"count", bins[size_t(b)]}});
        }
        j["curvature_histogram"] = jb;
        emit(o, j, hist);
        return 0;
    }
    emit(o, j, csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical toolkit for smoothed hyperbolic cone metrics"};
    app.require_subcommand(1);

    CommonOpts o;

    int L = 5;
    double eps = 0.1, dmax = 64.0;
    int grid = 10000;
    auto* pinch = app.add_subcommand("pinch2d", "search (r, d) pinching the 2D cone metric");
    pinch->add_option("--L", L, "number of quarter-circle segments")->required();
    pinch->add_option("--eps", eps, "pinching tolerance");
    pinch->add_option("--dmax", dmax, "largest band width tried");
    pinch->add_option("--grid", grid, "radial grid points");
    add_common(pinch, o);

    long samples = 100000;
    double s_lo = 0.1, s_hi = 20.0;
    auto* ident = app.add_subcommand("identities", "hyperbolic right-triangle identity sweeps");
    ident->add_option("--samples", samples, "sample count");
    ident->add_option("--smin", s_lo, "smallest hypotenuse");
    ident->add_option("--smax", s_hi, "largest hypotenuse");
    add_common(ident, o);

    auto* bounds = app.add_subcommand("bounds", "displayed-inequality panels");
    bounds->require_subcommand(1);
    std::string t0s_str = "2,3,5,10", r0s_str = "10,15", t0s332_str = "5,10,15";
    double step = 1e-3, xi355 = 1.0, xi332 = 2.0;
    int grid355 = 64;
    auto* b361 = bounds->add_subcommand("lemma361", "sinh/exp reweighting estimates");
    b361->add_option("--t0", t0s_str, "comma-separated t0 values");
    b361->add_option("--step", step, "grid step on [0, 50]");
    add_common(b361, o);
    auto* b355 = bounds->add_subcommand("lemma355", "rbar C^2 chart estimate");
    b355->add_option("--r0", r0s_str, "comma-separated r0 values");
    b355->add_option("--xi", xi355, "chart excess");
    b355->add_option("--grid", grid355, "grid per axis");
    add_common(b355, o);
    auto* b332 = bounds->add_subcommand("prop332", "chart deviation of the exponential warp");
    b332->add_option("--t0", t0s332_str, "comma-separated chart centers");
    b332->add_option("--xi", xi332, "chart excess");
    add_common(b332, o);

    auto* widths = app.add_subcommand("widths", "sets of widths and schedules");
    widths->require_subcommand(1);
    double varsigma = 0.5, cw = 1.0, cprime = 1.0, rw = 10.0;
    int mw = 2, kw = 0, count = 5;
    {
        auto* s = widths->add_subcommand("dnp", "disjoint-neighborhood criterion");
        s->add_option("--varsigma", varsigma, "varsigma");
        s->add_option("--c", cw, "scale of B");
        s->add_option("--cprime", cprime, "scale of A");
        add_common(s, o);
        auto* s2 = widths->add_subcommand("natural", "naturality test");
        s2->add_option("--varsigma", varsigma, "varsigma");
        s2->add_option("--c", cw, "scale");
        add_common(s2, o);
        auto* s3 = widths->add_subcommand("induced", "induced link widths");
        s3->add_option("--varsigma", varsigma, "varsigma");
        s3->add_option("--c", cw, "scale");
        s3->add_option("--k", kw, "simplex dimension");
        s3->add_option("--count", count, "terms");
        add_common(s3, o);
        auto* s4 = widths->add_subcommand("schedule", "radius/angle schedule");
        s4->add_option("--varsigma", varsigma, "varsigma");
        s4->add_option("--c", cw, "scale");
        s4->add_option("--r", rw, "base radius");
        s4->add_option("--m", mw, "complex dimension");
        add_common(s4, o);
    }

    int cn = 1, ck = 1;
    double cxi = 2.0, cc = 2.0, ccstar = 2.0, ceps = 0.1;
    auto* consts = app.add_subcommand("constants", "explicit constants table");
    consts->add_option("--n", cn, "fiber dimension");
    consts->add_option("--xi", cxi, "chart excess");
    consts->add_option("--c", cc, "boundedness constant");
    consts->add_option("--cstar", ccstar, "boundedness constant of g_*");
    consts->add_option("--eps", ceps, "target hyperbolicity");
    consts->add_option("--k", ck, "extension dimension");
    add_common(consts, o);

    auto* patches = app.add_subcommand("patches", "patch systems on hyperbolic cones");
    patches->require_subcommand(1);
    std::string complex_name = "octahedron";
    long psamples = 100000, rays = 1000;
    double pr = 15.0, pxi = 0.5, pvarsigma = 0.005, pc = 1.1, band = 30.0;
    std::string radii_str = "10,20,40,80";
    double dnp_varsigma = 0.35, dnp_cb = 1.2, dnp_ca = 1.0;
    auto* pcov = patches->add_subcommand("cover", "coverage and disjointness Monte Carlo");
    pcov->add_option("--complex", complex_name, "builtin name or JSON path");
    pcov->add_option("--samples", psamples, "sample count");
    pcov->add_option("--r", pr, "schedule base radius");
    pcov->add_option("--xi", pxi, "excess");
    pcov->add_option("--varsigma", pvarsigma, "width varsigma");
    pcov->add_option("--c", pc, "width scale");
    pcov->add_option("--band", band, "radial band width above the ball");
    add_common(pcov, o);
    auto* pabs = patches->add_subcommand("absorb", "ray absorption vs direct classification");
    pabs->add_option("--complex", complex_name, "builtin name or JSON path");
    pabs->add_option("--rays", rays, "ray count");
    pabs->add_option("--radii", radii_str, "comma-separated r_{m-2} values");
    pabs->add_option("--varsigma", pvarsigma, "width varsigma");
    pabs->add_option("--c", pc, "width scale");
    add_common(pabs, o);
    auto* pdnp = patches->add_subcommand("dnp", "geometric disjoint-neighborhood validation");
    pdnp->add_option("--complex", complex_name, "builtin name or JSON path");
    pdnp->add_option("--samples", psamples, "sample count");
    pdnp->add_option("--varsigma", dnp_varsigma, "width varsigma");
    pdnp->add_option("--c", dnp_cb, "scale of B");
    pdnp->add_option("--cprime", dnp_ca, "scale of A");
    add_common(pdnp, o);

    auto* cuts = app.add_subcommand("cutlimits", "cut-limit extrapolation for families");
    std::string family = "dim1", lams_str = "20,40,80";
    double cb_off = -4.0, cbeta0 = kPi / 6.0, cd = 15.5;
    int ckp = 5;
    cuts->add_option("--family", family, "dim1 | continued | reindexed");
    cuts->add_option("--lambdas", lams_str, "comma-separated indices");
    cuts->add_option("--b", cb_off, "cut offset");
    cuts->add_option("--beta0", cbeta0, "reindexation angle");
    cuts->add_option("--d", cd, "forcing width");
    cuts->add_option("--kprime", ckp, "segment count of the circle fiber");
    add_common(cuts, o);

    auto* pc2 = app.add_subcommand("pinchcone", "curvature range of the smoothed 2-cone");
    std::string cone_complex = "bipyramid:5";
    double ceps2 = 0.15, cd2 = 16.0, cd3s = 16.0, cd3m = 64.0;
    long band_samples = 60;
    pc2->add_option("--complex", cone_complex, "builtin with a global smoothing");
    pc2->add_option("--eps", ceps2, "pinching tolerance");
    pc2->add_option("--d2", cd2, "starting link band width (doubled along the search)");
    pc2->add_option("--d3", cd3s, "starting continuation width");
    pc2->add_option("--d3max", cd3m, "largest continuation width tried");
    pc2->add_option("--band-samples", band_samples, "FD curvature samples per band");
    add_common(pc2, o);

    auto* cub = app.add_subcommand("cubify", "cubification with combinatorial validation");
    std::string cub_complex = "octahedron";
    bool cub_closed = true;
    cub->add_option("--complex", cub_complex, "builtin, JSON path, or simplex:<n>");
    cub->add_flag("--closed,!--no-closed", cub_closed, "expect a closed manifold");
    add_common(cub, o);

    auto* dump = app.add_subcommand("dump", "metric sample dumps and curvature histograms");
    std::string dmodel = "sinh";
    int dn = 1, dper = 9, dhist = 0;
    dump->add_option("--model", dmodel, "sinh | exp | cosh");
    dump->add_option("--n", dn, "fiber dimension");
    dump->add_option("--per-axis", dper, "lattice resolution");
    dump->add_option("--histogram", dhist, "emit a curvature histogram with this many bins");
    add_common(dump, o);

    CLI11_PARSE(app, argc, argv);

    try {
        if (pinch->parsed()) return cmd_pinch2d(o, L, eps, dmax, grid);
        if (ident->parsed()) return cmd_identities(o, samples, s_lo, s_hi);
        if (b361->parsed()) return cmd_bounds_361(o, parse_list(t0s_str), step);
        if (b355->parsed()) return cmd_bounds_355(o, parse_list(r0s_str), xi355, grid355);
        if (b332->parsed()) return cmd_bounds_332(o, parse_list(t0s332_str), xi332);
        if (widths->parsed())
            return cmd_widths(o, widths->get_subcommands().front()->get_name(), varsigma, cw,
                              cprime, rw, mw, kw, count);
        if (consts->parsed()) return cmd_constants(o, cn, cxi, cc, ccstar, ceps, ck);
        if (pcov->parsed())
            return cmd_patches_cover(o, complex_name, psamples, pr, pxi, pvarsigma, pc, band);
        if (pabs->parsed())
            return cmd_patches_absorb(o, complex_name, rays, parse_list(radii_str), pvarsigma,
                                      pc);
        if (pdnp->parsed())
            return cmd_patches_dnp(o, complex_name, psamples, dnp_varsigma, dnp_cb, dnp_ca);
        if (cuts->parsed())
            return cmd_cutlimits(o, family, parse_list(lams_str), cb_off, cbeta0, cd, ckp);
        if (pc2->parsed())
            return cmd_pinchcone(o, cone_complex, ceps2, cd2, cd3s, cd3m, band_samples);
        if (cub->parsed()) return cmd_cubify(o, cub_complex, cub_closed);
        if (dump->parsed()) return cmd_dump(o, dmodel, dn, dper, dhist);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
