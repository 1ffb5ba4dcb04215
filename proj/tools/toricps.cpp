#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "toric/engine.hpp"
#include "toric/oracle.hpp"

using json = nlohmann::json;
using namespace toric;

namespace {

struct Options {
    std::string input = "-";
    int order = 10;
    std::string format = "plain";
    long long budget = 100000000;
};

struct InputSpec {
    int rank = 0;
    std::vector<Vec> generators;
};

InputSpec parse_input(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("input: cannot open file '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("input: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw std::runtime_error("input: top level must be an object");
    if (!doc.contains("rank") || !doc["rank"].is_number_integer())
        throw std::runtime_error("input: field 'rank' must be an integer");
    if (!doc.contains("generators") || !doc["generators"].is_array())
        throw std::runtime_error("input: field 'generators' must be an array");
    InputSpec spec;
    spec.rank = doc["rank"].get<int>();
    if (spec.rank < 1) throw std::runtime_error("input: field 'rank' must be positive");
    for (const auto& row : doc["generators"]) {
        if (!row.is_array() || row.size() != static_cast<size_t>(spec.rank))
            throw std::runtime_error(
                "input: field 'generators' entries must be arrays of length 'rank'");
        Vec v;
        for (const auto& x : row) {
            if (!x.is_number_integer())
                throw std::runtime_error("input: field 'generators' must hold integers");
            v.push_back(Int(x.get<long long>()));
        }
        spec.generators.push_back(v);
    }
    if (spec.generators.empty())
        throw std::runtime_error("input: field 'generators' must be nonempty");
    return spec;
}

json vec_json(const Vec& v) {
    json a = json::array();
    for (const Int& x : v) a.push_back(x.str());
    return a;
}

json vecs_json(const std::vector<Vec>& vs) {
    json a = json::array();
    for (const Vec& v : vs) a.push_back(vec_json(v));
    return a;
}

json lpoly_json(const LPoly& p) {
    json a = json::array();
    for (size_t i = 0; i < p.c.size(); ++i) {
        if (p.c[i] == 0) continue;
        a.push_back({{"l", i}, {"c", p.c[i].str()}});
    }
    return a;
}

json rational_json(const MotivicRational& r) {
    json num = json::array();
    for (const auto& [deg, p] : r.num.t)
        for (size_t i = 0; i < p.c.size(); ++i) {
            if (p.c[i] == 0) continue;
            num.push_back({{"l", i}, {"t", deg}, {"c", p.c[i].str()}});
        }
    json den = json::array();
    for (const auto& f : r.den)
        den.push_back({{"a", f.a}, {"b", f.b}, {"mult", f.mult}});
    return {{"numerator", num}, {"denominator", den}};
}

json laurent_json(const LaurentRational& r) {
    json num = json::array();
    for (const auto& [e, c] : r.num.c) num.push_back({{"l", -e}, {"c", c.str()}});
    json den = json::array();
    for (const auto& [c, m] : r.den) den.push_back({{"c", c}, {"mult", m}});
    return {{"numerator", num}, {"denominator", den}};
}

std::string render_rational(const MotivicRational& r, const std::string& format) {
    if (format == "latex") return to_latex(r);
    if (format == "json") return rational_json(r).dump();
    return to_plain(r);
}

std::string render_laurent(const LaurentRational& r, const std::string& format) {
    if (format == "latex") return laurent_to_latex(r);
    if (format == "json") return laurent_json(r).dump();
    return laurent_to_plain(r);
}

int run_analyze(const Options& opt) {
    Budget budget{opt.budget};
    InputSpec in = parse_input(opt.input);
    SemigroupData s = build_semigroup(in.generators, in.rank, &budget);
    LogJacobianLadder l = log_jacobian_ladder(s);
    int d = s.rank;

    json out;
    out["rank"] = d;
    out["minimal_generators"] = vecs_json(s.original_generators);
    out["generators"] = vecs_json(s.generators);
    out["sigma_dual_rays"] = vecs_json(s.sigma_dual.rays);
    out["sigma_rays"] = vecs_json(s.sigma.rays);
    json ideals = json::array();
    for (int k = 1; k <= d; ++k) {
        json jk;
        jk["k"] = k;
        jk["points"] = vecs_json(l.ideals[static_cast<size_t>(k) - 1]);
        jk["newton_vertices"] = vecs_json(l.newton[static_cast<size_t>(k) - 1].vertices);
        jk["fan_rays"] = vecs_json(l.newton[static_cast<size_t>(k) - 1].dual_fan.rays());
        jk["refinement_rays"] = vecs_json(l.refinements[static_cast<size_t>(k) - 1].rays());
        ideals.push_back(jk);
    }
    out["log_jacobian"] = ideals;
    json table = json::array();
    for (const Vec& ray : l.refinements[static_cast<size_t>(d) - 1].rays()) {
        PhiProfile pr = phi_profile(l, ray);
        json row;
        row["ray"] = vec_json(ray);
        json phi = json::array(), psi = json::array(), ord = json::array();
        for (int k = 0; k < d; ++k) {
            phi.push_back(pr.phi[static_cast<size_t>(k)].str());
            psi.push_back(pr.psi[static_cast<size_t>(k)].str());
            ord.push_back(pr.ord[static_cast<size_t>(k)].str());
        }
        row["phi"] = phi;
        row["psi"] = psi;
        row["ord"] = ord;
        table.push_back(row);
    }
    out["profile_table"] = table;
    json bl = json::array();
    for (const auto& [a, b] : candidate_pole_set(l))
        bl.push_back({{"a", a.str()}, {"b", b.str()}});
    out["candidate_poles"] = bl;
    json dks = json::array();
    for (int k = 1; k <= d; ++k) {
        json cones = json::array();
        for (const Cone& tau : dk_cones(l, k)) cones.push_back(vecs_json(tau.rays));
        dks.push_back({{"k", k}, {"cones", cones}});
    }
    out["dk_cones"] = dks;

    if (opt.format == "json") {
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "rank: " << d << "\n";
        std::cout << "generators:";
        for (const Vec& g : s.generators) std::cout << " " << to_string(g);
        std::cout << "\n";
        for (int k = 1; k <= d; ++k) {
            std::cout << "J_" << k << " newton vertices:";
            for (const Vec& v : l.newton[static_cast<size_t>(k) - 1].vertices)
                std::cout << " " << to_string(v);
            std::cout << "\n";
        }
        std::cout << "refinement rays:";
        for (const Vec& r : l.refinements[static_cast<size_t>(d) - 1].rays())
            std::cout << " " << to_string(r);
        std::cout << "\n";
        for (const auto& row : table) {
            std::cout << "ray " << row["ray"].dump() << " phi=" << row["phi"].dump()
                      << " psi=" << row["psi"].dump() << "\n";
        }
        std::cout << "candidate poles B(Lambda):";
        for (const auto& [a, b] : candidate_pole_set(l))
            std::cout << " (" << a.str() << "," << b.str() << ")";
        std::cout << "\n";
        for (int k = 1; k <= d; ++k) {
            std::cout << "D_" << k << ":";
            for (const Cone& tau : dk_cones(l, k)) {
                std::cout << " cone{";
                for (size_t i = 0; i < tau.rays.size(); ++i)
                    std::cout << (i ? "," : "") << to_string(tau.rays[i]);
                std::cout << "}";
            }
            std::cout << "\n";
        }
    }
    return 0;
}

int run_series(const Options& opt) {
    Budget budget{opt.budget};
    InputSpec in = parse_input(opt.input);
    SemigroupData s = build_semigroup(in.generators, in.rank, &budget);
    MotivicRational p = p_geom_local(s, &budget);
    std::vector<LPoly> exp = expand(p, opt.order);
    if (opt.format == "json") {
        json out;
        out["series"] = rational_json(p);
        json coeffs = json::array();
        for (const LPoly& c : exp) coeffs.push_back(lpoly_json(c));
        out["expansion"] = coeffs;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "P_geom = " << render_rational(p, opt.format) << "\n";
        for (size_t i = 0; i < exp.size(); ++i)
            std::cout << "[T^" << i << "] " << exp[i].str() << "\n";
    }
    return 0;
}

int run_volume(const Options& opt) {
    Budget budget{opt.budget};
    InputSpec in = parse_input(opt.input);
    SemigroupData s = build_semigroup(in.generators, in.rank, &budget);
    VolumeReport v = motivic_volume(s, &budget);
    if (opt.format == "json") {
        json out;
        out["direct"] = laurent_json(v.direct);
        out["specialized"] = laurent_json(v.specialized);
        out["agree"] = true; // motivic_volume throws on mismatch
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "volume (direct)      = " << render_laurent(v.direct, opt.format) << "\n";
        std::cout << "volume (specialized) = " << render_laurent(v.specialized, opt.format)
                  << "\n";
        std::cout << "paths agree: yes\n";
    }
    return 0;
}

int run_global(const Options& opt) {
    Budget budget{opt.budget};
    InputSpec in = parse_input(opt.input);
    SemigroupData s = build_semigroup(in.generators, in.rank, &budget);
    GlobalSeriesReport g = p_geom_global_normal(s, &budget);
    if (opt.format == "json") {
        json out;
        out["series"] = rational_json(g.series);
        out["volume"] = laurent_json(g.volume);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "P_geom (global) = " << render_rational(g.series, opt.format) << "\n";
        std::cout << "volume (global) = " << render_laurent(g.volume, opt.format) << "\n";
    }
    return 0;
}

int run_check(const Options& opt) {
    Budget budget{opt.budget};
    InputSpec in = parse_input(opt.input);
    SemigroupData s = build_semigroup(in.generators, in.rank, &budget);
    CompareReport rep = compare(s, opt.order, &budget);
    if (opt.format == "json") {
        json out;
        out["all_equal"] = rep.all_equal;
        out["first_mismatch"] = rep.first_mismatch;
        json e = json::array(), o = json::array();
        for (const LPoly& c : rep.engine) e.push_back(lpoly_json(c));
        for (const LPoly& c : rep.oracle) o.push_back(lpoly_json(c));
        out["engine"] = e;
        out["oracle"] = o;
        std::cout << out.dump(2) << "\n";
    } else {
        for (size_t i = 0; i < rep.engine.size(); ++i) {
            bool ok = rep.engine[i] == rep.oracle[i];
            std::cout << "[T^" << i << "] engine=" << rep.engine[i].str()
                      << " oracle=" << rep.oracle[i].str() << (ok ? " ok" : " MISMATCH")
                      << "\n";
        }
        std::cout << (rep.all_equal ? "all coefficients match\n"
                                    : "mismatch at T^" + std::to_string(rep.first_mismatch) +
                                          "\n");
    }
    return rep.all_equal ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact motivic Poincare series of affine toric varieties"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("input", opt.input, "input JSON file ('-' for stdin)");
        cmd->add_option("--order", opt.order, "expansion order")->default_val(10);
        cmd->add_option("--format", opt.format, "plain|latex|json")
            ->default_val("plain")
            ->check(CLI::IsMember({"plain", "latex", "json"}));
        cmd->add_option("--budget", opt.budget, "enumeration step budget")
            ->default_val(100000000LL);
    };
    CLI::App* analyze = app.add_subcommand("analyze", "structural combinatorics");
    CLI::App* series = app.add_subcommand("series", "local motivic Poincare series");
    CLI::App* volume = app.add_subcommand("volume", "motivic volume, two ways");
    CLI::App* global = app.add_subcommand("global-series", "global series (normal case)");
    CLI::App* check = app.add_subcommand("check", "series vs. brute-force oracle");
    for (CLI::App* c : {analyze, series, volume, global, check}) add_common(c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(analyze)) return run_analyze(opt);
        if (app.got_subcommand(series)) return run_series(opt);
        if (app.got_subcommand(volume)) return run_volume(opt);
        if (app.got_subcommand(global)) return run_global(opt);
        if (app.got_subcommand(check)) return run_check(opt);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
