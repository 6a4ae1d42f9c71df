#include "necklace/cli.hpp"
#include "necklace/acceptance.hpp"
#include "necklace/crown.hpp"
#include "necklace/energy.hpp"
#include "necklace/errors.hpp"
#include "necklace/kernels.hpp"
#include "necklace/nodal.hpp"
#include "necklace/trig_sums.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <variant>
#include <vector>

namespace necklace {

namespace {

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string csv_cell(const Cell& c)
{
    if (auto d = std::get_if<double>(&c)) {
        if (std::isnan(*d))
            return "";
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", *d);
        return buf;
    }
    if (auto i = std::get_if<long long>(&c))
        return std::to_string(*i);
    return std::get<std::string>(c);
}

void write_table(std::ostream& os, const Table& t, const std::string& format, const nlohmann::json& meta)
{
    if (format == "json") {
        nlohmann::json j = meta;
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& r : t.rows) {
            nlohmann::json o = nlohmann::json::object();
            for (std::size_t i = 0; i < r.size(); ++i) {
                std::visit([&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>)
                        o[t.columns[i]] = std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v);
                    else
                        o[t.columns[i]] = v;
                }, r[i]);
            }
            rows.push_back(o);
        }
        j["rows"] = rows;
        os << j.dump(2) << "\n";
        return;
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i)
            os << (i ? "," : "") << csv_cell(r[i]);
        os << "\n";
    }
}

template <class T>
std::vector<T> parse_list(const std::string& s)
{
    std::vector<T> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        std::size_t pos = 0;
        T v;
        if constexpr (std::is_same_v<T, int>)
            v = std::stoi(item, &pos);
        else
            v = std::stod(item, &pos);
        if (pos != item.size())
            throw CLI::ValidationError("list", "bad number '" + item + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw CLI::ValidationError("list", "empty list");
    return out;
}

const double kNaN = std::nan("");

Table run_sums(const std::string& variant, int k, const std::string& ns, const std::string& xs)
{
    Table t{{"variant", "k", "n", "x", "direct", "contour", "asym", "rel_err"}, {}};
    const SumVariant v = parse_variant(variant);
    for (int n : parse_list<int>(ns))
        for (double x : parse_list<double>(xs)) {
            const double dir = sum_direct({v, k, n, x});
            double con = kNaN, asy = kNaN, rel = kNaN;
            if (v == SumVariant::alt && k == 1 && x > 0)
                con = s1_contour(n, x);
            if (v == SumVariant::alt && x > 0)
                asy = s_asym(k, n, x).value;
            else if (x == 0) {
                try {
                    asy = csc_asym(v, k, n);
                } catch (const UnsupportedError&) {
                }
            }
            if (!std::isnan(con))
                rel = std::fabs(con - dir) / std::fabs(dir);
            else if (!std::isnan(asy))
                rel = std::fabs(asy / dir - 1.0);
            t.rows.push_back({variant, (long long)k, (long long)n, x, dir, con, asy, rel});
        }
    return t;
}

Table run_ansatz(int m, int points, std::uint64_t seed, nlohmann::json& meta)
{
    const CrownParams p = make_crown(m);
    const MidValue mid = q_mid_lower(p);
    meta["m"] = m;
    meta["mu"] = p.mu;
    meta["d"] = p.d;
    meta["q_mid"] = mid.value;
    meta["q_mid_bound"] = mid.bound;
    Table t{{"x", "y", "z", "u_bubble", "u_star", "psi_d1", "kelvin_err"}, {}};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int i = 0; i < points; ++i) {
        const Point3 z{U(rng), U(rng), U(rng)};
        const double us = u_star(z, p);
        const double ke = std::fabs(us - u_star(kelvin(z), p) / norm(z));
        double ps = kNaN;
        try {
            ps = psi_d1(z, p).value;
        } catch (const DomainError&) {
        }
        t.rows.push_back({z.x, z.y, z.z, u_bubble(z), us, ps, ke});
    }
    return t;
}

Table run_kernels(const std::string& Ks, const std::string& bs, const std::string& abs_,
                  const std::string& aws)
{
    Table t{{"K", "b", "alpha_b", "alpha_w", "kernel", "quantity", "direct", "closed_form", "asymptotic",
             "abs_err_dc", "abs_err_ca"}, {}};
    for (int K : parse_list<int>(Ks))
        for (double b : parse_list<double>(bs))
            for (double ab : parse_list<double>(abs_))
                for (double aw : parse_list<double>(aws)) {
                    KernelConfig cfg;
                    cfg.sector = make_sector(K);
                    PlacedBubble A;
                    A.b_norm = b;
                    A.alpha_b = ab;
                    A.alpha_w = aw;
                    A.w_norm = 1.0;
                    auto row = [&](const char* kern, const char* qty, const KernelReport& r) {
                        t.rows.push_back({(long long)K, b, ab, aw, std::string(kern), std::string(qty), r.direct,
                                          r.closed_form, r.asymptotic, r.abs_err_dc, r.abs_err_ca});
                    };
                    row("gamma", "value", gamma_bb(b, ab, cfg.sector));
                    row("h0e", "value", h0e_bb(b, ab, cfg.sector));
                    for (auto kind : {KernelKind::gamma, KernelKind::h0e}) {
                        const char* kn = kind == KernelKind::gamma ? "gamma" : "h0e";
                        row(kn, "grad_z", kernel_grad(kind, Slot::z, A, cfg));
                        row(kn, "grad_p", kernel_grad(kind, Slot::p, A, cfg));
                        row(kn, "hess", kernel_hess(kind, A, cfg));
                    }
                }
    return t;
}

ReducedConfig energy_config(int K, double lambda, double delta, double gnorm, double cstar)
{
    ReducedConfig c;
    c.K = K;
    c.lambda = lambda;
    c.delta = delta;
    if (std::isnan(gnorm) || std::isnan(cstar)) {
        const auto& mc = default_model_constants();
        c.gnorm = std::isnan(gnorm) ? mc.gnorm : gnorm;
        c.cstar = std::isnan(cstar) ? mc.cstar : cstar;
    } else {
        c.gnorm = gnorm;
        c.cstar = cstar;
    }
    return c;
}

nlohmann::json cfg_json(const ReducedConfig& c)
{
    return {{"K", c.K}, {"lambda", c.lambda}, {"delta", c.delta}, {"gnorm", c.gnorm}, {"cstar", c.cstar}};
}

// Places config-file keys before the user's flags so that the flags win.
std::vector<std::string> merge_config(std::vector<std::string> args)
{
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + i);
            break;
        }
    }
    if (path.empty())
        return args;
    const auto kv = read_config_file(path);
    std::size_t pos = 0;
    while (pos < args.size() && args[pos].rfind("-", 0) != 0)
        ++pos;
    std::vector<std::string> extra;
    for (const auto& [k, v] : kv)
        extra.push_back("--" + k + "=" + v);
    args.insert(args.begin() + pos, extra.begin(), extra.end());
    return args;
}

} // namespace

std::map<std::string, std::string> read_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw CLI::ValidationError("--config", "cannot open " + path);
    std::map<std::string, std::string> out;
    std::string line;
    int ln = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++ln;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--config", path + ":" + std::to_string(ln) + ": expected key=value");
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Crown-necklace numerics: trig sums, ansatz, nodal sets, kernels, reduced energy"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    RunConfig rc;
    std::string config_path;
    app.add_option("--config", config_path, "key=value file; flags override it");
    auto opt = [](CLI::Option* o) { return o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast); };

    auto common = [&](CLI::App* sc) {
        opt(sc->add_option("--out,-o", rc.output, "output path (default stdout)"));
        opt(sc->add_option("--format", rc.format, "csv or json"))->check(CLI::IsMember({"csv", "json"}));
        opt(sc->add_option("--seed", rc.seed, "RNG seed"));
    };

    std::string variant = "alt_hat", ns = "1024", xs = "0";
    int k = 1;
    auto* sums = app.add_subcommand("sums", "finite cosecant-type sums");
    opt(sums->add_option("--variant", variant))->check(CLI::IsMember({"odd", "even", "even_hat", "alt", "alt_hat"}));
    opt(sums->add_option("--k", k))->check(CLI::IsMember({1, 3, 5}));
    opt(sums->add_option("--n", ns, "n or comma list"));
    opt(sums->add_option("--x", xs, "x or comma list"));
    common(sums);

    int m = 64, points = 16;
    auto* ansatz = app.add_subcommand("ansatz", "crown ansatz samples");
    opt(ansatz->add_option("--m", m));
    opt(ansatz->add_option("--points", points))->check(CLI::Range(0, 10000000));
    common(ansatz);

    int nm = 16, res = 48;
    double half = 2.5;
    std::string obj;
    auto* nodal = app.add_subcommand("nodal", "nodal set of U_*");
    opt(nodal->add_option("--m", nm));
    opt(nodal->add_option("--resolution,--res", res));
    opt(nodal->add_option("--half-width,--bbox", half, "cube half-width"));
    opt(nodal->add_option("--obj", obj, "also write an OBJ vertex list"));
    common(nodal);

    std::string kK = "64", kb = "0.94", kab = "0", kaw = "0";
    auto* kernels = app.add_subcommand("kernels", "gamma and H0e kernels at (b,b)");
    opt(kernels->add_option("--K", kK));
    opt(kernels->add_option("--b", kb));
    opt(kernels->add_option("--alpha-b", kab));
    opt(kernels->add_option("--alpha-w", kaw));
    common(kernels);

    int eK = 64, grid = 9;
    double lambda = 1.0, delta = 0.1, gnorm = std::nan(""), cstar = std::nan("");
    std::string mode = "leading";
    auto* energy = app.add_subcommand("energy", "reduced energy");
    energy->require_subcommand(1);
    auto energy_opts = [&](CLI::App* sc) {
        opt(sc->add_option("--K", eK));
        opt(sc->add_option("--lambda", lambda));
        opt(sc->add_option("--delta", delta));
        opt(sc->add_option("--gnorm", gnorm));
        opt(sc->add_option("--cstar", cstar));
        opt(sc->add_option("--mode", mode))->check(CLI::IsMember({"leading", "full"}));
        opt(sc->add_option("--grid", grid));
        common(sc);
    };
    auto* landscape = energy->add_subcommand("landscape", "Psi on an (eps, d) grid at a = alpha = 0");
    energy_opts(landscape);
    auto* minimize = energy->add_subcommand("minimize", "minimize Psi over the constraint box");
    energy_opts(minimize);

    bool quick = false;
    auto* verify = app.add_subcommand("verify", "acceptance table");
    verify->add_flag("--quick", quick);
    common(verify);

    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    try {
        args = merge_config(args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    std::ofstream file;
    std::ostream* os = &out;
    if (!rc.output.empty()) {
        file.open(rc.output, std::ios::binary);
        if (!file) {
            err << "cannot open " << rc.output << "\n";
            return 2;
        }
        os = &file;
    }

    try {
        nlohmann::json meta = nlohmann::json::object();
        if (*sums) {
            meta["subcommand"] = "sums";
            write_table(*os, run_sums(variant, k, ns, xs), rc.format, meta);
        } else if (*ansatz) {
            meta["subcommand"] = "ansatz";
            meta["seed"] = rc.seed;
            Table t = run_ansatz(m, points, rc.seed, meta);
            write_table(*os, t, rc.format, meta);
        } else if (*nodal) {
            const CrownParams p = make_crown(nm);
            Box box;
            box.lo = {-half, -half, -half};
            box.hi = {half, half, half};
            const NodalMesh mesh = nodal_mesh(u_star_profile(p), box, res);
            if (rc.format == "json") {
                nlohmann::json j{{"subcommand", "nodal"}, {"m", nm}, {"resolution", res},
                                 {"points", mesh.points.size()}};
                if (!mesh.points.empty())
                    j["min_gradient"] = gradient_min_on_nodal(mesh);
                *os << j.dump(2) << "\n";
            } else {
                write_mesh_csv(*os, mesh);
            }
            if (!obj.empty()) {
                std::ofstream of(obj, std::ios::binary);
                write_mesh_obj(of, mesh);
            }
        } else if (*kernels) {
            meta["subcommand"] = "kernels";
            write_table(*os, run_kernels(kK, kb, kab, kaw), rc.format, meta);
        } else if (*energy) {
            const ReducedConfig cfg = energy_config(eK, lambda, delta, gnorm, cstar);
            const PsiMode pm = parse_mode(mode);
            if (*landscape) {
                const ConstraintBox box = constraint_box(cfg);
                Table t{{"eps_K3", "Kd", "eps", "d", "psi"}, {}};
                const double K3 = double(cfg.K) * cfg.K * cfg.K;
                for (int i = 0; i < grid; ++i)
                    for (int j = 0; j < grid; ++j) {
                        ReducedPoint A;
                        A.eps = box.eps_lo * std::pow(box.eps_hi / box.eps_lo, double(i) / (grid - 1));
                        A.d = box.d_lo + (box.d_hi - box.d_lo) * double(j) / (grid - 1);
                        t.rows.push_back({A.eps * K3, cfg.K * A.d, A.eps, A.d, psi(A, cfg, pm)});
                    }
                meta["subcommand"] = "energy landscape";
                meta["mode"] = mode;
                meta["cfg"] = cfg_json(cfg);
                write_table(*os, t, rc.format, meta);
            } else {
                const MinimizeResult r = minimize_psi(cfg, pm, grid);
                nlohmann::json j;
                j["mode"] = mode;
                j["cfg"] = cfg_json(cfg);
                j["argmin"] = {{"eps", r.argmin.eps}, {"a", r.argmin.a}, {"d", r.argmin.d},
                               {"alpha_b", r.argmin.alpha_b}, {"alpha_w", r.argmin.alpha_w}, {"psi", r.value}};
                nlohmann::json bd = nlohmann::json::object(), in = nlohmann::json::object();
                for (int ax = 0; ax < 5; ++ax) {
                    bd[kAxisNames[ax]] = r.boundary_distance[ax];
                    in[kAxisNames[ax]] = r.interior[ax];
                }
                j["diagnostics"] = {{"eps_K3", r.eps_K3}, {"eps_over_eps_star", r.eps_ratio},
                                    {"Kd_minus_logK_plus_half_loglogK", r.d_deviation},
                                    {"alpha_b", r.argmin.alpha_b}, {"alpha_w", r.argmin.alpha_w},
                                    {"a", r.argmin.a}, {"boundary_distance", bd}, {"interior", in},
                                    {"all_interior", r.all_interior}, {"evaluations", r.evaluations}};
                nlohmann::json cmp = nlohmann::json::array();
                for (const auto& c : boundary_comparisons(cfg))
                    cmp.push_back({{"name", c.name}, {"interior", c.interior}, {"boundary", c.boundary},
                                   {"holds", c.holds}});
                j["boundary_comparisons"] = cmp;
                *os << j.dump(2) << "\n";
            }
        } else if (*verify) {
            const auto results = run_acceptance(quick);
            bool all = true;
            if (rc.format == "json") {
                nlohmann::json j = nlohmann::json::array();
                for (const auto& r : results) {
                    j.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
                    all = all && r.pass;
                }
                *os << j.dump(2) << "\n";
            } else {
                for (const auto& r : results) {
                    *os << format_result_line(r) << "\n";
                    all = all && r.pass;
                }
            }
            return all ? 0 : 1;
        }
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace necklace
