// Command-line front end: construct vector systems / POVMs, certify them
// against their defining properties and explicit bounds, sweep parameter
// ranges into CSV/JSON tables, and evaluate character/exponential sum bounds.

#include <algorithm>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "asicpovm/certify.hpp"
#include "asicpovm/constructions.hpp"
#include "asicpovm/serialize.hpp"

using namespace asicpovm;

namespace {

std::string csv_escape(const std::string& s) {
    bool quote = s.find_first_of(",\"\n") != std::string::npos;
    if (!quote) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::uint64_t> parse_list(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoull(item));
    }
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot open for writing: " + out_path);
        f << text;
    }
}

struct ConstructParams {
    std::uint64_t q = 0, p = 0, n = 0, d = 1;
    double r = -1.0;
};

bool is_povm_construction(const std::string& name) {
    return name == "asic1" || name == "asic2";
}

json construct_json(const std::string& name, const ConstructParams& prm) {
    if (name == "mub") {
        if (!prm.q) throw CLI::ValidationError("construct mub requires --q");
        return to_json(mub_prime_power(prm.q));
    }
    if (name == "asic1") {
        if (!prm.q) throw CLI::ValidationError("construct asic1 requires --q");
        return to_json(asic_pruned(prm.q));
    }
    if (name == "asic2") {
        if (!prm.p) throw CLI::ValidationError("construct asic2 requires --p");
        double r = prm.r > 0.0 ? prm.r : asic_perturbed_default_r(prm.p);
        return to_json(asic_perturbed(prm.p, r));
    }
    if (name == "amub-poly") {
        if (!prm.n) throw CLI::ValidationError("construct amub-poly requires --n");
        return to_json(amub_polynomial(prm.n, prm.d));
    }
    if (name == "asic-approx") {
        if (!prm.n) throw CLI::ValidationError("construct asic-approx requires --n");
        return to_json(approx_sic_vectors(prm.n));
    }
    if (name == "amub-char") {
        if (!prm.n) throw CLI::ValidationError("construct amub-char requires --n");
        return to_json(amub_character(prm.n, prm.d));
    }
    throw CLI::ValidationError("unknown construction: " + name);
}

std::string provenance_summary(const json& j) {
    const json& p = j.at("provenance");
    std::ostringstream os;
    os << p.value("construction", "?") << ": n=" << j.value("n", std::uint64_t{0})
       << " elements=" << (j.contains("vectors") ? j.at("vectors").size() : 0)
       << " p=" << p.value("p", std::uint64_t{0});
    if (p.value("q", std::uint64_t{0})) os << " q=" << p.value("q", std::uint64_t{0});
    if (p.value("d", std::uint64_t{0})) os << " d=" << p.value("d", std::uint64_t{0});
    if (p.value("perturb_r", 0.0) != 0.0) os << " r=" << p.value("perturb_r", 0.0);
    if (p.value("prime_gap", std::uint64_t{0}))
        os << " prime_gap=" << p.value("prime_gap", std::uint64_t{0});
    if (p.value("prime_ratio", 0.0) != 0.0) os << " prime_ratio=" << p.value("prime_ratio", 0.0);
    return os.str();
}

CertificationReport certify_object(const json& j, const ScanPolicy& policy) {
    std::string kind = j.value("kind", "");
    if (kind == "vector_system") {
        return certify_system(vector_system_from_json(j), policy);
    }
    if (kind == "projector_povm") {
        return certify_povm(povm_from_json(j), policy);
    }
    throw std::invalid_argument("certify: unsupported object kind '" + kind + "'");
}

CertificationReport scan_point(const std::string& name, std::uint64_t dim, std::uint64_t d,
                               double r_override, const ScanPolicy& policy) {
    if (name == "mub") return certify_system(mub_prime_power(dim), policy);
    if (name == "asic1") return certify_povm(asic_pruned(dim), policy);
    if (name == "asic2") {
        double r = r_override > 0.0 ? r_override : asic_perturbed_default_r(dim);
        return certify_povm(asic_perturbed(dim, r), policy);
    }
    if (name == "amub-poly") return certify_system(amub_polynomial(dim, d), policy);
    if (name == "asic-approx") return certify_system(approx_sic_vectors(dim), policy);
    if (name == "amub-char") return certify_system(amub_character(dim, d), policy);
    throw std::invalid_argument("unknown construction: " + name);
}

int run_bounds(const std::string& kind, std::uint64_t p_max, std::uint64_t deg,
               const std::vector<std::uint64_t>& ps, std::int64_t k_shift, std::uint64_t n_mod,
               std::uint64_t h, double epsilon, const std::string& format,
               const std::string& out_path) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(17);
    json rows = json::array();
    auto push_row = [&](const std::string& label, std::uint64_t p, double modulus, double bound,
                        double ratio) {
        rows.push_back(json{{"kind", label},
                            {"p", p},
                            {"sum_modulus", modulus},
                            {"bound", bound},
                            {"ratio", ratio}});
    };
    if (kind == "weil") {
        for (std::uint64_t p = 3; p <= p_max; ++p) {
            if (!nt::is_prime(p)) continue;
            auto res = weil_sweep_prime(p, deg);
            // per-prime aggregate: worst ratio over every monic F and order
            push_row("weil", p, res.worst_ratio, 1.0, res.worst_ratio);
        }
    } else if (kind == "mixed") {
        for (std::uint64_t p : ps) {
            if (!nt::is_prime(p)) continue;
            std::vector<std::uint64_t> f(deg + 1, 0);
            f[deg] = 1;
            auto res = mixed_sum_bound(p, f, k_shift, n_mod ? n_mod : p - 1);
            push_row("mixed", p, res.modulus, res.bound, res.ratio);
        }
    } else if (kind == "weyl") {
        for (std::uint64_t p : ps) {
            if (!nt::is_prime(p)) continue;
            std::vector<std::uint64_t> f(deg + 1, 0);
            f[deg] = 1;
            auto res = weyl_sum_bound(p, f, h ? h : p / 2, epsilon);
            push_row("weyl", p, res.modulus, res.bound, res.ratio);
        }
    } else if (kind == "gauss") {
        for (std::uint64_t p : ps) {
            if (!nt::is_prime(p)) continue;
            double m = gauss_quadratic_modulus(p);
            double b = std::sqrt(static_cast<double>(p));
            push_row("gauss", p, m, b, m / b);
        }
    } else {
        throw CLI::ValidationError("unknown bounds kind: " + kind);
    }

    if (format == "csv") {
        os << "kind,p,sum_modulus,bound,ratio\n";
        for (const auto& r : rows)
            os << r.at("kind").get<std::string>() << ',' << r.at("p").get<std::uint64_t>() << ','
               << r.at("sum_modulus").get<double>() << ',' << r.at("bound").get<double>() << ','
               << r.at("ratio").get<double>() << '\n';
        emit(os.str(), out_path);
    } else {
        emit(rows.dump(2) + "\n", out_path);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"approximate SIC-POVM / MUB construction and certification toolkit"};
    app.require_subcommand(1);

    // ---- construct ----
    auto* construct = app.add_subcommand("construct", "build a vector system or POVM");
    std::string c_name;
    ConstructParams c_prm;
    std::string c_out;
    construct->add_option("name", c_name,
                          "one of: mub asic1 asic2 amub-poly asic-approx amub-char")
        ->required();
    construct->add_option("--q", c_prm.q, "prime power dimension (mub, asic1)");
    construct->add_option("--p", c_prm.p, "odd prime dimension (asic2)");
    construct->add_option("--n", c_prm.n, "dimension (amub-poly, asic-approx, amub-char)");
    construct->add_option("--d", c_prm.d, "polynomial family degree parameter");
    construct->add_option("--r", c_prm.r, "perturbation in (0,1); default 1 - p^-3");
    construct->add_option("--out", c_out, "output path (default stdout)");

    // ---- certify ----
    auto* certify = app.add_subcommand("certify", "certify a system or POVM");
    std::string t_in, t_name, t_out;
    ConstructParams t_prm;
    std::uint64_t t_seed = 0;
    bool t_timing = false;
    certify->add_option("--in", t_in, "input JSON (vector system or POVM)");
    certify->add_option("--name", t_name, "construct-and-certify in one shot");
    certify->add_option("--q", t_prm.q, "prime power dimension");
    certify->add_option("--p", t_prm.p, "odd prime dimension");
    certify->add_option("--n", t_prm.n, "dimension");
    certify->add_option("--d", t_prm.d, "degree parameter");
    certify->add_option("--r", t_prm.r, "perturbation");
    certify->add_option("--seed", t_seed, "sampling seed for large scans");
    certify->add_option("--out", t_out, "report path (default stdout)");
    certify->add_flag("--timing", t_timing, "include wall_time_ms in the report");

    // ---- scan ----
    auto* scan = app.add_subcommand("scan", "certify across a parameter range");
    std::string s_name, s_dims, s_ds = "1", s_format = "csv", s_out;
    double s_r = -1.0;
    std::uint64_t s_seed = 0;
    scan->add_option("--name", s_name, "construction name")->required();
    scan->add_option("--q", s_dims, "comma list of dimensions (alias of --n)");
    scan->add_option("--n", s_dims, "comma list of dimensions");
    scan->add_option("--p", s_dims, "comma list of dimensions (alias of --n)");
    scan->add_option("--d", s_ds, "comma list of degree parameters");
    scan->add_option("--r", s_r, "perturbation override");
    scan->add_option("--seed", s_seed, "sampling seed");
    scan->add_option("--format", s_format, "csv or json");
    scan->add_option("--out", s_out, "output path (default stdout)");

    // ---- bounds ----
    auto* bounds = app.add_subcommand("bounds", "empirical character/exponential sum bounds");
    std::string b_kind, b_ps, b_format = "csv", b_out;
    std::uint64_t b_pmax = 0, b_deg = 2, b_n = 0, b_h = 0;
    std::int64_t b_k = 1;
    double b_eps = 0.05;
    bounds->add_option("--kind", b_kind, "weil | mixed | weyl | gauss")->required();
    bounds->add_option("--p-max", b_pmax, "sweep all primes up to this (weil)");
    bounds->add_option("--p", b_ps, "comma list of primes (mixed, weyl, gauss)");
    bounds->add_option("--deg", b_deg, "polynomial degree");
    bounds->add_option("--k", b_k, "shift k of the e_n(ku) factor (mixed)");
    bounds->add_option("--n", b_n, "modulus n of the e_n(ku) factor (mixed)");
    bounds->add_option("--range", b_h, "partial sum length h <= p (weyl)");
    bounds->add_option("--epsilon", b_eps, "epsilon in the reference expression (weyl)");
    bounds->add_option("--format", b_format, "csv or json");
    bounds->add_option("--out", b_out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*construct) {
            json j = construct_json(c_name, c_prm);
            if (c_out.empty() || c_out == "-") {
                std::cout << j.dump(2) << '\n';
                std::cerr << provenance_summary(j) << '\n';
            } else {
                save_json(j, c_out);
                std::cout << provenance_summary(j) << '\n';
            }
            return 0;
        }

        if (*certify) {
            ScanPolicy policy;
            policy.seed = t_seed;
            json obj;
            if (!t_in.empty()) {
                try {
                    obj = load_json(t_in);
                } catch (const std::exception& e) {
                    std::cerr << "error: " << e.what() << '\n';
                    return 2;
                }
            } else if (!t_name.empty()) {
                obj = construct_json(t_name, t_prm);
            } else {
                std::cerr << "error: certify needs --in or --name\n";
                return 2;
            }
            CertificationReport rep;
            try {
                rep = certify_object(obj, policy);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << '\n';
                return 2;
            }
            emit(to_json(rep, t_timing).dump(2) + "\n", t_out);
            return rep.passed() ? 0 : 1;
        }

        if (*scan) {
            auto dims = parse_list(s_dims);
            auto ds = parse_list(s_ds);
            if (dims.empty()) throw CLI::ValidationError("scan: empty dimension list");
            if (ds.empty()) ds = {1};
            bool wants_d = s_name == "amub-poly" || s_name == "amub-char";
            if (!wants_d) ds = {ds.front()};
            ScanPolicy policy;
            policy.seed = s_seed;

            struct Point {
                std::uint64_t dim, d;
            };
            std::vector<Point> points;
            for (std::uint64_t dim : dims)
                for (std::uint64_t d : ds) points.push_back({dim, d});
            std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
                return a.dim != b.dim ? a.dim < b.dim : a.d < b.d;
            });

            std::vector<std::future<std::pair<CertificationReport, std::string>>> futs;
            for (const auto& pt : points) {
                futs.push_back(std::async(std::launch::async, [&, pt] {
                    std::pair<CertificationReport, std::string> out;
                    try {
                        out.first = scan_point(s_name, pt.dim, pt.d, s_r, policy);
                    } catch (const std::exception& e) {
                        out.second = e.what();
                        out.first.provenance.construction = s_name;
                        out.first.n = pt.dim;
                        out.first.provenance.d = pt.d;
                    }
                    return out;
                }));
            }

            std::ostringstream os;
            json jrows = json::array();
            if (s_format == "csv") os << csv_header() << ",error\n";
            for (auto& f : futs) {
                auto [rep, err] = f.get();
                if (s_format == "csv") {
                    os << to_csv_row(rep) << ',' << csv_escape(err) << '\n';
                } else {
                    json row = to_json(rep);
                    row["error"] = err;
                    jrows.push_back(std::move(row));
                }
            }
            emit(s_format == "csv" ? os.str() : jrows.dump(2) + "\n", s_out);
            return 0;
        }

        if (*bounds) {
            return run_bounds(b_kind, b_pmax, b_deg, parse_list(b_ps), b_k, b_n, b_h, b_eps,
                              b_format, b_out);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
