// Command-line front end. Records go to stdout (or --out) one per line in the
// chosen format; diagnostics go to stderr. Exit status: 0 when every requested
// check passed, 1 when a check failed, 2 on usage or evaluation errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "qmaass/coefficients/formulas.hpp"
#include "qmaass/coefficients/series.hpp"
#include "qmaass/maass/maass.hpp"
#include "qmaass/multipliers.hpp"
#include "qmaass/quantum/figure.hpp"
#include "qmaass/quantum/forms.hpp"

using namespace qmaass;
using Json = nlohmann::ordered_json;

namespace {

struct RunConfig {
    unsigned precision = 30;
    std::string format = "auto";
    unsigned workers = 1;
    std::string out_path;
};

class Writer {
  public:
    Writer(std::ostream& os, std::string format) : os_(os), format_(std::move(format)) {}

    void record(const Json& j)
    {
        if (format_ == "json") {
            os_ << j.dump() << '\n';
        } else if (format_ == "csv") {
            if (!header_done_) {
                bool first = true;
                for (const auto& [k, v] : j.items()) {
                    os_ << (first ? "" : ",") << k;
                    first = false;
                }
                os_ << '\n';
                header_done_ = true;
            }
            bool first = true;
            for (const auto& [k, v] : j.items()) {
                os_ << (first ? "" : ",") << cell(v);
                first = false;
            }
            os_ << '\n';
        } else {
            bool first = true;
            for (const auto& [k, v] : j.items()) {
                os_ << (first ? "" : " ") << k << '=' << cell(v);
                first = false;
            }
            os_ << '\n';
        }
    }

  private:
    static std::string cell(const Json& v)
    {
        if (v.is_null()) {
            return "";
        }
        if (v.is_string()) {
            return v.get<std::string>();
        }
        if (v.is_number_float()) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
            return buf;
        }
        if (v.is_structured()) {
            std::string s = v.dump();
            return "\"" + std::regex_replace(s, std::regex("\""), "\"\"") + "\"";
        }
        return v.dump();
    }

    std::ostream& os_;
    std::string format_;
    bool header_done_ = false;
};

BigRat parse_rational(const std::string& s)
{
    BigRat q;
    if (q.set_str(s, 10) != 0) {
        throw CLI::ValidationError("rational", "cannot parse '" + s + "' as a/c");
    }
    if (q.get_den() == 0) {
        throw CLI::ValidationError("rational", "zero denominator in '" + s + "'");
    }
    q.canonicalize();
    return q;
}

std::string rat_str(const BigRat& q) { return q.get_str(); }

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        out.push_back(item);
    }
    return out;
}

Mat2 parse_gamma(const std::string& s, int level)
{
    if (s == "T") {
        return Mat2::T();
    }
    if (s == "R") {
        return generator_matrix(Gen::R, level);
    }
    if (s == "I") {
        return Mat2::identity();
    }
    const auto parts = split(s, ',');
    if (parts.size() != 4) {
        throw CLI::ValidationError("gamma", "expected a,b,c,d or one of T, R, I");
    }
    long v[4];
    for (int i = 0; i < 4; ++i) {
        v[i] = std::stol(parts[static_cast<std::size_t>(i)]);
    }
    const Mat2 g(v[0], v[1], v[2], v[3]);
    if (g.det() != 1) {
        throw CLI::ValidationError("gamma", "determinant is not 1");
    }
    return g;
}

HPoint<double> parse_z(const std::string& s)
{
    const auto parts = split(s, ',');
    if (parts.size() != 2) {
        throw CLI::ValidationError("z", "expected x,y");
    }
    return {std::stod(parts[0]), std::stod(parts[1])};
}

QForm parse_qform(const std::string& s) { return s == "fc" ? QForm::FC : QForm::FL; }

Json exact_json(const CycNumber& v)
{
    Json coeffs = Json::array();
    for (const auto& c : v.coeffs()) {
        coeffs.push_back(c.get_str());
    }
    return Json{{"order", v.order()}, {"coeffs", coeffs}};
}

void put_complex(Json& j, const CycNumber& v, unsigned digits, const std::string& re = "re", const std::string& im = "im")
{
    const ApproxComplex z = v.embed(digits);
    j[re] = z.re.to_double();
    j[im] = z.im.to_double();
}

// Eigenvalue of T_p on f_C / f_L: +-T(+-p) with the sign of the branch.
long quantum_eigenvalue(QForm f, int64_t p)
{
    if (f == QForm::FC) {
        return mod_floor(p, 6) == 1 ? tc_formula(p) : -tc_formula(-p);
    }
    return mod_floor(p, 4) == 1 ? tl_formula(p) : -tl_formula(-p);
}

Json series_json(const std::string& name, long order)
{
    Json coeffs = Json::array();
    auto push_series = [&](const TruncSeries& s) {
        for (long k = 0; k <= order; ++k) {
            coeffs.push_back(s[k].get_num().get_str());
        }
    };
    auto push_map = [&](const std::map<long, BigInt>& m) {
        for (const auto& [n, v] : m) {
            coeffs.push_back(Json::array({n, v.get_str()}));
        }
    };
    if (name == "sigma") {
        push_series(series_sigma(order));
    } else if (name == "sigma_star") {
        push_series(series_sigma_star(order));
    } else if (name == "adh") {
        push_series(series_sigma_adh(order));
    } else if (name == "w1") {
        push_series(series_w(WSeries::W1, order));
    } else if (name == "w2") {
        push_series(series_w(WSeries::W2, order));
    } else if (name == "w1alt") {
        push_series(series_w(WSeries::W1alt, order));
    } else if (name == "phi") {
        push_map(combine_phi(order));
    } else {
        push_map(combine_w(order));
    }
    return Json{{"command", "series"}, {"series", name}, {"order", order}, {"coeffs", coeffs}};
}

struct SelfCheck {
    std::string name;
    std::function<bool()> run;
};

std::vector<SelfCheck> self_checks()
{
    return {
        {"fc_at_zero", [] { return eval_fc(0).exact == CycNumber(2); }},
        {"fc_dual_agrees", [] { return eval_fc(QPoint(5, 12)).exact == eval_fc_dual(QPoint(5, 12)).exact; }},
        {"fl_at_zero", [] { return eval_fl(0).exact == CycNumber(1); }},
        {"sigma_45", [] { return series_sigma(45)[45] == 4; }},
        {"tc_73", [] { return tc_formula(73) == 2 && tc_oracle(73) == 2; }},
        {"tl_minus_7", [] { return tl_formula(-7) == -2 && tl_oracle(-7) == -2; }},
        {"identity_tc_73", [] { return identity_tc(73) == 2; }},
        {"identity_tl_7", [] { return identity_tl(7) == 2; }},
        {"compat_level2_p5", [] { return compat_check(2, 5).compatible; }},
        {"hecke_fl_7", [] { return hecke_residual(QForm::FL, 7, QPoint(1, 3), 2).exact.is_zero(); }},
        {"k0_at_one", [] { return std::abs(bessel_k0(1.0) - 0.42102443824070833) < 1e-15; }},
        {"uc_modularity_R",
         [] {
             const MaassForm<double> u(MaassSpec::uc(), 0.1, 1e-13);
             return modularity_residual(u, generator_matrix(Gen::R, 2), {0.0, 1.0}, 1e-12).residual < 1e-8;
         }},
    };
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Quantum modular forms and Maass forms: exact and numerical checks"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--precision", cfg.precision, "decimal digits for embeddings")->check(CLI::Range(15u, 10000u));
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"auto", "json", "csv", "plain"}));
    app.add_option("--workers", cfg.workers, "worker threads")->check(CLI::Range(1u, 256u));
    app.add_option("--out", cfg.out_path, "write records to FILE instead of stdout");

    // coeff
    auto* coeff = app.add_subcommand("coeff", "coefficient T_C(n) or T_L(n)");
    std::string coeff_kind, coeff_source = "formula";
    long coeff_n = 0;
    coeff->add_option("kind", coeff_kind)->required()->check(CLI::IsMember({"tc", "tl"}));
    coeff->add_option("n", coeff_n)->required();
    coeff->add_option("--source", coeff_source)->check(CLI::IsMember({"formula", "oracle", "both"}));

    // series
    auto* series = app.add_subcommand("series", "q-series coefficients");
    std::string series_name;
    long series_order = 20;
    series->add_option("name", series_name)
        ->required()
        ->check(CLI::IsMember({"sigma", "sigma_star", "adh", "w1", "w2", "w1alt", "phi", "w"}));
    series->add_option("--order", series_order)->check(CLI::Range(1L, 1000000L));

    // qeval
    auto* qeval = app.add_subcommand("qeval", "exact value of f_C or f_L at a rational");
    std::string qeval_form, qeval_x;
    qeval->add_option("form", qeval_form)->required()->check(CLI::IsMember({"fc", "fl"}));
    qeval->add_option("x", qeval_x)->required();

    // hecke
    auto* hecke = app.add_subcommand("hecke", "T_p applied to f_C or f_L at a rational");
    std::string hecke_form, hecke_x;
    long hecke_p = 0;
    hecke->add_option("form", hecke_form)->required()->check(CLI::IsMember({"fc", "fl"}));
    hecke->add_option("p", hecke_p)->required();
    hecke->add_option("x", hecke_x)->required();

    // identity
    auto* ident = app.add_subcommand("identity", "root-of-unity sum for T_C(+-p) or T_L(+-p)");
    std::string ident_kind;
    long ident_p = 0;
    ident->add_option("kind", ident_kind)->required()->check(CLI::IsMember({"tc", "tl"}));
    ident->add_option("p", ident_p)->required();

    // compat
    auto* compat = app.add_subcommand("compat", "multiplier compatibility sweep over primes");
    int compat_level = 2;
    long compat_pmin = 5, compat_pmax = 101;
    compat->add_option("--level", compat_level)->check(CLI::IsMember({2, 4}));
    compat->add_option("--pmin", compat_pmin);
    compat->add_option("--pmax", compat_pmax);

    // cocycle
    auto* cocy = app.add_subcommand("cocycle", "cocycle h (and H for T_p f) on a rational grid");
    std::string cocy_form, cocy_gamma = "1,0,4,1", cocy_grid;
    long cocy_p = 0;
    bool cocy_fig = false;
    cocy->add_option("form", cocy_form)->required()->check(CLI::IsMember({"fc", "fl"}));
    cocy->add_option("--gamma", cocy_gamma, "a,b,c,d or T, R, I");
    cocy->add_option("--grid", cocy_grid, "lo:hi:count with rational lo, hi");
    cocy->add_flag("--figure1", cocy_fig, "the 200-point grid of reduced fractions used for the figure");
    cocy->add_option("--hecke-p", cocy_p, "also emit the cocycle of T_p f");

    // maass
    auto* maass = app.add_subcommand("maass", "Maass form evaluation and checks");
    std::string maass_form, maass_action, maass_z = "0,1", maass_gamma = "R";
    long maass_p = 0;
    double maass_eps = 1e-12, maass_tol = -1;
    long maass_lambda = 0;
    bool maass_lambda_set = false;
    maass->add_option("form", maass_form)->required()->check(CLI::IsMember({"uc", "ul"}));
    maass->add_option("action", maass_action)->required()->check(CLI::IsMember({"eval", "modularity", "hecke"}));
    maass->add_option("--z", maass_z, "x,y");
    maass->add_option("--p", maass_p);
    maass->add_option("--gamma", maass_gamma, "a,b,c,d or T, R, I");
    maass->add_option("--eps", maass_eps)->check(CLI::PositiveNumber);
    maass->add_option("--tol", maass_tol, "pass threshold for residuals");
    auto* lam_opt = maass->add_option("--lambda", maass_lambda, "compare T_p u against lambda u instead of T(+-p)");

    auto* selftest = app.add_subcommand("selftest", "quick cross-module checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    maass_lambda_set = lam_opt->count() > 0;

    std::ofstream file;
    if (!cfg.out_path.empty()) {
        file.open(cfg.out_path);
        if (!file) {
            std::cerr << "cannot open " << cfg.out_path << '\n';
            return 2;
        }
    }
    std::ostream& os = cfg.out_path.empty() ? std::cout : file;
    const std::string format = cfg.format != "auto" ? cfg.format : (cocy->parsed() ? "csv" : "json");
    Writer out(os, format);
    bool all_passed = true;

    try {
        if (coeff->parsed()) {
            const CoeffKind kind = coeff_kind == "tc" ? CoeffKind::TC : CoeffKind::TL;
            auto formula = [&] { return kind == CoeffKind::TC ? tc_formula(coeff_n) : tl_formula(coeff_n); };
            auto oracle = [&] { return kind == CoeffKind::TC ? tc_oracle(coeff_n) : tl_oracle(coeff_n); };
            Json j{{"command", "coeff"}, {"kind", coeff_kind}, {"n", coeff_n}};
            if (coeff_source == "formula") {
                j["value"] = formula();
            } else if (coeff_source == "oracle") {
                j["value"] = oracle();
            } else {
                const long a = formula(), b = oracle();
                j["value"] = a;
                j["oracle_value"] = b;
                all_passed = a == b;
            }
            j["source"] = coeff_source;
            if (coeff_source == "both") {
                j["agree"] = all_passed;
            }
            out.record(j);
        } else if (series->parsed()) {
            out.record(series_json(series_name, series_order));
        } else if (qeval->parsed()) {
            const QForm f = parse_qform(qeval_form);
            const BigRat x = parse_rational(qeval_x);
            const QValue v = eval_form(f, QPoint(x));
            Json j{{"command", "qeval"}, {"form", qeval_form}, {"x", rat_str(x)}};
            put_complex(j, v.exact, cfg.precision);
            j["exact"] = exact_json(v.exact);
            out.record(j);
        } else if (hecke->parsed()) {
            const QForm f = parse_qform(hecke_form);
            const BigRat x = parse_rational(hecke_x);
            const QValue v = hecke_qmf(f, hecke_p, QPoint(x), cfg.workers);
            const long lambda = quantum_eigenvalue(f, hecke_p);
            const bool match = v.exact == CycNumber(lambda) * eval_form(f, QPoint(x)).exact;
            Json j{{"command", "hecke"}, {"form", hecke_form}, {"p", hecke_p}, {"x", rat_str(x)}};
            put_complex(j, v.exact, cfg.precision);
            j["eigenvalue"] = lambda;
            j["eigen_match"] = match;
            all_passed = match;
            out.record(j);
        } else if (ident->parsed()) {
            const long rhs = ident_kind == "tc" ? identity_tc(ident_p, cfg.workers) : identity_tl(ident_p, cfg.workers);
            const long expected = ident_kind == "tc" ? quantum_eigenvalue(QForm::FC, ident_p)
                                                     : quantum_eigenvalue(QForm::FL, ident_p);
            all_passed = rhs == expected;
            out.record(Json{{"command", "identity"},
                            {"kind", ident_kind},
                            {"p", ident_p},
                            {"rhs", rhs},
                            {"expected", expected},
                            {"match", all_passed}});
        } else if (compat->parsed()) {
            if (compat_pmin > compat_pmax) {
                throw CLI::ValidationError("compat", "pmin must not exceed pmax");
            }
            std::vector<int64_t> primes;
            for (int64_t p : primes_in(compat_pmin, compat_pmax)) {
                if (std::gcd<int64_t>(p, compat_level) == 1) {
                    primes.push_back(p);
                }
            }
            auto reports = detail::parallel_collect<CompatReport>(
                static_cast<int64_t>(primes.size()), cfg.workers,
                [&](int64_t i) { return compat_check(compat_level, primes[static_cast<std::size_t>(i)]); });
            for (const auto& r : reports) {
                all_passed = all_passed && r.compatible;
                out.record(Json{{"command", "compat"},
                                {"level", r.level},
                                {"p", r.p},
                                {"compatible", r.compatible},
                                {"generators_checked", r.generators_checked},
                                {"random_checked", r.random_checked}});
            }
        } else if (cocy->parsed()) {
            const QForm f = parse_qform(cocy_form);
            const Mat2 gamma = parse_gamma(cocy_gamma, form_level(f));
            if (!gamma0_member(gamma, form_level(f))) {
                throw NotInGroup("cocycle: gamma is not in Gamma_0(level)");
            }
            std::vector<BigRat> grid;
            if (cocy_fig) {
                grid = figure1_grid();
            } else {
                const auto parts = split(cocy_grid.empty() ? std::string("-1:1:200") : cocy_grid, ':');
                if (parts.size() != 3) {
                    throw CLI::ValidationError("grid", "expected lo:hi:count");
                }
                grid = uniform_grid(parse_rational(parts[0]), parse_rational(parts[1]), std::stol(parts[2]));
            }
            const long lambda = cocy_p > 0 ? quantum_eigenvalue(f, cocy_p) : 0;
            std::size_t mismatches = 0, emitted = 0;
            for (const BigRat& x : grid) {
                const FigureRow row = figure_row(f, gamma, x, cocy_p, cfg.workers);
                Json j;
                if (format != "csv") {
                    j["command"] = "cocycle";
                }
                j["x"] = x.get_d();
                j["re_h"] = nullptr;
                j["im_h"] = nullptr;
                if (cocy_p > 0) {
                    j["re_H"] = nullptr;
                    j["im_H"] = nullptr;
                }
                if (row.defined) {
                    ++emitted;
                    put_complex(j, row.h, cfg.precision, "re_h", "im_h");
                    if (cocy_p > 0) {
                        put_complex(j, row.H, cfg.precision, "re_H", "im_H");
                        if (!(row.H == CycNumber(lambda) * row.h)) {
                            ++mismatches;
                        }
                    }
                }
                out.record(j);
            }
            std::cerr << "cocycle: " << grid.size() << " points, " << emitted << " defined";
            if (cocy_p > 0) {
                std::cerr << ", H = " << lambda << " h exactly at " << (emitted - mismatches) << " of " << emitted;
            }
            std::cerr << '\n';
            all_passed = mismatches == 0;
        } else if (maass->parsed()) {
            const MaassSpec spec = maass_form == "uc" ? MaassSpec::uc() : MaassSpec::ul();
            const MaassForm<double> u(spec, kMaassYFloor, std::min(maass_eps / 64, 1e-13));
            const HPoint<double> z = parse_z(maass_z);
            Json j{{"command", "maass"}, {"form", maass_form}, {"action", maass_action}, {"x", z.x}, {"y", z.y}};
            if (maass_action == "eval") {
                const auto v = u.eval(z, maass_eps);
                j["re"] = v.value.real();
                j["im"] = v.value.imag();
                j["error_bound"] = v.error_bound;
                j["terms"] = v.terms;
            } else if (maass_action == "modularity") {
                const Mat2 g = parse_gamma(maass_gamma, spec.level);
                const auto r = modularity_residual(u, g, z, maass_eps);
                const double tol = maass_tol > 0 ? maass_tol : 1e-8;
                std::ostringstream gs;
                gs << g.a << "," << g.b << "," << g.c << "," << g.d;
                j["gamma"] = gs.str();
                j["residual"] = r.residual;
                j["error_bound"] = r.error_bound;
                j["passed"] = r.residual < tol;
                all_passed = r.residual < tol;
            } else {
                const long lambda = maass_lambda_set ? maass_lambda : maass_hecke_eigenvalue(spec, maass_p);
                const auto h = hecke_maass(u, maass_p, z, maass_eps);
                const auto v = u.eval(z, maass_eps);
                const double residual = std::abs(h.value - static_cast<double>(lambda) * v.value);
                const double tol = maass_tol > 0 ? maass_tol : 1e-6;
                j["p"] = maass_p;
                j["lambda"] = lambda;
                j["re"] = h.value.real();
                j["im"] = h.value.imag();
                j["residual"] = residual;
                j["error_bound"] = h.error_bound + std::abs(static_cast<double>(lambda)) * v.error_bound;
                j["passed"] = residual < tol;
                all_passed = residual < tol;
            }
            out.record(j);
        } else if (selftest->parsed()) {
            for (const auto& c : self_checks()) {
                bool ok = false;
                try {
                    ok = c.run();
                } catch (const std::exception& e) {
                    std::cerr << c.name << ": " << e.what() << '\n';
                }
                all_passed = all_passed && ok;
                out.record(Json{{"command", "selftest"}, {"check", c.name}, {"passed", ok}});
            }
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return all_passed ? 0 : 1;
}
