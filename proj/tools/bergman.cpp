#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bergman/bergman.hpp"
#include "bergman/verify/acceptance.hpp"

namespace {

using namespace bergman;
using io::json;

constexpr int exit_ok = 0;
constexpr int exit_verdict = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Output {
    std::string path;

    void emit(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
        } else {
            io::write_file_atomic(path, text);
        }
    }
    void emit(const json& j) const { emit(j.dump(2) + "\n"); }
};

enum class Backend { exact, float_ };

Backend parse_backend(const std::string& name) {
    if (name == "exact") return Backend::exact;
    if (name == "float") return Backend::float_;
    throw UsageError("unknown backend '" + name + "' (expected exact or float)");
}

std::string default_backend() {
    const char* env = std::getenv("BERGMAN_BACKEND");
    return env && *env ? env : "exact";
}

/// "re" or "re,im"
Complex parse_complex(const std::string& text) {
    std::istringstream in(text);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(in >> re)) throw UsageError("bad complex number '" + text + "'");
    if (in >> comma) {
        if (comma != ',' || !(in >> im)) throw UsageError("bad complex number '" + text + "' (use re or re,im)");
    }
    if (in >> comma) throw UsageError("bad complex number '" + text + "'");
    return {re, im};
}

template <Scalar S>
Symbol<S> load_symbol(const std::string& path) {
    return io::symbol_from_json<S>(io::read_json_file(path));
}

template <class Fn>
int dispatch(Backend b, Fn&& fn) {
    if (b == Backend::exact) return fn.template operator()<GaussianRational>();
    return fn.template operator()<Complex>();
}

struct BuildMatrixArgs {
    std::string symbol, format = "csv", backend;
    int size = 32;
    bool orthonormal = false;
    Output out;
};

int build_matrix(const BuildMatrixArgs& a) {
    if (a.format != "csv" && a.format != "json") throw UsageError("--format must be csv or json");
    return dispatch(parse_backend(a.backend), [&]<Scalar S>() {
        const auto m = toeplitz_matrix(load_symbol<S>(a.symbol), a.size);
        if (a.format == "csv") {
            a.out.emit(io::matrix_to_csv(m, a.orthonormal));
        } else {
            a.out.emit(io::matrix_to_json(m, a.orthonormal));
        }
        return exit_ok;
    });
}

struct MellinArgs {
    std::string symbol, mode = "analytic";
    int degree = 0;
    std::vector<std::string> zetas;
    double tol = 1e-10;
    Output out;
};

int mellin_eval(const MellinArgs& a) {
    const auto g = load_symbol<Complex>(a.symbol);
    const auto* found = g.profile(a.degree);
    if (!found) throw UsageError("symbol has no term at degree " + std::to_string(a.degree));
    const auto& phi = *found;
    if (a.mode != "analytic" && a.mode != "quadrature") throw UsageError("--mode must be analytic or quadrature");
    std::ostringstream csv;
    csv.precision(17);
    csv << "zeta_re,zeta_im,value_re,value_im,bound,mode\n";
    for (const auto& text : a.zetas) {
        const Complex zeta = parse_complex(text);
        const MellinPoint pt = a.mode == "analytic" ? mellin_point(phi, zeta) : mellin_quadrature(phi, zeta, a.tol);
        csv << zeta.real() << ',' << zeta.imag() << ',' << pt.value.real() << ',' << pt.value.imag() << ','
            << pt.error_bound << ',' << to_string(pt.mode) << '\n';
    }
    a.out.emit(csv.str());
    return exit_ok;
}

struct CommutatorArgs {
    std::string g, f, backend;
    int size = 32;
    bool closed_form = false;
    double tol = 1e-12;
    Output out;
};

/// The single (degree, profile) term of a quasi-homogeneous symbol.
template <Scalar S>
std::pair<int, RadialProfile<S>> single_term(const Symbol<S>& g, const char* what) {
    if (g.terms().size() != 1) throw UsageError(std::string("--closed-form needs a single-degree ") + what);
    return *g.terms().begin();
}

int commutator_cmd(const CommutatorArgs& a) {
    return dispatch(parse_backend(a.backend), [&]<Scalar S>() {
        const auto g = load_symbol<S>(a.g);
        const auto f = load_symbol<S>(a.f);
        auto build = [&] {
            if (!a.closed_form) return commutator(g, f, a.size);
            const auto [l, f_phi] = single_term(f, "f");
            const auto one = scalar_traits<S>::from_int(1);
            if (l < 1 || !(f_phi == RadialProfile<S>::monomial(one, l)))
                throw UsageError("--closed-form needs f = z^l with l >= 1");
            const auto [k, phi] = single_term(g, "g");
            return commutator_quasihomogeneous(phi, -k, l, a.size);
        };
        const auto comm = build();
        const auto report = commutes(comm, is_exact_v<S> ? 0.0 : a.tol);
        a.out.emit(io::report_to_json(report));
        return report.verdict == Verdict::commutes ? exit_ok : exit_verdict;
    });
}

struct CaseArgs {
    int p = 0, l = 1, m = 1, n = 1, k_max = -1;
    Output out;
};

int case_analysis(const CaseArgs& a) {
    const auto verdict = classify_case(a.p, a.l, a.m, a.n);
    json j = io::verdict_to_json(verdict);
    j["input"] = {{"p", a.p}, {"l", a.l}, {"m", a.m}, {"n", a.n}};
    if (verdict.kind != Case::impossible && a.k_max >= 0) {
        const auto grid = solve_G_on_grid(a.p, a.l, a.m, a.n, a.k_max);
        json values = json::array();
        for (const auto& [k, v] : grid.values) values.push_back({{"k", k}, {"G", v}});
        j["grid"] = {{"c", grid.c_free ? json(nullptr) : json(grid.c)}, {"c_free", grid.c_free}, {"values", values}};
    }
    a.out.emit(j);
    return exit_ok;
}

struct FSeriesArgs {
    int m = 1, n = 1, l = 1;
    std::string zeta = "0";
    double tol = 1e-12;
    Output out;
};

int f_series_cmd(const FSeriesArgs& a) {
    const Complex zeta = parse_complex(a.zeta);
    const Complex v = F_series(a.m, a.n, a.l, zeta, a.tol);
    a.out.emit(json{{"m", a.m},
                    {"n", a.n},
                    {"l", a.l},
                    {"zeta", {{"re", zeta.real()}, {"im", zeta.imag()}}},
                    {"value", {{"re", v.real()}, {"im", v.imag()}}},
                    {"tol", a.tol}});
    return exit_ok;
}

struct SolveArgs {
    std::string f, backend;
    int k_min = -8, k_max = 1, s_min = -1, s_max = 8, q_max = 2, size = 96;
    bool bounded_only = false;
    double tol = 1e-9;
    std::vector<std::string> refs;
    Output out;
};

int solve_cmd(const SolveArgs& a) {
    return dispatch(parse_backend(a.backend), [&]<Scalar S>() {
        const auto f = load_symbol<S>(a.f);
        NamedSymbols<S> refs;
        for (const auto& r : a.refs) {
            const auto eq = r.find('=');
            if (eq == std::string::npos || eq == 0) throw UsageError("--ref expects name=file.json");
            refs.emplace_back(r.substr(0, eq), load_symbol<S>(r.substr(eq + 1)));
        }
        const auto ansatz = Ansatz::standard(a.k_min, a.k_max, a.s_min, a.s_max, a.q_max, a.bounded_only);
        const auto report = solve_commutant(f, ansatz, a.size, a.tol, refs);
        a.out.emit(io::report_to_json(report));
        return exit_ok;
    });
}

struct IdentityArgs {
    std::string f, candidate, backend;
    int power = 2, size = 64;
    double tol = 1e-12;
    Output out;
};

int verify_identity(const IdentityArgs& a) {
    return dispatch(parse_backend(a.backend), [&]<Scalar S>() {
        const auto r = verify_power_identity(load_symbol<S>(a.f), a.power, load_symbol<S>(a.candidate), a.size);
        json j = io::residual_to_json(r);
        j["power"] = a.power;
        j["backend"] = scalar_traits<S>::name;
        const bool ok = is_exact_v<S> ? r.is_zero() : r.max <= a.tol;
        j["holds"] = ok;
        a.out.emit(j);
        return ok ? exit_ok : exit_verdict;
    });
}

struct ReproduceArgs {
    std::uint64_t seed = verify::AcceptanceConfig{}.seed;
    Output out;
};

int reproduce_all(const ReproduceArgs& a) {
    const auto results = verify::run_acceptance({a.seed});
    json rows = json::array();
    bool all = true;
    for (const auto& r : results) {
        std::printf("%-4s %d  %-58s %7.2fs  %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                    r.detail.c_str());
        rows.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        all = all && r.passed;
    }
    if (!a.out.path.empty()) a.out.emit(json{{"seed", a.seed}, {"criteria", rows}, {"all_passed", all}});
    return all ? exit_ok : exit_verdict;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toeplitz operators on the Bergman space: matrices, commutators and commutants"};
    app.require_subcommand(1);
    const std::string backend = default_backend();

    auto add_out = [](CLI::App* sub, Output& out) {
        sub->add_option("-o,--out", out.path, "Write the result to this file instead of stdout");
    };
    auto add_backend = [&](CLI::App* sub, std::string& target) {
        target = backend;
        sub->add_option("--backend", target, "exact or float (default from BERGMAN_BACKEND, else exact)")
            ->check(CLI::IsMember({"exact", "float"}));
    };
    const auto size_check = CLI::Range(8, 1 << 16);

    BuildMatrixArgs bm;
    auto* c_bm = app.add_subcommand("build-matrix", "Truncated Toeplitz matrix of a symbol");
    c_bm->add_option("--symbol", bm.symbol, "Symbol JSON file")->required()->check(CLI::ExistingFile);
    c_bm->add_option("--size", bm.size, "Truncation size n")->check(size_check);
    c_bm->add_option("--format", bm.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    c_bm->add_flag("--orthonormal", bm.orthonormal, "Report entries in the orthonormal basis");
    add_backend(c_bm, bm.backend);
    add_out(c_bm, bm.out);

    MellinArgs me;
    auto* c_me = app.add_subcommand("mellin-eval", "Mellin transform of one radial profile of a symbol");
    c_me->add_option("--symbol", me.symbol, "Symbol JSON file")->required()->check(CLI::ExistingFile);
    c_me->add_option("--degree", me.degree, "Angular degree whose profile is transformed");
    c_me->add_option("--zeta", me.zetas, "Evaluation point, re or re,im (repeatable)")->required();
    c_me->add_option("--mode", me.mode, "analytic or quadrature")->check(CLI::IsMember({"analytic", "quadrature"}));
    c_me->add_option("--tol", me.tol, "Quadrature tolerance")->check(CLI::PositiveNumber);
    add_out(c_me, me.out);

    CommutatorArgs cm;
    auto* c_cm = app.add_subcommand("commutator", "Commutator [T_g, T_f] on the exact window");
    c_cm->add_option("--g", cm.g, "Symbol g")->required()->check(CLI::ExistingFile);
    c_cm->add_option("--f", cm.f, "Symbol f")->required()->check(CLI::ExistingFile);
    c_cm->add_option("--size", cm.size, "Truncation size n")->check(size_check);
    c_cm->add_flag("--closed-form", cm.closed_form, "Use the closed form for g quasi-homogeneous and f = z^l");
    c_cm->add_option("--tol", cm.tol, "Float tolerance for the verdict")->check(CLI::NonNegativeNumber);
    add_backend(c_cm, cm.backend);
    add_out(c_cm, cm.out);

    CaseArgs ca;
    auto* c_ca = app.add_subcommand("case-analysis", "Classify when two commutators can agree");
    c_ca->add_option("--p", ca.p, "Angular frequency of the radial symbol")->required();
    c_ca->add_option("--l", ca.l, "Power of z")->required()->check(CLI::PositiveNumber);
    c_ca->add_option("--m", ca.m, "Power of conj(z)")->required()->check(CLI::PositiveNumber);
    c_ca->add_option("--n", ca.n, "Power of z on the right")->required()->check(CLI::PositiveNumber);
    c_ca->add_option("--k-max", ca.k_max, "Also report G on integers up to this bound");
    add_out(c_ca, ca.out);

    FSeriesArgs fs;
    auto* c_fs = app.add_subcommand("f-series", "Evaluate the series F_{m,n,l}");
    c_fs->add_option("--m", fs.m, "Power of conj(z)")->required()->check(CLI::PositiveNumber);
    c_fs->add_option("--n", fs.n, "Power of z on the right")->required()->check(CLI::PositiveNumber);
    c_fs->add_option("--l", fs.l, "Step of the series index")->required()->check(CLI::PositiveNumber);
    c_fs->add_option("--zeta", fs.zeta, "re or re,im")->required();
    c_fs->add_option("--tol", fs.tol, "Absolute tolerance for the truncated tail")->check(CLI::PositiveNumber);
    add_out(c_fs, fs.out);

    SolveArgs so;
    auto* c_so = app.add_subcommand("solve-commutant", "Symbols in an ansatz whose Toeplitz operators commute with T_f");
    c_so->add_option("--f", so.f, "Symbol f")->required()->check(CLI::ExistingFile);
    c_so->add_option("--kmin", so.k_min, "Lowest angular degree");
    c_so->add_option("--kmax", so.k_max, "Highest angular degree");
    c_so->add_option("--smin", so.s_min, "Lowest radial exponent");
    c_so->add_option("--smax", so.s_max, "Highest radial exponent");
    c_so->add_option("--qmax", so.q_max, "Highest log power")->check(CLI::Range(0, 2));
    c_so->add_flag("--bounded-only", so.bounded_only, "Restrict to bounded profiles");
    c_so->add_option("--size", so.size, "Truncation size n")->check(size_check);
    c_so->add_option("--tol", so.tol, "Relative rank tolerance (float backend)")->check(CLI::PositiveNumber);
    c_so->add_option("--ref", so.refs, "Named reference symbol name=file.json (repeatable)");
    add_backend(c_so, so.backend);
    add_out(c_so, so.out);

    IdentityArgs vi;
    auto* c_vi = app.add_subcommand("verify-identity", "Check (T_f)^power = T_candidate on the exact window");
    c_vi->add_option("--f", vi.f, "Symbol f")->required()->check(CLI::ExistingFile);
    c_vi->add_option("--power", vi.power, "Power of T_f")->check(CLI::Range(1, 8));
    c_vi->add_option("--candidate", vi.candidate, "Candidate symbol")->required()->check(CLI::ExistingFile);
    c_vi->add_option("--size", vi.size, "Truncation size n")->check(size_check);
    c_vi->add_option("--tol", vi.tol, "Float tolerance")->check(CLI::NonNegativeNumber);
    add_backend(c_vi, vi.backend);
    add_out(c_vi, vi.out);

    ReproduceArgs ra;
    auto* c_ra = app.add_subcommand("reproduce-all", "Run every acceptance experiment");
    c_ra->add_option("--seed", ra.seed, "Seed for the randomized checks");
    add_out(c_ra, ra.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*c_bm) return build_matrix(bm);
        if (*c_me) return mellin_eval(me);
        if (*c_cm) return commutator_cmd(cm);
        if (*c_ca) return case_analysis(ca);
        if (*c_fs) return f_series_cmd(fs);
        if (*c_so) return solve_cmd(so);
        if (*c_vi) return verify_identity(vi);
        if (*c_ra) return reproduce_all(ra);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const DomainError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return exit_usage;
    } catch (const BackendError& e) {
        std::cerr << "backend error: " << e.what() << "\n";
        return exit_usage;
    } catch (const SizingError& e) {
        std::cerr << "sizing error: " << e.what() << "\n";
        return exit_usage;
    } catch (const io::json::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_verdict;
    }
    return exit_usage;
}
