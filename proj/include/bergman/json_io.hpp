#pragma once

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "bergman/banded_matrix.hpp"
#include "bergman/commutant.hpp"
#include "bergman/commutator.hpp"
#include "bergman/error.hpp"
#include "bergman/functional_eq.hpp"
#include "bergman/scalar.hpp"
#include "bergman/symbol.hpp"

namespace bergman::io {

using nlohmann::json;

/// Reads a real number written either as a JSON number or as a "p/q" string.
inline Rational read_rational(const json& v) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_number()) return Rational(v.get<double>());
    if (v.is_string()) {
        Rational q;
        if (q.set_str(v.get<std::string>(), 10) != 0) throw DomainError("bad rational literal '" + v.get<std::string>() + "'");
        q.canonicalize();
        return q;
    }
    throw DomainError("expected a number or a \"p/q\" string");
}

template <Scalar S>
S read_scalar(const json& re, const json& im) {
    if constexpr (is_exact_v<S>) {
        return {read_rational(re), read_rational(im)};
    } else {
        auto as_double = [](const json& v) { return v.is_string() ? read_rational(v).get_d() : v.get<double>(); };
        return {as_double(re), as_double(im)};
    }
}

inline json write_rational(const Rational& q) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
    return q.get_str();
}

template <Scalar S>
json write_complex(const S& v) {
    if constexpr (is_exact_v<S>) {
        return {{"re", write_rational(v.re)}, {"im", write_rational(v.im)}};
    } else {
        return {{"re", v.real()}, {"im", v.imag()}};
    }
}

template <Scalar S>
S read_complex(const json& v) {
    return read_scalar<S>(v.at("re"), v.value("im", json(0)));
}

/// {"terms":[{"degree":k,"profile":[{"re":..,"im":..,"s":..,"q":..}]}]}, or
/// {"harmonic":{"f1":[c...],"m":m,"f2":[c...]}} with c = {"re":..,"im":..}.
template <Scalar S>
Symbol<S> symbol_from_json(const json& j) {
    if (j.contains("harmonic")) {
        const auto& h = j.at("harmonic");
        HarmonicSpec<S> spec;
        for (const auto& c : h.at("f1")) spec.f1_coeffs.push_back(read_complex<S>(c));
        spec.m = h.at("m").get<int>();
        for (const auto& c : h.at("f2")) spec.f2_coeffs.push_back(read_complex<S>(c));
        return from_harmonic(spec);
    }
    Symbol<S> g;
    for (const auto& term : j.at("terms")) {
        std::vector<ProfileTerm<S>> pts;
        for (const auto& t : term.at("profile"))
            pts.push_back({read_complex<S>(t), t.value("s", 0.0), t.value("q", 0)});
        g.add(term.at("degree").get<int>(), RadialProfile<S>(std::move(pts)));
    }
    return g;
}

template <Scalar S>
json profile_to_json(const RadialProfile<S>& p) {
    json arr = json::array();
    for (const auto& t : p.terms()) {
        json e = write_complex(t.coeff);
        if (t.s == std::floor(t.s)) e["s"] = static_cast<long>(t.s);
        else e["s"] = t.s;
        e["q"] = t.q;
        arr.push_back(std::move(e));
    }
    return arr;
}

template <Scalar S>
json symbol_to_json(const Symbol<S>& g) {
    json terms = json::array();
    for (const auto& [k, p] : g.terms()) terms.push_back({{"degree", k}, {"profile", profile_to_json(p)}});
    return {{"terms", std::move(terms)}};
}

inline json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw DomainError("malformed JSON in " + path.string() + ": " + e.what());
    }
}

/// Writes through a temporary file and a rename so readers never see a partial file.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DomainError("cannot write " + tmp);
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

/// Rows (offset, column, re, im) ordered by offset, then column; zeros omitted.
template <Scalar S>
std::string matrix_to_csv(const BandedMatrix<S>& a, bool orthonormal = false) {
    std::ostringstream os;
    os.precision(17);
    os << "offset,column,re,im\n";
    for (const auto& [d, vec] : a.diagonals()) {
        auto [lo, hi] = a.column_range(d);
        for (int j = lo; j < hi; ++j) {
            if (scalar_traits<S>::is_zero(vec[j])) continue;
            os << d << ',' << j << ',';
            if constexpr (is_exact_v<S>) {
                if (!orthonormal) {
                    os << vec[j].re.get_str() << ',' << vec[j].im.get_str() << '\n';
                    continue;
                }
            }
            const Complex v = orthonormal ? orthonormal_entry(a, j + d, j) : scalar_traits<S>::to_complex(vec[j]);
            os << v.real() << ',' << v.imag() << '\n';
        }
    }
    return os.str();
}

template <Scalar S>
json matrix_to_json(const BandedMatrix<S>& a, bool orthonormal = false) {
    json entries = json::array();
    for (const auto& [d, vec] : a.diagonals()) {
        auto [lo, hi] = a.column_range(d);
        for (int j = lo; j < hi; ++j) {
            if (scalar_traits<S>::is_zero(vec[j])) continue;
            json e = {{"offset", d}, {"column", j}};
            if (orthonormal) {
                const Complex v = orthonormal_entry(a, j + d, j);
                e["re"] = v.real();
                e["im"] = v.imag();
            } else {
                e.update(write_complex(vec[j]));
            }
            entries.push_back(std::move(e));
        }
    }
    return {{"n", a.size()},
            {"window", a.window()},
            {"backend", scalar_traits<S>::name},
            {"basis", orthonormal ? "orthonormal" : "monomial"},
            {"entries", std::move(entries)}};
}

template <Scalar S>
json residual_to_json(const WindowResidual<S>& r) {
    json j = {{"max", r.max}, {"window", r.window}};
    if (r.is_zero()) {
        j["witness"] = nullptr;
    } else {
        json w = {{"row", r.row}, {"column", r.col}};
        w.update(write_complex(r.value));
        j["witness"] = std::move(w);
    }
    return j;
}

template <Scalar S>
json report_to_json(const CommutatorReport<S>& r) {
    json j = {{"verdict", to_string(r.verdict)},
              {"residual_max", r.residual_max},
              {"window", r.window},
              {"tolerance", r.tolerance},
              {"backend", scalar_traits<S>::name}};
    j["witness"] = residual_to_json(r.witness)["witness"];
    return j;
}

template <Scalar S>
json report_to_json(const SolveReport<S>& r) {
    json basis = json::array();
    for (const auto& g : r.basis) basis.push_back(symbol_to_json(g));
    json contains = json::object();
    for (const auto& [name, m] : r.contains)
        contains[name] = {{"member", m.member},
                          {"representable", m.representable},
                          {"residual", m.representable ? json(m.residual) : json(nullptr)}};
    return {{"dimension", r.dimension},     {"basis", std::move(basis)},   {"residual_max", r.residual_max},
            {"window", r.window},           {"n", r.n},                    {"equations", r.equations},
            {"unknowns", r.unknowns},       {"contains", std::move(contains)},
            {"ill_conditioned", r.ill_conditioned}, {"warnings", r.warnings},
            {"backend", scalar_traits<S>::name}};
}

inline json verdict_to_json(const CaseVerdict& v) {
    return {{"case", to_string(v.kind)}, {"constraints_used", v.constraints_used}, {"unbounded_forced", v.unbounded_forced}};
}

}  // namespace bergman::io
