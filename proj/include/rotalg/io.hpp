#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "rotalg/diffeology.hpp"
#include "rotalg/phi.hpp"
#include "rotalg/kernel.hpp"
#include "rotalg/nc_torus.hpp"
#include "rotalg/periods.hpp"

namespace rotalg {

using json = nlohmann::json;

// ---- period files: UTF-8 JSON array of {"a":"p/q","b":"p/q"} ----

inline PeriodGroup parse_period_group(const json& j, double lambda) {
    if (!j.is_array()) fail(errc::bad_input, "period file must be a JSON array");
    std::vector<PeriodValue> gens;
    for (const auto& rec : j) {
        if (!rec.is_object() || !rec.contains("a") || !rec.contains("b"))
            fail(errc::bad_input, "period record needs fields a and b");
        gens.push_back({Rational::from_string(rec["a"].get<std::string>()),
                        Rational::from_string(rec["b"].get<std::string>())});
    }
    return PeriodGroup{std::move(gens), lambda};
}

inline PeriodGroup load_period_group(const std::string& path, double lambda) {
    std::ifstream in(path);
    if (!in) fail(errc::bad_input, "cannot open period file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail(errc::bad_input, std::string("malformed JSON: ") + e.what());
    }
    return parse_period_group(j, lambda);
}

// ---- NcElement: list of {m, n, re, im} ----

inline json to_json(const NcElement& a) {
    json out = json::array();
    for (const auto& [mn, v] : a.c)
        out.push_back({{"m", mn.first}, {"n", mn.second}, {"re", v.real()}, {"im", v.imag()}});
    return out;
}

inline NcElement nc_from_json(const json& j) {
    NcElement a;
    for (const auto& rec : j)
        a.c[{rec["m"].get<int>(), rec["n"].get<int>()}] +=
            cplx(rec["re"].get<double>(), rec["im"].get<double>());
    a.prune();
    return a;
}

// ---- densities and kernels ----

inline json to_json(const Density& d) {
    json atoms = json::array();
    for (const auto& a : d.atoms) {
        json fs = json::array();
        for (const auto& f : a.factors)
            fs.push_back({{"axes", f.axes}, {"center", f.center}, {"radii", f.radii}});
        json rec{{"re", a.amp.real()}, {"im", a.amp.imag()}, {"factors", fs}};
        if (!a.freq.empty()) rec["freq"] = a.freq;
        atoms.push_back(rec);
    }
    json dom = json::array();
    for (auto& iv : d.domain.iv) dom.push_back({iv[0], iv[1]});
    return {{"domain", dom}, {"atoms", atoms}, {"err", d.err}};
}

inline Density density_from_json(const json& j) {
    Density d;
    for (const auto& iv : j["domain"]) d.domain.iv.push_back({iv[0].get<double>(), iv[1].get<double>()});
    for (const auto& rec : j["atoms"]) {
        Atom a;
        a.amp = cplx(rec["re"].get<double>(), rec["im"].get<double>());
        for (const auto& f : rec["factors"]) {
            RadialFactor rf;
            rf.axes = f["axes"].get<std::vector<int>>();
            rf.center = f["center"].get<std::vector<double>>();
            rf.radii = f["radii"].get<std::vector<double>>();
            a.factors.push_back(std::move(rf));
        }
        if (rec.contains("freq")) a.freq = rec["freq"].get<std::vector<double>>();
        d.atoms.push_back(std::move(a));
    }
    d.err = j.value("err", 0.0);
    return d;
}

inline json to_json(const GroupoidKernel& k) {
    json modes = json::array();
    for (const auto& [mn, p] : k.modes) {
        json terms = json::array();
        for (const auto& t : p.terms)
            terms.push_back({{"re", t.amp.real()},
                             {"im", t.amp.imag()},
                             {"center", t.center},
                             {"width", t.width},
                             {"freq", t.freq}});
        modes.push_back({{"m", mn.first}, {"n", mn.second}, {"terms", terms}, {"err", p.err}});
    }
    return {{"lambda", k.session.lambda},
            {"bandlimit", k.session.bandlimit},
            {"time_support", k.time_halfwidth()},
            {"modes", modes}};
}

inline GroupoidKernel kernel_from_json(const json& j) {
    Session s;
    s.lambda = j["lambda"].get<double>();
    s.bandlimit = j["bandlimit"].get<int>();
    GroupoidKernel k(s);
    for (const auto& rec : j["modes"]) {
        TimeProfile p;
        for (const auto& t : rec["terms"])
            p.terms.push_back({cplx(t["re"].get<double>(), t["im"].get<double>()),
                               t["center"].get<double>(), t["width"].get<double>(),
                               t["freq"].get<double>()});
        p.err = rec.value("err", 0.0);
        k.mode(rec["m"].get<int>(), rec["n"].get<int>()) = std::move(p);
    }
    return k;
}

// bridge-check report records: {check, structure, max_deviation, tolerance, status}
inline json to_json(const StarHomReport& r) {
    double maxdev = std::max({r.product_dev, r.involution_dev, r.diagram_inv_dev, r.diagram_mul_dev});
    return {{"check", "star-homomorphism"},
            {"structure", r.structure},
            {"max_deviation", maxdev},
            {"tolerance", r.tolerance},
            {"status", r.pass ? "pass" : "fail"}};
}

// DiffClass: {cover_tuple, canonical_kernel}
inline json to_json(const DiffClass& c) {
    json tuple = json::array();
    auto cover = c.cover_tuple();
    for (int i = 0; i < 4; ++i) {
        json d = to_json(cover[i]);
        d["chart"] = i;
        tuple.push_back(d);
    }
    return {{"cover_tuple", tuple}, {"canonical_kernel", to_json(c.canonical_kernel())}};
}

inline DiffClass class_from_json(const json& j) {
    GroupoidKernel k = kernel_from_json(j["canonical_kernel"]);
    DiffClass c(k.session);
    for (const auto& [mn, p] : k.modes) c.coeff[mn] = p.fourier(k.session.theta(mn.first, mn.second));
    return c;
}

} // namespace rotalg
