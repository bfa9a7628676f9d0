#ifndef CARLITZ_JSON_IO_HPP
#define CARLITZ_JSON_IO_HPP

#include <json.hpp>

#include "carlitz/newton.hpp"
#include "carlitz/ore.hpp"

namespace carlitz {

using nlohmann::json;

// Canonical JSON forms. FqElem: prime-subfield residue as a plain integer
// when e = 1, coordinate vector otherwise. FqPoly: coefficients low-to-high,
// e.g. [1,0,1] = 1+θ² over F_2. Series: {"var","ram","val","trunc","coeffs"}.
// Round trips are bit-exact.

inline json to_json(const FqElem& x) {
    if (!x.F) return json(0);
    if (x.F->e == 1) return json(int(x.v));
    return json(x.F->coords(x.v));
}

inline FqElem fqelem_from_json(const Fq& F, const json& j) {
    if (j.is_number_integer()) return FqElem(F, F.from_int(j.get<long long>()));
    return FqElem(F, F.from_coords(j.get<std::vector<int>>()));
}

inline json to_json(const FqPoly& a) {
    json arr = json::array();
    for (size_t i = 0; i < a.c.size(); ++i) arr.push_back(to_json(FqElem(*a.F, a.c[i])));
    return arr;
}

inline FqPoly fqpoly_from_json(const Fq& F, const json& j) {
    FqPoly a(F);
    for (auto& cj : j) a.c.push_back(fqelem_from_json(F, cj).v);
    a.trim();
    return a;
}

inline json to_json(const RatFunc& r) {
    if (r.is_null()) return json{{"num", json::array()}, {"den", json::array({1})}};
    return json{{"num", to_json(r.num)}, {"den", to_json(r.den)}};
}

inline RatFunc ratfunc_from_json(const Fq& F, const json& j) {
    return RatFunc(fqpoly_from_json(F, j.at("num")), fqpoly_from_json(F, j.at("den")));
}

inline Var var_from_name(const std::string& s) {
    for (Var v : {Var::inv_theta, Var::inv_s, Var::u, Var::t, Var::Z, Var::geom, Var::aux})
        if (s == var_name(v)) return v;
    throw DomainMismatch("unknown series variable: " + s);
}

template <class R>
struct JsonCodec;

template <>
struct JsonCodec<FqElem> {
    static json dump(const FqElem& x) { return to_json(x); }
    static FqElem load(const Fq& F, const json& j) { return fqelem_from_json(F, j); }
    static const char* tag() { return "fq"; }
};

template <>
struct JsonCodec<RatFunc> {
    static json dump(const RatFunc& x) { return to_json(x); }
    static RatFunc load(const Fq& F, const json& j) { return ratfunc_from_json(F, j); }
    static const char* tag() { return "ratfunc"; }
};

template <class R>
json series_to_json(const Series<R>& s) {
    json j;
    j["var"] = var_name(s.var);
    if (s.ram != 1) j["ram"] = s.ram;
    j["val"] = s.val;
    if (s.is_exact())
        j["trunc"] = "exact";
    else
        j["trunc"] = s.trunc;
    json arr = json::array();
    for (auto& c : s.c) arr.push_back(JsonCodec<R>::dump(c));
    j["coeffs"] = std::move(arr);
    return j;
}

template <class R>
Series<R> series_from_json(const Fq& F, const json& j) {
    std::vector<R> coeffs;
    for (auto& cj : j.at("coeffs")) coeffs.push_back(JsonCodec<R>::load(F, cj));
    int trunc = j.at("trunc").is_string() ? kExact : j.at("trunc").get<int>();
    Series<R> s = Series<R>::make(var_from_name(j.at("var").get<std::string>()), j.at("val").get<int>(),
                                  std::move(coeffs), trunc, j.value("ram", 1));
    return s;
}

template <class R>
struct JsonCodec<Series<R>> {
    static json dump(const Series<R>& x) { return series_to_json(x); }
    static Series<R> load(const Fq& F, const json& j) { return series_from_json<R>(F, j); }
    static const char* tag() { return "series"; }
};

template <class R>
json twisted_to_json(const Twisted<R>& f) {
    json j;
    j["domain"] = JsonCodec<R>::tag();
    if (f.is_exact())
        j["trunc"] = "exact";
    else
        j["trunc"] = f.trunc;
    json arr = json::array();
    for (auto& c : f.c) arr.push_back(JsonCodec<R>::dump(c));
    j["coeffs"] = std::move(arr);
    return j;
}

template <class R>
Twisted<R> twisted_from_json(const Fq& F, const json& j) {
    std::vector<R> coeffs;
    for (auto& cj : j.at("coeffs")) coeffs.push_back(JsonCodec<R>::load(F, cj));
    int trunc = j.at("trunc").is_string() ? kExact : j.at("trunc").get<int>();
    return Twisted<R>(std::move(coeffs), trunc);
}

inline json to_json(const Rational& r) { return r.den == 1 ? json(r.num) : json(r.str()); }

inline json to_json(const NewtonPolygon& np) {
    json j;
    j["vertices"] = json::array();
    for (auto& [i, v] : np.vertices) j["vertices"].push_back(json::array({i, to_json(v)}));
    j["sides"] = json::array();
    for (auto& s : np.sides) j["sides"].push_back(json{{"slope", to_json(s.slope)}, {"length", s.length}});
    return j;
}

}  // namespace carlitz

#endif
