#include "nrs/json_io.hpp"

namespace nrs {

namespace {

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return rational_from_string(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_number_float()) return rational_from_double(j.get<double>());
    throw InvalidInput("expected a rational coefficient (\"p/q\" or number)");
}

Json coeff_to_json(const Rational& q) { return Json(to_string(q)); }
Json coeff_to_json(const GaussRational& g) {
    return Json{{"re", to_string(g.re)}, {"im", to_string(g.im)}};
}

template <typename K>
Json poly_to_json_impl(const Poly<K>& p) {
    Json arr = Json::array();
    for (const auto& c : p.coeffs()) arr.push_back(coeff_to_json(c));
    return Json{{"coeffs", arr}};
}

const Json& coeff_array(const Json& j) {
    if (j.is_array()) return j;
    if (j.is_object() && j.contains("coeffs") && j["coeffs"].is_array()) return j["coeffs"];
    throw InvalidInput("polynomial must be a coefficient array or {\"coeffs\": [...]}");
}

}  // namespace

Json poly_to_json(const Poly<Rational>& p) { return poly_to_json_impl(p); }
Json poly_to_json(const Poly<GaussRational>& p) { return poly_to_json_impl(p); }

Poly<Rational> poly_from_json(const Json& j) {
    std::vector<Rational> c;
    for (const auto& e : coeff_array(j)) c.push_back(rational_from_json(e));
    return Poly<Rational>(std::move(c));
}

Poly<GaussRational> gauss_poly_from_json(const Json& j) {
    std::vector<GaussRational> c;
    for (const auto& e : coeff_array(j)) {
        if (e.is_object() && e.contains("re"))
            c.emplace_back(rational_from_json(e["re"]),
                           e.contains("im") ? rational_from_json(e["im"]) : Rational(0));
        else
            c.emplace_back(rational_from_json(e));
    }
    return Poly<GaussRational>(std::move(c));
}

Json system_to_json(const System& sys) {
    Json j;
    j["family"] = family_name(sys.space.family);
    j["d"] = sys.space.d;
    j["m"] = sys.space.m;
    j["n"] = sys.space.n;
    if (!sys.degrees.empty()) j["degrees"] = sys.degrees;
    Json polys = Json::array();
    if (sys.is_gauss())
        for (const auto& p : sys.gauss_polys) polys.push_back(poly_to_json(p)["coeffs"]);
    else
        for (const auto& p : sys.real_polys) polys.push_back(poly_to_json(p)["coeffs"]);
    j["polys"] = polys;
    return j;
}

System system_from_json(const Json& j) {
    if (!j.is_object()) throw InvalidInput("system JSON must be an object");
    for (const char* key : {"family", "d", "m", "n", "polys"})
        if (!j.contains(key)) throw InvalidInput(std::string("system JSON missing \"") + key + "\"");
    SpaceId id;
    id.family = family_from_name(j["family"].get<std::string>());
    id.d = j["d"].get<int>();
    id.m = j["m"].get<int>();
    id.n = j["n"].get<int>();
    std::vector<int> degrees;
    if (j.contains("degrees")) degrees = j["degrees"].get<std::vector<int>>();
    if (!j["polys"].is_array() || j["polys"].size() != static_cast<std::size_t>(id.m))
        throw InvalidInput("\"polys\" must list exactly m polynomials");
    if (id.family == Family::PolyC) {
        std::vector<Poly<GaussRational>> polys;
        for (const auto& p : j["polys"]) polys.push_back(gauss_poly_from_json(p));
        return make_system_gauss(id, std::move(polys), std::move(degrees));
    }
    std::vector<Poly<Rational>> polys;
    for (const auto& p : j["polys"]) polys.push_back(poly_from_json(p));
    return make_system(id, std::move(polys), std::move(degrees));
}

Json numeric_system_to_json(const NumericSystem& sys) {
    Json j;
    j["family"] = family_name(sys.space.family);
    j["d"] = sys.space.d;
    j["m"] = sys.space.m;
    j["n"] = sys.space.n;
    if (!sys.degrees.empty()) j["degrees"] = sys.degrees;
    j["numeric"] = true;
    j["region_maps"] = sys.region_map_version;
    const bool gauss = sys.space.family == Family::PolyC;
    Json polys = Json::array();
    for (const auto& p : sys.polys) {
        Json arr = Json::array();
        for (const auto& c : p.coeffs()) {
            if (gauss)
                arr.push_back(Json{{"re", c.real()}, {"im", c.imag()}});
            else
                arr.push_back(c.real());
        }
        polys.push_back(arr);
    }
    j["polys"] = polys;
    return j;
}

}  // namespace nrs
