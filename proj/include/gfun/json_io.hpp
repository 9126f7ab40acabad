#ifndef GFUN_JSON_IO_HPP
#define GFUN_JSON_IO_HPP

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gfun/apery.hpp"
#include "gfun/asymptotics.hpp"
#include "gfun/ode.hpp"
#include "gfun/series.hpp"

namespace gfun {

using json = nlohmann::json;

inline json to_json(const GaussianRational& x) {
    return json{{"re", {x.re.get_num().get_str(), x.re.get_den().get_str()}},
                {"im", {x.im.get_num().get_str(), x.im.get_den().get_str()}}};
}

inline GaussianRational gaussian_from_json(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("re") || !j.contains("im"))
        throw err::schema(path + ": expected {re:[num,den], im:[num,den]}");
    auto part = [&](const char* key) {
        const json& p = j.at(key);
        if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
            throw err::schema(path + "." + key + ": expected [\"num\",\"den\"]");
        return rational_from_strings(p[0].get<std::string>(), p[1].get<std::string>());
    };
    return GaussianRational(part("re"), part("im"));
}

inline json to_json(const GSeries& s) {
    json coeffs = json::array();
    for (const auto& c : s.coeffs) coeffs.push_back(to_json(c));
    json j{{"schema", "gfun.series/1"},
           {"order", s.order()},
           {"coeffs", std::move(coeffs)}};
    if (s.radius_hint && std::isfinite(*s.radius_hint))
        j["radius_hint"] = *s.radius_hint;
    else
        j["radius_hint"] = nullptr;
    return j;
}

inline GSeries series_from_json(const json& j, const std::string& path = "series") {
    if (!j.is_object() || !j.contains("coeffs") || !j.at("coeffs").is_array())
        throw err::schema(path + ": expected {order, radius_hint, coeffs:[...]}");
    std::vector<GaussianRational> coeffs;
    std::size_t idx = 0;
    for (const auto& c : j.at("coeffs"))
        coeffs.push_back(gaussian_from_json(c, path + ".coeffs[" + std::to_string(idx++) + "]"));
    GSeries s(std::move(coeffs));
    if (j.contains("order") && j.at("order").is_number_unsigned() &&
        j.at("order").get<std::size_t>() != s.order())
        throw err::schema(path + ": order field disagrees with coeffs length");
    if (j.contains("radius_hint") && j.at("radius_hint").is_number())
        s.radius_hint = j.at("radius_hint").get<double>();
    return s;
}

inline json to_json(const QiPolynomial& p) {
    json coeffs = json::array();
    for (const auto& c : p.coeffs()) coeffs.push_back(to_json(c));
    return json{{"coeffs", std::move(coeffs)}};
}

inline QiPolynomial poly_from_json(const json& j, const std::string& path = "poly") {
    if (!j.is_object() || !j.contains("coeffs") || !j.at("coeffs").is_array())
        throw err::schema(path + ": expected {coeffs:[...]}");
    std::vector<GaussianRational> coeffs;
    std::size_t idx = 0;
    for (const auto& c : j.at("coeffs"))
        coeffs.push_back(gaussian_from_json(c, path + ".coeffs[" + std::to_string(idx++) + "]"));
    return QiPolynomial(std::move(coeffs));
}

inline json to_json(const FuchsianODE& ode) {
    json coeffs = json::array();
    for (const auto& a : ode.coeffs)
        coeffs.push_back(json{{"num", to_json(a.num)}, {"den", to_json(a.den)}});
    return json{{"schema", "gfun.ode/1"}, {"order", ode.order()}, {"coeffs", std::move(coeffs)}};
}

inline FuchsianODE ode_from_json(const json& j, unsigned precision_bits = 128) {
    if (!j.is_object() || !j.contains("coeffs") || !j.at("coeffs").is_array())
        throw err::schema("ode: expected {order, coeffs:[{num, den}...]}");
    std::vector<RatFunc> coeffs;
    std::size_t idx = 0;
    for (const auto& c : j.at("coeffs")) {
        std::string path = "ode.coeffs[" + std::to_string(idx++) + "]";
        if (!c.is_object() || !c.contains("num") || !c.contains("den"))
            throw err::schema(path + ": expected {num, den}");
        coeffs.emplace_back(poly_from_json(c.at("num"), path + ".num"),
                            poly_from_json(c.at("den"), path + ".den"));
    }
    if (j.contains("order") && j.at("order").is_number_unsigned() &&
        j.at("order").get<std::size_t>() != coeffs.size())
        throw err::schema("ode: order field disagrees with coeffs length");
    return make_ode(std::move(coeffs), precision_bits);
}

inline json to_json(const Path& p) {
    json w = json::array();
    for (const auto& x : p.waypoints) w.push_back(to_json(x));
    json j{{"waypoints", std::move(w)}};
    if (!p.branch_note.empty()) j["branch_note"] = p.branch_note;
    return j;
}

inline Path path_from_json(const json& j) {
    if (!j.is_object() || !j.contains("waypoints") || !j.at("waypoints").is_array())
        throw err::schema("path: expected {waypoints:[...]}");
    Path p;
    std::size_t idx = 0;
    for (const auto& w : j.at("waypoints"))
        p.waypoints.push_back(gaussian_from_json(w, "path.waypoints[" + std::to_string(idx++) + "]"));
    if (j.contains("branch_note") && j.at("branch_note").is_string())
        p.branch_note = j.at("branch_note").get<std::string>();
    return p;
}

inline json to_json(const ComplexBall& b, unsigned digits = 40) {
    return json{{"re", b.re.str(digits)}, {"im", b.im.str(digits)}, {"err", b.rad}};
}

// CSV export: index, re_num, re_den, im_num, im_den
inline std::string series_to_csv(const GSeries& s) {
    std::ostringstream out;
    out << "index,re_num,re_den,im_num,im_den\n";
    for (std::size_t n = 0; n < s.coeffs.size(); ++n) {
        const GaussianRational& c = s.coeffs[n];
        out << n << ',' << c.re.get_num().get_str() << ',' << c.re.get_den().get_str() << ','
            << c.im.get_num().get_str() << ',' << c.im.get_den().get_str() << '\n';
    }
    return out.str();
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw err::schema("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw err::schema("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

} // namespace gfun

#endif
