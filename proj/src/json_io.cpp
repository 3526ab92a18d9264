#include "gps/json_io.hpp"

#include "gps/error.hpp"

namespace gps {

namespace {

Json exponent_json(const Exponent& e) {
    Json a = Json::array();
    for (Int x : e.coords()) a.push_back(x);
    return a;
}

Exponent exponent_from(const Json& j, std::size_t k, const char* what) {
    if (!j.is_array() || j.size() != k)
        throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be an array of " + std::to_string(k) + " integers");
    Exponent e(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (!j[i].is_number_integer()) throw Error(ErrorKind::InvalidArgument, std::string(what) + " entries must be integers");
        e[i] = j[i].get<Int>();
    }
    return e;
}

std::string coeff_string(const Field& F, const mpq_class& c) {
    if (F.is_rational()) return c.get_num().get_str() + "/" + c.get_den().get_str();
    return c.get_str();
}

mpq_class coeff_from(const Field& F, const Json& j) {
    if (!j.is_string()) throw Error(ErrorKind::InvalidArgument, "coefficients are strings");
    const auto s = j.get<std::string>();
    mpq_class c;
    if (s.empty() || c.set_str(s, 10) != 0) throw Error(ErrorKind::InvalidArgument, "bad coefficient '" + s + "'");
    c.canonicalize();
    if (F.is_rational()) {
        if (s.find('/') == std::string::npos || c.get_den() == 0)
            throw Error(ErrorKind::InvalidArgument, "rational coefficients are written num/den, got '" + s + "'");
        return c;
    }
    if (c.get_den() != 1 || c < 0 || c >= mpq_class(static_cast<unsigned long>(F.characteristic())))
        throw Error(ErrorKind::InvalidArgument, "residue '" + s + "' not in 0.." + std::to_string(F.characteristic() - 1));
    return c;
}

const Json& field_of(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::InvalidArgument, std::string("missing field '") + key + "'");
    return j.at(key);
}

}  // namespace

Json to_json(const Series& f) {
    const Ambient& a = f.ambient();
    Json j;
    j["order"] = a.order.to_string();
    j["split"] = {{"m", a.split.m}, {"n", a.split.n}};
    j["field"] = a.field.to_string();
    if (f.is_exact()) {
        j["box"] = "everywhere";
    } else {
        j["box"] = {{"lo", exponent_json(f.box()->lo())}, {"hi", exponent_json(f.box()->hi())}};
    }
    Json terms = Json::array();
    for (const auto& t : f.terms()) terms.push_back({{"exp", exponent_json(t.exp)}, {"coeff", coeff_string(a.field, t.coeff)}});
    j["terms"] = std::move(terms);
    if (!f.is_exact()) {
        Json gens = Json::array();
        for (const auto& g : f.cone().generators) gens.push_back(exponent_json(g));
        j["cone"] = {{"offset", exponent_json(f.cone().offset)}, {"generators", std::move(gens)}};
    }
    return j;
}

Series series_from_json(const Json& j) {
    if (auto err = validate_series_json(j); !err.empty()) throw Error(ErrorKind::InvalidArgument, err);
    TermOrder order = TermOrder::parse(j.at("order").get<std::string>());
    GroupSplit split(j.at("split").at("m").get<std::size_t>(), j.at("split").at("n").get<std::size_t>());
    Field F = Field::parse(j.at("field").get<std::string>());
    AmbientPtr amb = make_ambient(split, order, F);
    const std::size_t k = split.k();
    std::vector<Term> terms;
    for (const auto& t : j.at("terms")) terms.push_back(Term{exponent_from(field_of(t, "exp"), k, "exp"), coeff_from(F, field_of(t, "coeff"))});
    const Json& box = j.at("box");
    if (box.is_string()) return Series::exact(amb, std::move(terms));
    Box b(exponent_from(field_of(box, "lo"), k, "box.lo"), exponent_from(field_of(box, "hi"), k, "box.hi"));
    const Json& cj = field_of(j, "cone");
    std::vector<Exponent> gens;
    for (const auto& g : field_of(cj, "generators")) gens.push_back(exponent_from(g, k, "cone generator"));
    return Series::truncated(amb, std::move(terms), b, make_cone(order, exponent_from(field_of(cj, "offset"), k, "cone.offset"), std::move(gens)));
}

Json to_json(const NForm& w) {
    Json j = to_json(w.coeff);
    j["basis"] = w.mode == BasisMode::dX ? "dX" : "dlogX";
    return j;
}

NForm nform_from_json(const Json& j) {
    const Json& b = field_of(j, "basis");
    if (!b.is_string() || (b != "dX" && b != "dlogX")) throw Error(ErrorKind::InvalidArgument, "basis must be dX or dlogX");
    return NForm{series_from_json(j), b == "dX" ? BasisMode::dX : BasisMode::dlogX};
}

Json to_json(const GeneralizedFraction& fr) {
    Json den = Json::array();
    for (const auto& m : fr.denominator.members()) {
        const Series* s = m.stored_value();
        if (!s) throw Error(ErrorKind::InvalidArgument, "a deferred parameter has no finite JSON form");
        den.push_back(to_json(*s));
    }
    return Json{{"numerator", to_json(fr.numerator)}, {"denominator", std::move(den)}};
}

GeneralizedFraction fraction_from_json(const Json& j) {
    NForm num = nform_from_json(field_of(j, "numerator"));
    const Json& d = field_of(j, "denominator");
    if (!d.is_array()) throw Error(ErrorKind::InvalidArgument, "denominator must be an array");
    std::vector<Series> fs;
    for (const auto& s : d) fs.push_back(series_from_json(s));
    return GeneralizedFraction{std::move(num), check_parameters(fs)};
}

std::string validate_series_json(const Json& j) {
    if (!j.is_object()) return "series must be an object";
    for (const char* key : {"order", "split", "field", "box", "terms"})
        if (!j.contains(key)) return std::string("missing field '") + key + "'";
    if (!j["order"].is_string()) return "order must be a string";
    if (!j["field"].is_string()) return "field must be a string";
    const Json& sp = j["split"];
    if (!sp.is_object() || !sp.contains("m") || !sp.contains("n") || !sp["m"].is_number_unsigned() ||
        !sp["n"].is_number_unsigned())
        return "split must be {\"m\": int, \"n\": int}";
    const Json& box = j["box"];
    if (box.is_string()) {
        if (box != "everywhere") return "box must be \"everywhere\" or {lo, hi}";
        if (j.contains("cone")) return "exact series carry no cone";
    } else {
        if (!box.is_object() || !box.contains("lo") || !box.contains("hi")) return "box must be \"everywhere\" or {lo, hi}";
        if (!j.contains("cone")) return "truncated series need a cone";
        const Json& c = j["cone"];
        if (!c.is_object() || !c.contains("offset") || !c.contains("generators") || !c["generators"].is_array())
            return "cone must be {offset, generators}";
    }
    if (!j["terms"].is_array()) return "terms must be an array";
    for (const auto& t : j["terms"])
        if (!t.is_object() || !t.contains("exp") || !t.contains("coeff") || !t["exp"].is_array() || !t["coeff"].is_string())
            return "each term is {\"exp\": [..], \"coeff\": \"..\"}";
    return "";
}

}  // namespace gps
