#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gps/cli.hpp"
#include "gps/error.hpp"
#include "gps/expr.hpp"
#include "gps/identities.hpp"
#include "gps/json_io.hpp"
#include "gps/residues.hpp"

namespace py = pybind11;
using namespace gps;

namespace {

SessionConfig make_config(std::vector<std::string> vars, std::string order, std::string box, std::string field,
                          std::size_t hdim) {
    SessionConfig c;
    c.vars = std::move(vars);
    c.order = std::move(order);
    c.box = std::move(box);
    c.field = std::move(field);
    c.hdim = hdim;
    return c;
}

ParameterSystem parameters(const SessionConfig& cfg, const std::vector<std::string>& params) {
    auto amb = cfg.ambient();
    std::vector<Lazy> fs;
    for (const auto& p : params) fs.push_back(to_lazy(parse_expr(p, cfg.names()), amb));
    return check_parameters(fs);
}

std::string h_text(const HSeries& h, const SessionConfig& cfg) {
    if (cfg.hdim == 0) return format_scalar(h.constant_term().value());
    return format_polynomial(h.series(), cfg.names());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact generalized power series";

    static py::exception<Error> exc(m, "GpsError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(exc, e.what());
        }
    });

    m.def(
        "run",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code = run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));

    m.def(
        "evaluate",
        [](const std::string& expr, std::vector<std::string> vars, std::string order, std::string box,
           std::string field, std::size_t hdim) {
            auto cfg = make_config(std::move(vars), std::move(order), std::move(box), std::move(field), hdim);
            return to_json(evaluate(parse_expr(expr, cfg.names()), cfg)).dump();
        },
        py::arg("expr"), py::arg("vars"), py::arg("order") = "", py::arg("box") = "", py::arg("field") = "q",
        py::arg("hdim") = 0);

    m.def(
        "coefficient",
        [](const std::string& expr, const std::vector<Int>& at, std::vector<std::string> vars, std::string order,
           std::string box, std::string field, std::size_t hdim) {
            auto cfg = make_config(std::move(vars), std::move(order), std::move(box), std::move(field), hdim);
            return h_text(h_coefficient_at(evaluate(parse_expr(expr, cfg.names()), cfg), at), cfg);
        },
        py::arg("expr"), py::arg("at"), py::arg("vars"), py::arg("order") = "", py::arg("box") = "",
        py::arg("field") = "q", py::arg("hdim") = 0);

    m.def(
        "jacobi_coefficient",
        [](const std::string& expr, const std::vector<std::string>& params, const std::vector<Int>& index,
           std::vector<std::string> vars, std::string order, std::string field) {
            auto cfg = make_config(std::move(vars), std::move(order), "", std::move(field), 0);
            auto p = parameters(cfg, params);
            return h_text(jacobi_coefficient(to_lazy(parse_expr(expr, cfg.names()), cfg.ambient()), p, index), cfg);
        },
        py::arg("expr"), py::arg("params"), py::arg("index"), py::arg("vars"), py::arg("order") = "",
        py::arg("field") = "q");

    m.def(
        "represent",
        [](const std::string& expr, const std::vector<std::string>& params, const std::string& degrees,
           std::vector<std::string> vars, std::string order, std::string box, std::string field) {
            auto cfg = make_config(std::move(vars), std::move(order), std::move(box), std::move(field), 0);
            auto p = parameters(cfg, params);
            Box ib = Box::parse(degrees, cfg.vars.size());
            py::dict out;
            for (const auto& [i, h] : represent(evaluate(parse_expr(expr, cfg.names()), cfg), p, ib))
                out[py::tuple(py::cast(i))] = h_text(h, cfg);
            return out;
        },
        py::arg("expr"), py::arg("params"), py::arg("degrees"), py::arg("vars"), py::arg("order") = "",
        py::arg("box") = "", py::arg("field") = "q");

    m.def(
        "dyson_verify",
        [](const std::vector<long>& a, const std::string& method) {
            auto r = dyson_verify(DysonInstance{a}, parse_dyson_method(method));
            return py::make_tuple(format_scalar(r.lhs.value()), format_scalar(r.rhs.value()), r.equal);
        },
        py::arg("a"), py::arg("method") = "direct");

    m.def("wilson_det", [](std::size_t n) { return wilson_parameters(n).det().get_str(); }, py::arg("n"));
    m.def("egorychev_det", [](std::size_t n) { return egorychev_parameters(n).det().get_str(); }, py::arg("n"));
    m.def("cramer_identity_check", &cramer_identity_check, py::arg("n"));
    m.def(
        "lagrange_interpolation_check",
        [](std::size_t n, const std::string& box) { return lagrange_interpolation_check(n, Box::parse(box, n)); },
        py::arg("n"), py::arg("box"));
}
