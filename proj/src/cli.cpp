#include "gps/cli.hpp"

#include <algorithm>
#include <sstream>

#include <CLI11.hpp>

#include "gps/error.hpp"
#include "gps/expr.hpp"
#include "gps/identities.hpp"
#include "gps/json_io.hpp"
#include "gps/residues.hpp"

namespace gps {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool is_usage(ErrorKind k) {
    return k == ErrorKind::ParseError || k == ErrorKind::UndeclaredVariable || k == ErrorKind::MissingBox;
}

std::vector<std::string> split_list(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

std::vector<Int> parse_ints(const std::string& s, const char* what) {
    std::vector<Int> out;
    for (const auto& p : split_list(s, ',')) {
        try {
            std::size_t used = 0;
            long long v = std::stoll(p, &used);
            if (used != p.size()) throw std::invalid_argument(p);
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError(std::string(what) + ": '" + p + "' is not an integer");
        }
    }
    return out;
}

std::string json_scalar(const Field& F, const mpq_class& c) {
    if (F.is_rational()) return c.get_num().get_str() + "/" + c.get_den().get_str();
    return c.get_str();
}

struct Session {
    SessionConfig cfg;
    AmbientPtr amb;
    std::vector<std::string> names;
    bool json = false;
    std::ostream& out;

    /// Either a scalar (m = 0) or a polynomial in the H generators.
    void print_h(const HSeries& h) const {
        const Field& F = amb->field;
        if (amb->split.m == 0) {
            mpq_class v = h.constant_term().value();
            if (json)
                out << Json{{"value", json_scalar(F, v)}}.dump() << "\n";
            else
                out << format_scalar(v) << "\n";
            return;
        }
        if (json) {
            out << Json{{"value", to_json(h.series())}}.dump() << "\n";
            return;
        }
        out << format_polynomial(h.series(), names) << "\n";
        if (!h.series().is_exact()) out << "box: " << h.series().box()->to_string() << "\n";
    }

    std::optional<Box> h_window() const {
        auto b = cfg.target_box();
        if (!b || amb->split.m == 0) return std::nullopt;
        const std::size_t m = amb->split.m;
        Exponent lo(m), hi(m);
        for (std::size_t i = 0; i < m; ++i) {
            lo[i] = b->lo()[i];
            hi[i] = b->hi()[i];
        }
        return Box(lo, hi);
    }

    ParameterSystem params(const std::string& text) const {
        std::vector<Lazy> fs;
        for (const auto& s : split_list(text, ';')) fs.push_back(to_lazy(parse_expr(s, names), amb));
        return check_parameters(fs);
    }
};

}  // namespace

const char* grammar_help() {
    return "expression grammar:\n"
           "  expr  := term (('+'|'-') term)*\n"
           "  term  := unary (('*'|'/') unary)*\n"
           "  unary := '-'? power\n"
           "  power := atom ('^' integer)?      e.g. X^-1\n"
           "  atom  := rational | name | '(' expr ')'\n"
           "  'p/q' without spaces is a rational literal; H generators are named H1..Hm.\n";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact generalized power series", "gps"};
    app.require_subcommand(1);
    app.fallthrough();

    SessionConfig cfg;
    std::string vars, field = "q";
    bool json = false;
    app.add_option("--order", cfg.order, "term order rows \"r11,r12;r21,r22\" (default identity)");
    app.add_option("--vars", vars, "comma-separated variable names");
    app.add_option("--hdim", cfg.hdim, "rank m of H (generators H1..Hm)");
    app.add_option("--field", field, "q or fp:<p>");
    app.add_option("--box", cfg.box, "exactness box lo..hi,lo..hi,...");
    app.add_flag("--json", json, "JSON output");

    std::string expr_text, at, params, index, degrees, a_list, method = "direct";
    auto* eval = app.add_subcommand("eval", "print a series");
    eval->add_option("expr", expr_text)->required();
    auto* coeff = app.add_subcommand("coeff", "coefficient in the ring of H-series");
    coeff->add_option("expr", expr_text)->required();
    coeff->add_option("--at", at, "variable exponents j1,...,jn")->required();
    auto* ct = app.add_subcommand("ct", "constant term");
    ct->add_option("expr", expr_text)->required();
    auto* residue = app.add_subcommand("residue", "Jacobi residue against parameters");
    residue->add_option("expr", expr_text)->required();
    residue->add_option("--params", params, "expr;expr;...")->required();
    residue->add_option("--index", index, "coefficient index i1,...,in (default 0)");
    auto* represent = app.add_subcommand("represent", "coefficients in regular parameters");
    represent->add_option("expr", expr_text)->required();
    represent->add_option("--params", params, "expr;expr;...")->required();
    represent->add_option("--degrees", degrees, "index ranges lo..hi,...")->required();
    auto* dyson = app.add_subcommand("dyson", "verify the Dyson constant term identity");
    dyson->add_option("--a", a_list, "a1,a2,...")->required();
    dyson->add_option("--method", method, "direct | wilson | egorychev");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        out << grammar_help();
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        err << grammar_help();
        return 2;
    }

    try {
        if (dyson->parsed()) {
            DysonInstance inst;
            for (Int v : parse_ints(a_list, "--a")) inst.a.push_back(v);
            DysonMethod m;
            try {
                m = parse_dyson_method(method);
                validate(inst);
            } catch (const Error& e) {
                throw UsageError(e.what());
            }
            auto r = dyson_verify(inst, m);
            if (json) {
                Json j{{"a", inst.a}, {"method", to_string(m)}, {"lhs", json_scalar(Field(), r.lhs.value())},
                       {"rhs", json_scalar(Field(), r.rhs.value())}, {"equal", r.equal}};
                out << j.dump() << "\n";
            } else {
                out << "lhs=" << format_scalar(r.lhs.value()) << " rhs=" << format_scalar(r.rhs.value())
                    << " equal=" << (r.equal ? "true" : "false") << "\n";
            }
            return 0;
        }

        cfg.field = field;
        Session s{cfg, nullptr, {}, json, out};
        try {
            if (!vars.empty()) {
                cfg.vars = split_list(vars, ',');
            } else if (!cfg.order.empty()) {
                // Without --vars the order fixes n; variables are X1..Xn.
                std::size_t k = TermOrder::parse(cfg.order).dim();
                for (std::size_t i = 1; i + cfg.hdim <= k; ++i) cfg.vars.push_back("X" + std::to_string(i));
            } else {
                cfg.vars = {"X"};
            }
            s.cfg = cfg;
            s.amb = cfg.ambient();
            s.names = cfg.names();
            cfg.target_box();
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
        const std::size_t n = s.amb->split.n;
        Expr e = parse_expr(expr_text, s.names);

        if (eval->parsed()) {
            Series f = evaluate(e, cfg);
            if (json) {
                out << to_json(f).dump() << "\n";
            } else {
                out << format_polynomial(f, s.names) << "\n";
                if (!f.is_exact()) out << "box: " << f.box()->to_string() << "\n";
            }
        } else if (coeff->parsed() || ct->parsed()) {
            std::vector<Int> j(n, 0);
            if (coeff->parsed()) {
                j = parse_ints(at, "--at");
                if (j.size() != n) throw UsageError("--at needs " + std::to_string(n) + " entries");
            }
            s.print_h(h_coefficient_at(evaluate(e, cfg), j));
        } else if (residue->parsed()) {
            std::vector<Int> idx(n, 0);
            if (!index.empty()) {
                idx = parse_ints(index, "--index");
                if (idx.size() != n) throw UsageError("--index needs " + std::to_string(n) + " entries");
            }
            auto p = s.params(params);
            s.print_h(jacobi_coefficient(to_lazy(e, s.amb), p, idx, s.h_window()));
        } else if (represent->parsed()) {
            Box ib = [&] {
                try {
                    return Box::parse(degrees, n);
                } catch (const Error& x) {
                    throw UsageError(x.what());
                }
            }();
            auto p = s.params(params);
            auto rep = gps::represent(evaluate(e, cfg), p, ib, s.h_window());
            if (json) {
                Json list = Json::array();
                for (const auto& [i, h] : rep) {
                    Json v = s.amb->split.m == 0 ? Json(json_scalar(s.amb->field, h.constant_term().value()))
                                                 : to_json(h.series());
                    list.push_back({{"index", i}, {"value", v}});
                }
                out << Json{{"coefficients", list}}.dump() << "\n";
            } else {
                for (const auto& [i, h] : rep) {
                    std::string key;
                    for (Int v : i) key += (key.empty() ? "" : ",") + std::to_string(v);
                    out << key << ": ";
                    s.print_h(h);
                }
            }
        }
        return 0;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n" << grammar_help();
        return 2;
    } catch (const Error& e) {
        if (is_usage(e.kind())) {
            err << "usage error: " << e.what() << "\n" << grammar_help();
            return 2;
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace gps
