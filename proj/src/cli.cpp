#include <landen/cli.hpp>

#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <landen/complex_io.hpp>
#include <landen/conformal.hpp>
#include <landen/functions.hpp>
#include <landen/periods.hpp>

namespace landen::cli
{

namespace
{

using C = std::complex<double>;
using nlohmann::json;

struct CurveArgs {
    std::string g2;
    std::string g3;
};

void add_curve_options(CLI::App *sub, CurveArgs &a)
{
    sub->add_option("--g2", a.g2, "invariant g2, e.g. 3+1i")->required();
    sub->add_option("--g3", a.g3, "invariant g3, e.g. 2+0i")->required();
}

Invariants<double> invariants_of(const CurveArgs &a)
{
    return {io::parse_complex(a.g2), io::parse_complex(a.g3)};
}

class Printer
{
public:
    Printer(std::ostream &out, int digits, bool as_json) : out_(out), digits_(digits), json_(as_json)
    {
    }

    bool json_mode() const
    {
        return json_;
    }

    std::string str(const C &z) const
    {
        return io::format_complex(z, digits_);
    }

    std::string str(double x) const
    {
        return io::format_real(x, digits_);
    }

    void line(const std::string &key, const std::string &value) const
    {
        out_ << key << ' ' << value << '\n';
    }

    void row(const std::vector<std::string> &cells) const
    {
        for (std::size_t k = 0; k < cells.size(); ++k) {
            out_ << (k ? " " : "") << cells[k];
        }
        out_ << '\n';
    }

    void emit(const json &j) const
    {
        out_ << j.dump(2) << '\n';
    }

private:
    std::ostream &out_;
    int digits_;
    bool json_;
};

int code_of(errc c)
{
    switch (c) {
        case errc::non_finite:
            return non_finite_input;
        case errc::no_convergence:
            return no_convergence;
        default:
            return domain_failure;
    }
}

json read_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw io::parse_error("cannot open '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw io::parse_error("'" + path + "': " + e.what());
    }
}

const json &field(const json &obj, const char *key)
{
    if (!obj.contains(key)) {
        throw io::parse_error(std::string("params file: missing field '") + key + "'");
    }
    return obj.at(key);
}

void cmd_roots(const CurveArgs &a, const Printer &p)
{
    const auto inv = invariants_of(a);
    const SubgroupRank rank = classify(inv);
    const RootTriple<double> e = order_properly(solve_cubic(inv));
    const C delta = discriminant(inv);
    if (p.json_mode()) {
        p.emit({{"rank", to_string(rank)},
                {"roots", json::array({io::to_json(e.e1), io::to_json(e.e2), io::to_json(e.e3)})},
                {"delta", io::to_json(delta)},
                {"abs_delta", std::abs(delta)}});
        return;
    }
    p.line("rank", to_string(rank));
    p.line("e1", p.str(e.e1));
    p.line("e2", p.str(e.e2));
    p.line("e3", p.str(e.e3));
    p.line("delta", p.str(delta));
    p.line("abs_delta", p.str(std::abs(delta)));
}

void cmd_chain(const CurveArgs &a, const Printer &p, std::ostream &err)
{
    const auto inv = invariants_of(a);
    const Curve<double> curve = make_curve(inv);
    std::vector<ChainLevel<double>> levels{{inv, discriminant(inv)}};
    if (curve.rank == SubgroupRank::rank2) {
        for (const auto &l : chain_invariant_deltas(curve.chain)) {
            levels.push_back(l);
        }
    } else {
        err << "note: " << to_string(curve.rank) << " group; no Landen chain\n";
    }
    if (p.json_mode()) {
        json rows = json::array();
        for (std::size_t n = 0; n < levels.size(); ++n) {
            rows.push_back({{"n", n},
                            {"g2", io::to_json(levels[n].inv.g2)},
                            {"g3", io::to_json(levels[n].inv.g3)},
                            {"delta", io::to_json(levels[n].delta)}});
        }
        p.emit(rows);
        return;
    }
    p.row({"n", "g2", "g3", "delta"});
    for (std::size_t n = 0; n < levels.size(); ++n) {
        p.row({std::to_string(n), p.str(levels[n].inv.g2), p.str(levels[n].inv.g3), p.str(levels[n].delta)});
    }
}

void cmd_periods(const CurveArgs &a, const Printer &p, std::ostream &err)
{
    const auto inv = invariants_of(a);
    const Curve<double> curve = make_curve(inv);
    if (curve.rank == SubgroupRank::rank1) {
        err << "note: rank1 group; a single generator\n";
        if (p.json_mode()) {
            p.emit({{"rank", "rank1"}, {"omega", io::to_json(curve.omega)}});
        } else {
            p.line("rank", "rank1");
            p.line("omega", p.str(curve.omega));
        }
        return;
    }
    const Lattice<double> lat = make_lattice(curve);
    const C legendre = lat.eta.eta1 * lat.basis.omega2 - lat.eta.eta2 * lat.basis.omega1;
    const double residual = std::abs(legendre - C(0, 2 * std::numbers::pi));
    if (p.json_mode()) {
        p.emit({{"rank", "rank2"},
                {"omega1", io::to_json(lat.basis.omega1)},
                {"omega2", io::to_json(lat.basis.omega2)},
                {"eta1", io::to_json(lat.eta.eta1)},
                {"eta2", io::to_json(lat.eta.eta2)},
                {"legendre_residual", residual},
                {"chain_length", curve.chain.length()}});
        return;
    }
    p.line("rank", "rank2");
    p.line("omega1", p.str(lat.basis.omega1));
    p.line("omega2", p.str(lat.basis.omega2));
    p.line("eta1", p.str(lat.eta.eta1));
    p.line("eta2", p.str(lat.eta.eta2));
    p.line("legendre_residual", p.str(residual));
    p.line("chain_length", std::to_string(curve.chain.length()));
}

void cmd_abel(const CurveArgs &a, const std::string &x, const std::string &y, const Printer &p)
{
    const CurvePoint<double> pt{io::parse_complex(x), io::parse_complex(y)};
    const C z = abel_map(invariants_of(a), pt);
    if (p.json_mode()) {
        p.emit({{"z", io::to_json(z)}});
    } else {
        p.line("z", p.str(z));
    }
}

void cmd_eval(const CurveArgs &a, const std::string &zs, const std::vector<std::string> &names, const Printer &p)
{
    const C z = io::parse_complex(zs);
    unsigned bits = 0;
    for (const auto &n : names) {
        if (n == "p") {
            bits |= static_cast<unsigned>(FunctionSet::p);
        } else if (n == "dp") {
            bits |= static_cast<unsigned>(FunctionSet::dp);
        } else if (n == "zeta") {
            bits |= static_cast<unsigned>(FunctionSet::zeta);
        } else if (n == "sigma") {
            bits |= static_cast<unsigned>(FunctionSet::sigma);
        } else {
            throw io::parse_error("unknown function '" + n + "' (expected p, dp, zeta, sigma)");
        }
    }
    const auto set = static_cast<FunctionSet>(bits == 0 ? static_cast<unsigned>(FunctionSet::all) : bits);
    const auto v = weierstrass_at(invariants_of(a), z, Tolerances<double>{}, set);
    const std::pair<FunctionSet, std::pair<const char *, C>> entries[] = {
        {FunctionSet::p, {"p", v.p}},
        {FunctionSet::dp, {"dp", v.dp}},
        {FunctionSet::zeta, {"zeta", v.zeta}},
        {FunctionSet::sigma, {"sigma", v.sigma}},
    };
    json j = json::object();
    for (const auto &[f, kv] : entries) {
        if (!contains(set, f)) {
            continue;
        }
        if (p.json_mode()) {
            j[kv.first] = io::to_json(kv.second);
        } else {
            p.line(kv.first, p.str(kv.second));
        }
    }
    if (p.json_mode()) {
        p.emit(j);
    }
}

struct QmapArgs {
    std::optional<double> gamma;
    std::string params;
    std::string z;
    std::string trace;
};

void cmd_qmap(const QmapArgs &a, const Printer &p)
{
    const json file = read_json_file(a.params);
    if (!file.is_object()) {
        throw io::parse_error("params file must hold a JSON object");
    }
    ConformalParams<double> params;
    params.D = io::complex_from_json(field(file, "D"));
    params.zplus = io::complex_from_json(field(file, "zplus"));
    params.zminus = io::complex_from_json(field(file, "zminus"));
    params.hplus = io::complex_from_json(field(file, "hplus")).real();
    params.hminus = io::complex_from_json(field(file, "hminus")).real();

    std::optional<ConformalMap<double>> map;
    if (a.gamma) {
        map.emplace(make_conformal_map(params, curve_from_gamma(*a.gamma)));
    } else {
        params.inv = {io::complex_from_json(field(file, "g2")), io::complex_from_json(field(file, "g3"))};
        map.emplace(make_conformal_map(params));
    }

    if (!a.z.empty()) {
        const C z = io::parse_complex(a.z);
        const C q = (*map)(z);
        if (p.json_mode()) {
            p.emit({{"z", io::to_json(z)}, {"Q", io::to_json(q)}});
        } else {
            p.line("Q", p.str(q));
        }
        return;
    }

    const json samples = read_json_file(a.trace);
    if (!samples.is_array()) {
        throw io::parse_error("trace file must hold a JSON array of complex records");
    }
    std::vector<C> path;
    path.reserve(samples.size());
    for (const auto &s : samples) {
        path.push_back(io::complex_from_json(s));
    }
    const std::vector<C> q = map->trace(path);
    if (p.json_mode()) {
        json rows = json::array();
        for (std::size_t k = 0; k < q.size(); ++k) {
            rows.push_back({{"z", io::to_json(path[k])}, {"Q", io::to_json(q[k])}});
        }
        p.emit(rows);
        return;
    }
    for (std::size_t k = 0; k < q.size(); ++k) {
        p.row({p.str(path[k]), p.str(q[k])});
    }
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Weierstrass elliptic functions, periods and the Abel map via Landen transformations", "landen"};
    app.require_subcommand(1);
    app.fallthrough();
    int digits = 17;
    bool as_json = false;
    app.add_option("--digits", digits, "significant digits in text output")
        ->check(CLI::Range(1, 17))
        ->capture_default_str();
    app.add_flag("--json", as_json, "emit JSON instead of text");

    CurveArgs roots_args;
    auto *roots = app.add_subcommand("roots", "properly ordered roots of 4x^3 - g2 x - g3 and the discriminant");
    add_curve_options(roots, roots_args);

    CurveArgs chain_args;
    auto *chain = app.add_subcommand("chain", "invariants and discriminant along the optimal Landen chain");
    add_curve_options(chain, chain_args);

    CurveArgs periods_args;
    auto *periods = app.add_subcommand("periods", "reduced basis, quasi-periods and the Legendre residual");
    add_curve_options(periods, periods_args);

    CurveArgs abel_args;
    std::string abel_x;
    std::string abel_y;
    auto *abel = app.add_subcommand("abel", "Abel map of a point on the curve");
    add_curve_options(abel, abel_args);
    abel->add_option("--x", abel_x, "x coordinate")->required();
    abel->add_option("--y", abel_y, "y coordinate")->required();

    CurveArgs eval_args;
    std::string eval_z;
    std::vector<std::string> eval_functions;
    auto *eval = app.add_subcommand("eval", "wp, wp', zeta and sigma at z");
    add_curve_options(eval, eval_args);
    eval->add_option("--z", eval_z, "argument")->required();
    eval->add_option("--functions", eval_functions, "subset of p,dp,zeta,sigma")->delimiter(',');

    QmapArgs qmap_args;
    auto *qmap = app.add_subcommand("qmap", "conformal map Q(z) of the channel problem");
    qmap->add_option("--gamma", qmap_args.gamma, "curve parameter in (-1/6, 1/6); overrides g2, g3 of the params file");
    qmap->add_option("--params", qmap_args.params, "JSON file with D, zplus, zminus, hplus, hminus, g2, g3")
        ->required();
    auto *qz = qmap->add_option("--z", qmap_args.z, "single argument");
    auto *qt = qmap->add_option("--trace", qmap_args.trace, "JSON array of arguments traced with branch continuity");
    qz->excludes(qt);
    qt->excludes(qz);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        if (qmap->parsed() && qmap_args.z.empty() && qmap_args.trace.empty()) {
            throw CLI::RequiredError("qmap needs --z or --trace");
        }
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? ok : parse_failure;
    }

    const Printer p(out, digits, as_json);
    try {
        if (roots->parsed()) {
            cmd_roots(roots_args, p);
        } else if (chain->parsed()) {
            cmd_chain(chain_args, p, err);
        } else if (periods->parsed()) {
            cmd_periods(periods_args, p, err);
        } else if (abel->parsed()) {
            cmd_abel(abel_args, abel_x, abel_y, p);
        } else if (eval->parsed()) {
            cmd_eval(eval_args, eval_z, eval_functions, p);
        } else if (qmap->parsed()) {
            cmd_qmap(qmap_args, p);
        }
    } catch (const landen::error &e) {
        err << "error: " << e.what() << '\n';
        return code_of(e.code());
    } catch (const io::parse_error &e) {
        err << "error: " << e.what() << '\n';
        return parse_failure;
    } catch (const json::exception &e) {
        err << "error: " << e.what() << '\n';
        return parse_failure;
    }
    return ok;
}

} // namespace landen::cli
