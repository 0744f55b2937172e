#include "harmconv/cli.hpp"

#include "harmconv/convolve.hpp"
#include "harmconv/errors.hpp"
#include "harmconv/geom.hpp"
#include "harmconv/harmonic.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>

namespace harmconv {
namespace {

using nlohmann::ordered_json;

constexpr double kDegree = std::numbers::pi / 180.0;

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_real(std::string_view text)
{
    std::string_view s = trim(text);
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ParameterError("malformed number '" + std::string(text) + "'");
    }
    return v;
}

// Imaginary coefficient text without the trailing 'i': "", "+", "-" mean ±1.
double parse_imag_coefficient(std::string_view s)
{
    s = trim(s);
    if (s.empty() || s == "+") {
        return 1.0;
    }
    if (s == "-") {
        return -1.0;
    }
    return parse_real(s);
}

std::string fmt(double v)
{
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string fmt(Cx z)
{
    const double im = z.imag();
    return fmt(z.real()) + (std::signbit(im) ? "-" : "+") + fmt(std::abs(im)) + "i";
}

std::string fmt(const ZeroCount& c)
{
    return "inside=" + std::to_string(c.inside) + " on=" + std::to_string(c.on) + " outside=" + std::to_string(c.outside);
}

std::string fmt_poly(const CPoly& p)
{
    std::string out = "[";
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
        out += (k == 0 ? "" : ", ") + fmt(p.coeffs()[k]);
    }
    return out + "]";
}

ordered_json json_real(double v)
{
    // JSON has no infinity; a pole hit on the grid is reported as a string.
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    return v;
}

ordered_json json_count(const ZeroCount& c)
{
    return {{"inside", c.inside}, {"on", c.on}, {"outside", c.outside}};
}

ordered_json json_trace(const CohnChainTrace& t)
{
    ordered_json steps = ordered_json::array();
    for (const CohnStep& s : t.steps) {
        steps.push_back({{"input", to_json(s.input)}, {"reduced", to_json(s.reduced)}, {"applicable", s.applicable}});
    }
    ordered_json roots = ordered_json::array();
    for (Cx z : t.terminal_roots) {
        roots.push_back(to_json(z));
    }
    ordered_json gates = ordered_json::array();
    for (const Gate& g : t.gates) {
        gates.push_back({{"name", g.name}, {"lhs", json_real(g.lhs)}, {"rhs", json_real(g.rhs)}, {"holds", g.holds}});
    }
    ordered_json j;
    j["method"] = t.method;
    j["special_case"] = to_string(t.special_case);
    j["oracle_fallback"] = t.oracle_fallback;
    j["z0"] = t.z0 ? to_json(*t.z0) : ordered_json(nullptr);
    j["printed_reduction_residual"] =
        t.printed_reduction_residual ? json_real(*t.printed_reduction_residual) : ordered_json(nullptr);
    j["steps"] = std::move(steps);
    j["terminal_roots"] = std::move(roots);
    j["gates"] = std::move(gates);
    return j;
}

void print_trace_text(const CohnChainTrace& t, std::ostream& out)
{
    out << "method: " << t.method << '\n' << "special_case: " << to_string(t.special_case) << '\n';
    if (t.oracle_fallback) {
        out << "oracle_fallback: yes\n";
    }
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const CohnStep& s = t.steps[i];
        out << "step " << i + 1 << ": degree " << s.input.degree() << " -> " << s.reduced.degree()
            << (s.applicable ? "" : " (not applicable)") << '\n';
    }
    for (Cx z : t.terminal_roots) {
        out << "terminal_root: " << fmt(z) << " |z|=" << fmt(std::abs(z)) << '\n';
    }
    if (t.z0) {
        out << "z0: " << fmt(*t.z0) << '\n';
    }
    if (t.printed_reduction_residual) {
        out << "printed_reduction_residual: " << fmt(*t.printed_reduction_residual) << '\n';
    }
    for (const Gate& g : t.gates) {
        out << "gate " << g.name << ": " << fmt(g.lhs) << " vs " << fmt(g.rhs) << (g.holds ? " holds" : " FAILS") << '\n';
    }
}

// --beta / --beta-deg style pair; the value in radians.
struct Angle {
    std::string name;
    bool required = false;
    double radians = 0.0;
    double degrees = 0.0;
    CLI::Option* rad_opt = nullptr;
    CLI::Option* deg_opt = nullptr;

    void add(CLI::App& app, const std::string& flag, bool is_required, const std::string& what)
    {
        name = flag;
        required = is_required;
        rad_opt = app.add_option("--" + flag, radians, what + " in radians");
        deg_opt = app.add_option("--" + flag + "-deg", degrees, what + " in degrees");
        rad_opt->excludes(deg_opt);
    }

    double value() const
    {
        if (required && rad_opt->count() == 0 && deg_opt->count() == 0) {
            throw ParameterError("--" + name + " or --" + name + "-deg is required");
        }
        return deg_opt->count() > 0 ? degrees * kDegree : radians;
    }
};

struct ParamFlags {
    int n = 1;
    double a = 0.0;
    Angle beta;
    Angle theta;

    void add(CLI::App& app)
    {
        app.add_option("--n", n, "dilatation power of the strip map")->required();
        app.add_option("--a", a, "half-plane parameter in (-1, 1)")->required();
        beta.add(app, "beta", true, "strip angle");
        theta.add(app, "theta", false, "dilatation rotation (default 0)");
    }

    ParamSet get() const
    {
        ParamSet p{a, beta.value(), theta.value(), n};
        p.validate();
        return p;
    }
};

struct GridFlags {
    GridSpec grid;

    void add(CLI::App& app)
    {
        app.add_option("--grid-radii", grid.radii, "radial samples of the |z| grid")->capture_default_str();
        app.add_option("--grid-angles", grid.angles, "angular samples of the |z| grid")->capture_default_str();
        app.add_option("--grid-rmax", grid.max_radius, "largest grid radius")->capture_default_str();
    }
};

std::string format_check(const std::string& f)
{
    return f == "json" || f == "text" ? std::string{} : "format must be json or text";
}

int cmd_cohn(const std::string& coeffs, const std::string& format, std::ostream& out)
{
    const CPoly p(parse_coefficients(coeffs));
    if (p.degree() < 1) {
        throw ParameterError("need a polynomial of degree >= 1");
    }
    const CohnCount cc = cohn_count(p);
    if (format == "json") {
        ordered_json steps = ordered_json::array();
        for (const CohnStep& s : cc.steps) {
            steps.push_back({{"input", to_json(s.input)}, {"reduced", to_json(s.reduced)}, {"applicable", s.applicable}});
        }
        ordered_json roots = ordered_json::array();
        for (Cx z : cc.oracle_roots) {
            roots.push_back(to_json(z));
        }
        ordered_json j;
        j["polynomial"] = to_json(p);
        j["zero_count"] = json_count(cc.count);
        j["steps"] = std::move(steps);
        j["oracle_fallback"] = cc.used_oracle;
        j["oracle_roots"] = std::move(roots);
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    out << "polynomial: " << fmt_poly(p) << '\n';
    for (std::size_t i = 0; i < cc.steps.size(); ++i) {
        const CohnStep& s = cc.steps[i];
        out << "step " << i + 1 << ": " << fmt_poly(s.input) << " -> " << fmt_poly(s.reduced)
            << (s.applicable ? "" : " (not applicable, root oracle used)") << '\n';
    }
    for (Cx z : cc.oracle_roots) {
        out << "oracle_root: " << fmt(z) << " |z|=" << fmt(std::abs(z)) << '\n';
    }
    out << fmt(cc.count) << '\n';
    return kExitOk;
}

int cmd_verify(const ParamSet& ps, const GridSpec& grid, const std::string& format, std::ostream& out)
{
    VerifyOptions opts;
    opts.grid = grid;
    const VerificationReport r = verify(ps, opts);
    if (format == "json") {
        out << to_json(r).dump(2) << '\n';
    } else {
        out << "params: n=" << ps.n << " a=" << fmt(ps.a) << " beta=" << fmt(ps.beta) << " theta=" << fmt(ps.theta) << '\n'
            << "zero_count: " << fmt(r.zero_count) << '\n'
            << "max_abs_dilatation: " << fmt(r.max_abs_dilatation) << '\n';
        if (r.witness) {
            out << "witness: " << fmt(*r.witness) << '\n';
        }
        if (r.trace) {
            print_trace_text(*r.trace, out);
        }
        out << "passed: " << (r.passed ? "yes" : "no") << '\n';
    }
    return r.passed ? kExitOk : kExitFailed;
}

int cmd_scan(int n, double a_step, const ScanGrid& scan, const GridSpec& grid, const std::string& curve_path,
             const std::string& format, std::ostream& out)
{
    if (!(a_step > 0.0 && a_step <= 0.1)) {
        throw ParameterError("--a-step must lie in (0, 0.1]");
    }
    const ConjectureScan s = conjecture_scan(n, a_step, scan, grid);
    if (!curve_path.empty()) {
        std::ofstream csv(curve_path, std::ios::trunc);
        if (!csv) {
            throw IoError("cannot open '" + curve_path + "' for writing");
        }
        csv << "a,passed,worst_outside,worst_max_abs\n";
        for (const CurvePoint& c : s.curve) {
            csv << fmt(c.a) << ',' << (c.passed ? 1 : 0) << ',' << c.worst_outside << ',' << fmt(c.worst_max_abs) << '\n';
        }
        if (!csv) {
            throw IoError("failed writing '" + curve_path + "'");
        }
    }
    if (format == "json") {
        out << to_json(s).dump(2) << '\n';
    } else {
        out << "n=" << n << " a_star=" << (s.a_star ? fmt(*s.a_star) : std::string("none"))
            << " predicted=" << fmt(s.predicted) << '\n';
        if (!s.monotonicity_violations.empty()) {
            out << "monotonicity_violations:";
            for (double a : s.monotonicity_violations) {
                out << ' ' << fmt(a);
            }
            out << '\n';
        }
    }
    return kExitOk;
}

int cmd_lemma(const std::string& part_name, double beta, double theta, const std::string& format, std::ostream& out)
{
    const LemmaPart part = part_name == "a" ? LemmaPart::a : part_name == "b" ? LemmaPart::b : LemmaPart::c;
    const LemmaGap g = lemma22_gap(part, beta, theta);
    const bool holds = lemma22_direction_holds(part, g);
    if (format == "json") {
        ordered_json j;
        j["part"] = part_name;
        j["beta"] = beta;
        j["theta"] = theta;
        j["gap"] = g.gap;
        j["factored"] = g.factored;
        j["residual"] = g.residual;
        j["holds"] = holds;
        out << j.dump(2) << '\n';
    } else {
        out << "gap=" << fmt(g.gap) << " factored=" << fmt(g.factored) << " residual=" << fmt(g.residual)
            << " holds=" << (holds ? "yes" : "no") << '\n';
    }
    return holds ? kExitOk : kExitFailed;
}

int cmd_omega(const ParamSet& ps, const std::string& z_text, int N, const std::string& format, std::ostream& out)
{
    const Cx z = parse_complex(z_text);
    if (!(std::abs(z) < 1.0)) {
        throw DomainError("z must lie in the open unit disk");
    }
    const RationalFn closed = tilde_omega_closed(ps);
    const HarmonicMap strip = make_strip(ps.beta, DilatationSpec::rotated_power(ps.theta, ps.n), N);
    const Cx v_closed = closed(z);
    const Cx v_hg = tilde_omega_HG(ps.a, strip)(z);
    const Cx v_series = fps::evaluate(tilde_omega_series(ps.a, strip, N), z);
    if (format == "json") {
        ordered_json j;
        j["z"] = to_json(z);
        j["closed"] = to_json(v_closed);
        j["hg"] = to_json(v_hg);
        j["series"] = to_json(v_series);
        out << j.dump(2) << '\n';
    } else {
        out << "closed: " << fmt(v_closed) << " |w|=" << fmt(std::abs(v_closed)) << '\n'
            << "hg:     " << fmt(v_hg) << '\n'
            << "series: " << fmt(v_series) << '\n';
    }
    return kExitOk;
}

int cmd_cid(const ParamSet& ps, double r, int lines, int samples, std::ostream& out)
{
    const HarmonicMap f = convolved_map(ps, truncation_for_radius(r));
    const CidResult res = cid_real_check(f, r, lines, samples);
    out << "crossings=" << res.crossings << " worst_line=" << fmt(res.worst_line)
        << " passed=" << (res.passed ? "yes" : "no") << '\n';
    return res.passed ? kExitOk : kExitFailed;
}

}  // namespace

ordered_json to_json(Cx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

ordered_json to_json(const CPoly& p)
{
    ordered_json arr = ordered_json::array();
    for (Cx c : p.coeffs()) {
        arr.push_back(to_json(c));
    }
    return arr;
}

ordered_json to_json(const VerificationReport& r)
{
    ordered_json j;
    j["params"] = {{"n", r.params.n}, {"a", r.params.a}, {"beta", r.params.beta}, {"theta", r.params.theta}};
    j["zero_count"] = json_count(r.zero_count);
    j["max_abs_dilatation"] = json_real(r.max_abs_dilatation);
    j["grid_spec"] = {{"radii", r.grid_spec.radii}, {"angles", r.grid_spec.angles}, {"max_radius", r.grid_spec.max_radius}};
    j["passed"] = r.passed;
    j["witness"] = r.witness ? to_json(*r.witness) : ordered_json(nullptr);
    j["trace"] = r.trace ? json_trace(*r.trace) : ordered_json(nullptr);
    return j;
}

ordered_json to_json(const ConjectureScan& s)
{
    ordered_json curve = ordered_json::array();
    for (const CurvePoint& c : s.curve) {
        curve.push_back({{"a", c.a},
                         {"passed", c.passed},
                         {"worst_outside", c.worst_outside},
                         {"worst_max_abs", json_real(c.worst_max_abs)}});
    }
    ordered_json j;
    j["n"] = s.n;
    j["a_step"] = s.a_step;
    j["a_star"] = s.a_star ? ordered_json(*s.a_star) : ordered_json(nullptr);
    j["predicted"] = s.predicted;
    j["curve"] = std::move(curve);
    j["monotonicity_violations"] = s.monotonicity_violations;
    return j;
}

Cx parse_complex(std::string_view text)
{
    const std::string_view s = trim(text);
    if (s.empty()) {
        throw ParameterError("empty complex literal");
    }
    if (s.front() == '(') {
        const std::size_t comma = s.find(',');
        if (s.back() != ')' || comma == std::string_view::npos) {
            throw ParameterError("malformed complex literal '" + std::string(text) + "'");
        }
        return {parse_real(s.substr(1, comma - 1)), parse_real(s.substr(comma + 1, s.size() - comma - 2))};
    }
    if (s.back() != 'i') {
        return {parse_real(s), 0.0};
    }
    const std::string_view body = s.substr(0, s.size() - 1);
    // Split before the last sign that is not an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string_view::npos) {
        return {0.0, parse_imag_coefficient(body)};
    }
    return {parse_real(body.substr(0, split)), parse_imag_coefficient(body.substr(split))};
}

std::vector<Cx> parse_coefficients(std::string_view text)
{
    std::vector<Cx> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= text.size(); ++k) {
        if (k < text.size() && text[k] == '(') {
            ++depth;
        } else if (k < text.size() && text[k] == ')') {
            --depth;
        } else if (k == text.size() || (text[k] == ',' && depth == 0)) {
            out.push_back(parse_complex(text.substr(start, k - start)));
            start = k + 1;
        }
        if (depth < 0 || depth > 1) {
            throw ParameterError("unbalanced parentheses in coefficient list");
        }
    }
    if (depth != 0) {
        throw ParameterError("unbalanced parentheses in coefficient list");
    }
    if (out.size() < 2) {
        throw ParameterError("need at least two coefficients");
    }
    return out;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Cohn zero counting and harmonic convolution checks"};
    app.name("harmconv");
    app.require_subcommand(1);

    std::string format = "text";
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "json or text")->check(format_check)->capture_default_str();
    };

    auto* cohn = app.add_subcommand("cohn", "count zeros inside, on and outside the unit circle");
    std::string coeffs;
    cohn->add_option("--coeffs", coeffs, "coefficients, lowest degree first, e.g. \"-0.5,0,(0.5,1),2i\"")->required();
    add_format(cohn);

    auto* ver = app.add_subcommand("verify", "check that the convolution is locally univalent");
    ParamFlags ver_params;
    GridFlags ver_grid;
    ver_params.add(*ver);
    ver_grid.add(*ver);
    add_format(ver);

    auto* scan = app.add_subcommand("scan", "locate the smallest a beyond which every (beta, theta) passes");
    int scan_n = 1;
    double a_step = 0.01;
    ScanGrid scan_grid;
    GridFlags scan_zgrid;
    std::string curve_path;
    scan->add_option("--n", scan_n, "dilatation power")->required();
    scan->add_option("--a-step", a_step, "spacing of the a grid, at most 0.1")->capture_default_str();
    scan->add_option("--beta-points", scan_grid.beta_points, "beta samples")->capture_default_str();
    scan->add_option("--theta-points", scan_grid.theta_points, "theta samples")->capture_default_str();
    scan->add_option("--curve", curve_path, "write the per-a pass/fail curve as CSV");
    scan_zgrid.add(*scan);
    add_format(scan);

    auto* rend = app.add_subcommand("render", "write the image of a polar grid as SVG or CSV");
    std::optional<double> half_plane_a;
    bool strip_flag = false;
    bool conv_flag = false;
    int r_n = 1;
    double r_a = 0.0;
    Angle r_beta;
    Angle r_theta;
    int rings = 10;
    int rays = 24;
    int samples = 256;
    double rmax = 0.95;
    std::string out_path;
    std::string render_format = "svg";
    auto* hp_opt = rend->add_option("--half-plane-a", half_plane_a, "render F_a");
    auto* strip_opt = rend->add_flag("--strip", strip_flag, "render the strip map with dilatation e^{i theta} z^n");
    auto* conv_opt = rend->add_flag("--conv", conv_flag, "render the convolution F_a * f_beta");
    hp_opt->excludes(strip_opt)->excludes(conv_opt);
    strip_opt->excludes(conv_opt);
    rend->add_option("--n", r_n, "dilatation power")->capture_default_str();
    rend->add_option("--a", r_a, "half-plane parameter for --conv")->capture_default_str();
    r_beta.add(*rend, "beta", false, "strip angle");
    r_theta.add(*rend, "theta", false, "dilatation rotation");
    rend->add_option("--rings", rings, "image circles")->capture_default_str();
    rend->add_option("--rays", rays, "image radii")->capture_default_str();
    rend->add_option("--samples", samples, "points per polyline")->capture_default_str();
    rend->add_option("--rmax", rmax, "outermost radius")->capture_default_str();
    rend->add_option("-o,--output", out_path, "output file")->required();
    rend->add_option("--format", render_format, "svg or csv")
        ->check(CLI::IsMember({"svg", "csv"}))
        ->capture_default_str();

    auto* lem = app.add_subcommand("lemma", "evaluate one of the trigonometric inequalities");
    std::string part = "a";
    Angle l_beta;
    Angle l_theta;
    lem->add_option("--part", part, "a, b or c")->required()->check(CLI::IsMember({"a", "b", "c"}));
    l_beta.add(*lem, "beta", true, "angle beta");
    l_theta.add(*lem, "theta", true, "angle theta");
    add_format(lem);

    auto* omg = app.add_subcommand("omega", "evaluate the convolution dilatation three ways");
    ParamFlags omg_params;
    std::string z_text;
    int omg_N = kDefaultTruncation;
    omg_params.add(*omg);
    omg->add_option("--z", z_text, "point in the unit disk, e.g. \"0.3+0.2i\" or \"(0.3,0.2)\"")->required();
    omg->add_option("--truncation", omg_N, "series order")->capture_default_str();
    add_format(omg);

    auto* cid = app.add_subcommand("cid", "sampled convexity test in the horizontal direction");
    ParamFlags cid_params;
    double cid_r = 0.99;
    int lines = 64;
    int cid_samples = 4096;
    cid_params.add(*cid);
    cid->add_option("--r", cid_r, "circle radius")->capture_default_str();
    cid->add_option("--lines", lines, "horizontal levels")->capture_default_str();
    cid->add_option("--samples", cid_samples, "points on the circle")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (cohn->parsed()) {
            return cmd_cohn(coeffs, format, out);
        }
        if (ver->parsed()) {
            return cmd_verify(ver_params.get(), ver_grid.grid, format, out);
        }
        if (scan->parsed()) {
            return cmd_scan(scan_n, a_step, scan_grid, scan_zgrid.grid, curve_path, format, out);
        }
        if (rend->parsed()) {
            const int N = truncation_for_radius(rmax);
            std::optional<HarmonicMap> f;
            if (half_plane_a) {
                f = make_half_plane(*half_plane_a);
            } else if (strip_flag) {
                f = make_strip(r_beta.value(), DilatationSpec::rotated_power(r_theta.value(), r_n), N);
            } else if (conv_flag) {
                f = convolved_map(ParamSet{r_a, r_beta.value(), r_theta.value(), r_n}, N);
            } else {
                throw ParameterError("choose one of --half-plane-a, --strip, --conv");
            }
            const ImageGrid grid = image_grid(*f, rings, rays, samples, rmax);
            render(grid, render_format == "svg" ? RenderFormat::svg : RenderFormat::csv, out_path);
            out << "wrote " << out_path << '\n';
            return kExitOk;
        }
        if (lem->parsed()) {
            return cmd_lemma(part, l_beta.value(), l_theta.value(), format, out);
        }
        if (omg->parsed()) {
            return cmd_omega(omg_params.get(), z_text, omg_N, format, out);
        }
        if (cid->parsed()) {
            return cmd_cid(cid_params.get(), cid_r, lines, cid_samples, out);
        }
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailed;
    }
    return kExitUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.emplace_back("harmconv");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (std::string& s : storage) {
        argv.push_back(s.data());
    }
    argv.push_back(nullptr);
    return run_cli(static_cast<int>(storage.size()), argv.data(), out, err);
}

}  // namespace harmconv
