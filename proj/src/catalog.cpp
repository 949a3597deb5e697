#include "calib/catalog.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace calib {

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

DomainBox box(double u0, double u1, double v0, double v1) {
    DomainBox b;
    b.u0 = u0;
    b.u1 = u1;
    b.v0 = v0;
    b.v1 = v1;
    return b;
}

std::vector<Expr> parse_all(std::initializer_list<std::string> texts) {
    std::vector<Expr> out;
    for (const std::string& t : texts) out.push_back(parse(t));
    return out;
}

}  // namespace

CatalogEntry catenoid_family(double C, double K) {
    if (C == 0 || K == 0) throw std::invalid_argument("catenoid_family: C and K must be nonzero");
    double c1 = C / 2;
    double c2 = (1 - K * K) / (2 * C * K * K);
    std::string f = "(" + num(c1) + ")*exp(" + num(K) + "*u) + (" + num(c2) + ")*exp(" +
                    num(-K) + "*u)";
    CatalogEntry e;
    e.name = "catenoid(C=" + num(C) + ",K=" + num(K) + ")";
    e.immersion = Immersion(
        2, 4, parse_all({"u", "v", "(" + f + ")*cos(v)", "(" + f + ")*sin(v)"}),
        box(-1.2, 1.2, -3.0, 3.0));
    e.expected.minimal = true;
    e.expected.austere = true;
    e.expected.isotropic_plus = (K == 1);
    e.expected.isotropic_minus = false;
    e.provenance = "general solution of f(1+f'^2) = f''(1+f^2), profile f = " + f;
    if (K == 1) e.cr_claim = CrClaim::holomorphic;
    return e;
}

CatalogEntry rotational_family(double K, double L) {
    if (!(L > 0)) throw std::invalid_argument("rotational_family: L must be positive");
    if (K == 0) throw std::invalid_argument("rotational_family: K must be nonzero");
    double r2 = 4 * (1 + K * K) / L;
    double cf = 2 * K / std::sqrt(L);
    double cg = 2 / std::sqrt(L);
    std::string radial = "sqrt(u^2+v^2) + sqrt(u^2+v^2 - " + num(r2) + ")";
    CatalogEntry e;
    e.name = "rotational(K=" + num(K) + ",L=" + num(L) + ")";
    DomainBox b = box(-std::sqrt(2.5 * r2), std::sqrt(2.5 * r2), -std::sqrt(2.5 * r2),
                      std::sqrt(2.5 * r2));
    // keep a safety margin away from the singular circle t = r2
    b.keep_if_positive = parse("u^2+v^2 - " + num(1.44 * r2));
    e.immersion = Immersion(2, 4,
                            parse_all({"u", "v", "(" + num(cf) + ")*log(" + radial + ")",
                                       "(" + num(cg) + ")*log(" + radial + ")"}),
                            b);
    e.expected.minimal = true;
    e.expected.austere = true;
    e.expected.isotropic_plus = false;
    e.expected.isotropic_minus = false;
    e.provenance = "rotationally symmetric minimal graph, t f'' + f' + 2 t f'((f')^2+(g')^2) = 0";
    e.note = "defined outside the disk u^2+v^2 <= " + num(r2) + " (sampled with margin)";
    return e;
}

CatalogEntry graph_surface(const std::string& name, const std::string& f1,
                           const std::string& f2, CatalogFlags flags) {
    CatalogEntry e;
    e.name = name;
    Expr e1 = parse(f1), e2 = parse(f2);
    e.immersion = Immersion(2, 4, {parse("u"), parse("v"), e1, e2}, box(-1, 1, -1, 1));
    e.expected = flags;
    e.provenance = "graph (u, v, " + f1 + ", " + f2 + ")";
    e.graph_components = {e1, e2};
    return e;
}

CatalogEntry holomorphic_graph(const std::string& name, const std::string& re,
                               const std::string& im) {
    CatalogFlags flags;
    flags.minimal = true;
    flags.austere = true;
    flags.isotropic_plus = true;
    flags.isotropic_minus = false;
    CatalogEntry e = graph_surface(name, re, im, flags);
    e.cr_claim = CrClaim::holomorphic;
    e.provenance = "holomorphic graph w = f(z), f = (" + re + ") + i(" + im + ")";
    return e;
}

CatalogEntry antiholomorphic_graph(const std::string& name, const std::string& re,
                                   const std::string& im) {
    CatalogFlags flags;
    flags.minimal = true;
    flags.austere = true;
    flags.isotropic_plus = false;
    flags.isotropic_minus = true;
    CatalogEntry e = graph_surface(name, re, im, flags);
    e.cr_claim = CrClaim::antiholomorphic;
    e.provenance = "anti-holomorphic graph w = f(z-bar), f = (" + re + ") + i(" + im + ")";
    return e;
}

namespace {

CatalogEntry parametric_entry(const std::string& name, int p, int n,
                              std::initializer_list<std::string> comps, DomainBox b,
                              CatalogFlags flags, const std::string& provenance) {
    CatalogEntry e;
    e.name = name;
    e.immersion = Immersion(p, n, parse_all(comps), b);
    e.expected = flags;
    e.provenance = provenance;
    return e;
}

std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> v;

    CatalogFlags all_true;
    all_true.minimal = all_true.austere = true;
    all_true.isotropic_plus = all_true.isotropic_minus = true;
    v.push_back(parametric_entry("plane", 2, 4,
                                 {"u", "v", "0.5*u - 0.2*v", "0.3*u + 0.1*v"},
                                 box(-1, 1, -1, 1), all_true, "affine plane"));

    {
        CatalogEntry e = holomorphic_graph("holomorphic_expz", "exp(u)*cos(v)", "exp(u)*sin(v)");
        e.immersion = Immersion(2, 4, e.immersion.components(), box(-1, 1, -1.5, 1.5));
        v.push_back(e);
    }
    {
        CatalogEntry e =
            antiholomorphic_graph("antiholomorphic_expz", "exp(u)*cos(v)", "-exp(u)*sin(v)");
        e.immersion = Immersion(2, 4, e.immersion.components(), box(-1, 1, -1.5, 1.5));
        v.push_back(e);
    }

    v.push_back(catenoid_family(2, 0.5));
    v.push_back(rotational_family(1, 4));

    v.push_back(antiholomorphic_graph("slag_harmonic", "u^2 - v^2", "-2*u*v"));

    {
        // gradient graph of a potential solving det D2F = 1 (phase pi/2
        // special Lagrangian); f^k = dF/dx^k with F radial
        CatalogFlags f;
        f.minimal = true;
        f.austere = true;
        f.isotropic_plus = false;
        f.isotropic_minus = true;
        CatalogEntry e = graph_surface("slag_ma", "u*sqrt(1 + 1/(u^2+v^2))",
                                       "v*sqrt(1 + 1/(u^2+v^2))", f);
        e.immersion = Immersion(2, 4, e.immersion.components(), box(0.6, 1.8, 0.6, 1.8));
        e.provenance = "gradient graph of a radial solution of F_11 F_22 - F_12^2 = 1";
        v.push_back(e);
    }

    v.push_back(graph_surface("paraboloid", "u^2 + v^2", "0", CatalogFlags{}));
    {
        CatalogEntry e = graph_surface("graph_sine", "sin(u)*sin(v)", "0", CatalogFlags{});
        e.immersion = Immersion(2, 4, e.immersion.components(), box(0.3, 1.2, 0.3, 1.2));
        v.push_back(e);
    }

    {
        CatalogFlags f;
        f.minimal = true;
        f.austere = true;
        v.push_back(parametric_entry("catenoid3", 2, 3,
                                     {"cosh(u)*cos(v)", "cosh(u)*sin(v)", "u"},
                                     box(-1, 1, -3, 3), f, "catenoid in R^3"));
    }
    {
        CatalogFlags f;
        f.minimal = true;
        f.austere = true;
        CatalogEntry e;
        e.name = "scherk3";
        e.immersion = Immersion(2, 3, parse_all({"u", "v", "log(cos(u)) - log(cos(v))"}),
                                box(-1.2, 1.2, -1.2, 1.2));
        e.expected = f;
        e.provenance = "doubly periodic minimal graph z = log(cos u / cos v)";
        e.graph_components = {parse("log(cos(u)) - log(cos(v))")};
        v.push_back(e);
    }
    v.push_back(parametric_entry("sphere3", 2, 3,
                                 {"sin(u)*cos(v)", "sin(u)*sin(v)", "cos(u)"},
                                 box(0.4, 1.2, 0.3, 1.5), CatalogFlags{},
                                 "unit sphere patch in R^3"));
    {
        CatalogEntry e;
        e.name = "paraboloid3";
        e.immersion = Immersion(2, 3, parse_all({"u", "v", "u^2 + v^2"}), box(-1, 1, -1, 1));
        e.provenance = "graph (u, v, u^2+v^2) in R^3";
        e.graph_components = {parse("u^2 + v^2")};
        v.push_back(e);
    }

    {
        CatalogFlags f;
        f.minimal = true;
        f.austere = true;
        v.push_back(parametric_entry("line3", 1, 3,
                                     {"0.2 + 0.6*u", "-0.3 + 0.7*u", "0.1 + 0.4*u"},
                                     box(-1, 1, 0, 0), f, "straight line in R^3"));
    }
    v.push_back(parametric_entry("circle3", 1, 3, {"cos(u)", "sin(u)", "0"},
                                 box(0, 6.0, 0, 0), CatalogFlags{}, "unit circle in R^3"));

    return v;
}

// "name(A=1,B=2)" -> name, {1, 2}
bool split_params(const std::string& spec, std::string& name, std::vector<double>& params) {
    auto open = spec.find('(');
    if (open == std::string::npos) {
        name = spec;
        return true;
    }
    if (spec.back() != ')') return false;
    name = spec.substr(0, open);
    std::string inner = spec.substr(open + 1, spec.size() - open - 2);
    std::size_t pos = 0;
    while (pos < inner.size()) {
        auto comma = inner.find(',', pos);
        std::string piece = inner.substr(pos, comma == std::string::npos ? inner.npos
                                                                         : comma - pos);
        auto eq = piece.find('=');
        std::string value = (eq == std::string::npos) ? piece : piece.substr(eq + 1);
        try {
            params.push_back(std::stod(value));
        } catch (...) {
            return false;
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return true;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
    static const std::vector<CatalogEntry> entries = build_catalog();
    return entries;
}

std::optional<CatalogEntry> catalog_lookup(const std::string& spec) {
    std::string name;
    std::vector<double> params;
    if (!split_params(spec, name, params)) return std::nullopt;

    if (name == "catenoid") {
        if (params.empty()) return catenoid_family(2, 0.5);
        if (params.size() == 2) return catenoid_family(params[0], params[1]);
        return std::nullopt;
    }
    if (name == "rotational") {
        if (params.empty()) return rotational_family(1, 4);
        if (params.size() == 2) return rotational_family(params[0], params[1]);
        return std::nullopt;
    }
    for (const CatalogEntry& e : catalog_entries())
        if (e.name == spec || e.name == name) return e;
    return std::nullopt;
}

double catenoid_ode_residual(double C, double K, double u) {
    double c1 = C / 2;
    double c2 = (1 - K * K) / (2 * C * K * K);
    Expr f = parse("(" + num(c1) + ")*exp(" + num(K) + "*u) + (" + num(c2) + ")*exp(" +
                   num(-K) + "*u)");
    Jet2 j = f.eval_jet2(u, 0);
    return j.v * (1 + j.du * j.du) - j.huu * (1 + j.v * j.v);
}

std::array<double, 2> rotational_ode_residual(double K, double L, double t) {
    double r2 = 4 * (1 + K * K) / L;
    double cf = 2 * K / std::sqrt(L);
    double cg = 2 / std::sqrt(L);
    Expr f = parse("(" + num(cf) + ")*log(sqrt(u) + sqrt(u - " + num(r2) + "))");
    Expr g = parse("(" + num(cg) + ")*log(sqrt(u) + sqrt(u - " + num(r2) + "))");
    Jet2 jf = f.eval_jet2(t, 0);
    Jet2 jg = g.eval_jet2(t, 0);
    double speed2 = jf.du * jf.du + jg.du * jg.du;
    return {t * jf.huu + jf.du + 2 * t * jf.du * speed2,
            t * jg.huu + jg.du + 2 * t * jg.du * speed2};
}

namespace {

std::vector<ExplicitMap> build_explicit_maps() {
    std::vector<ExplicitMap> maps;

    {
        ExplicitMap m;
        m.name = "assoc_expz";
        m.base_surface = "holomorphic_expz";
        m.kind = ConstructionKind::associative_E;
        m.fibre_rank = 1;
        m.fibre_dir[0] = parse_all({"sinh(u)/cosh(u)", "sin(v)/cosh(u)", "-cos(v)/cosh(u)"});
        m.base = parse_all({"u", "v", "exp(u)*cos(v)", "exp(u)*sin(v)"});
        maps.push_back(m);
    }
    {
        ExplicitMap m;
        m.name = "assoc_catenoid";
        m.base_surface = "catenoid(C=2,K=0.5)";
        m.kind = ConstructionKind::associative_E;
        m.fibre_rank = 1;
        m.fibre_dir[0] =
            parse_all({"(4*exp(u) - 9)/(12*exp(u/2))", "sin(v)", "-cos(v)"});
        std::string f = "exp(u/2) + 0.75*exp(-u/2)";
        m.base = parse_all({"u", "v", "(" + f + ")*cos(v)", "(" + f + ")*sin(v)"});
        maps.push_back(m);
    }
    {
        ExplicitMap m;
        m.name = "assoc_rotational";
        m.base_surface = "rotational(K=1,L=4)";
        m.kind = ConstructionKind::associative_E;
        m.fibre_rank = 1;
        // anti-self-dual projection of the tangent plane, scaled by h1 h2
        m.fibre_dir[0] = parse_all({"sqrt(u^2+v^2)*sqrt(u^2+v^2-2)", "v-u", "u+v"});
        std::string lg = "log(sqrt(u^2+v^2) + sqrt(u^2+v^2-2))";
        m.base = parse_all({"u", "v", lg, lg});
        maps.push_back(m);
    }
    {
        ExplicitMap m;
        m.name = "coass_expz";
        m.base_surface = "holomorphic_expz";
        m.kind = ConstructionKind::cayley_minus;
        m.fibre_rank = 2;
        // V_- spanned by (0, -2 u_y, 1-|grad u|^2, 0) and (0, -2 u_x, 0, 1-|grad u|^2)
        m.fibre_dir[0] = parse_all({"2*exp(u)*sin(v)", "1 - exp(2*u)", "0"});
        m.fibre_dir[1] = parse_all({"-2*exp(u)*cos(v)", "0", "1 - exp(2*u)"});
        m.base = parse_all({"u", "v", "exp(u)*cos(v)", "exp(u)*sin(v)"});
        maps.push_back(m);
    }
    return maps;
}

}  // namespace

const std::vector<ExplicitMap>& explicit_calibrated_maps() {
    static const std::vector<ExplicitMap> maps = build_explicit_maps();
    return maps;
}

const ExplicitMap& explicit_calibrated(const std::string& name) {
    for (const ExplicitMap& m : explicit_calibrated_maps())
        if (m.name == name) return m;
    throw std::invalid_argument("explicit_calibrated: unknown name '" + name + "'");
}

ExplicitMapJet eval_explicit(const ExplicitMap& map, double x, double y, const double* t) {
    ExplicitMapJet out;
    out.tangent_count = 2 + map.fibre_rank;
    for (int l = 0; l < 3; ++l) {
        for (int r = 0; r < map.fibre_rank; ++r) {
            Jet2 j = map.fibre_dir[r][static_cast<std::size_t>(l)].eval_jet2(x, y);
            out.point[l] += t[r] * j.v;
            out.tangent[0][l] += t[r] * j.du;
            out.tangent[1][l] += t[r] * j.dv;
            out.tangent[2 + r][l] = j.v;
        }
    }
    for (int c = 0; c < 4; ++c) {
        Jet2 j = map.base[static_cast<std::size_t>(c)].eval_jet2(x, y);
        out.point[3 + c] = j.v;
        out.tangent[0][3 + c] = j.du;
        out.tangent[1][3 + c] = j.dv;
    }
    return out;
}

}  // namespace calib
