#include "calib/runner.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace calib {

namespace {

using nlohmann::json;

struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double x) {
    if (x == 0) x = 0;  // canonicalize -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

DomainBox domain_from_json(const json& j) {
    DomainBox box;
    if (j.contains("u")) {
        box.u0 = j["u"].at(0).get<double>();
        box.u1 = j["u"].at(1).get<double>();
    }
    if (j.contains("v")) {
        box.v0 = j["v"].at(0).get<double>();
        box.v1 = j["v"].at(1).get<double>();
    }
    if (j.contains("exclude")) box.keep_if_positive = parse(j["exclude"].get<std::string>());
    return box;
}

SurfaceSpec spec_from_json(const json& j, const std::string& label) {
    SurfaceSpec spec;
    spec.label = label;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "catalog") {
        std::string name = j.at("name").get<std::string>();
        auto entry = catalog_lookup(name);
        if (!entry) throw SpecError("unknown catalog entry '" + name + "'");
        spec.immersion = entry->immersion;
        spec.label = "catalog:" + entry->name;
    } else if (kind == "graph") {
        Expr f1 = parse(j.at("f1").get<std::string>());
        Expr f2 = parse(j.at("f2").get<std::string>());
        DomainBox box;
        if (j.contains("domain")) box = domain_from_json(j["domain"]);
        spec.immersion = Immersion(2, 4, {parse("u"), parse("v"), f1, f2}, box);
    } else if (kind == "parametric") {
        int p = j.value("p", 2);
        std::vector<Expr> comps;
        for (const auto& c : j.at("components")) comps.push_back(parse(c.get<std::string>()));
        DomainBox box;
        if (j.contains("domain")) box = domain_from_json(j["domain"]);
        spec.immersion = Immersion(p, static_cast<int>(comps.size()), comps, box);
    } else {
        throw SpecError("unknown surface kind '" + kind + "'");
    }
    if (j.contains("domain") && kind == "catalog")
        throw SpecError("catalog surfaces carry their own domain");
    if (j.contains("samples")) {
        const json& s = j["samples"];
        spec.base_samples = s.value("base", spec.base_samples);
        spec.grid_u = s.value("grid_u", spec.grid_u);
        spec.grid_v = s.value("grid_v", spec.grid_v);
        spec.grid_fibre = s.value("fibre", spec.grid_fibre);
    }
    return spec;
}

}  // namespace

SurfaceSpec load_surface_spec(const std::string& source) {
    if (source.rfind("catalog:", 0) == 0) {
        std::string name = source.substr(8);
        auto entry = catalog_lookup(name);
        if (!entry) throw SpecError("unknown catalog entry '" + name + "'");
        SurfaceSpec spec;
        spec.label = "catalog:" + entry->name;
        spec.immersion = entry->immersion;
        return spec;
    }
    std::ifstream in(source);
    if (!in) throw SpecError("cannot open surface spec '" + source + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw SpecError(std::string("surface spec is not valid JSON: ") + e.what());
    }
    try {
        return spec_from_json(j, source);
    } catch (const json::exception& e) {
        throw SpecError(std::string("surface spec: ") + e.what());
    }
}

namespace {

json sample_to_json(const SampleRecord& s, int rank) {
    json o;
    o["u"] = s.u;
    o["v"] = s.v;
    json t = json::array();
    for (int r = 0; r < rank; ++r) t.push_back(s.t[r]);
    o["t"] = t;
    o["defect"] = s.defect;
    o["raw"] = s.raw;
    return o;
}

}  // namespace

std::string report_to_json(const DefectReport& rep, const RunOptions& opts,
                           const std::string& surface_label, const std::string& outcome) {
    json j;
    j["construction"] = to_string(rep.kind);
    j["surface"] = surface_label;
    j["mode"] = (rep.mode == DiffMode::jet) ? "jet" : "fd";
    j["seed"] = rep.seed;
    j["tol"] = rep.tol;
    j["fibre_box"] = {opts.fibre_min, opts.fibre_max};
    j["base_samples"] = rep.base_count;
    j["fibre_samples"] = rep.fibre_count;
    j["expect"] = opts.expect;
    j["verdict"] = rep.pass ? "pass" : "fail";
    j["outcome"] = outcome;

    json defect;
    defect["max"] = rep.max_defect;
    defect["mean"] = rep.mean_defect;
    defect["max_raw"] = rep.max_raw;
    j["defect"] = defect;
    j["h_norm_max"] = rep.h_norm_max;

    int rank = 0;
    switch (rep.kind) {
        case ConstructionKind::conormal: rank = rep.n - rep.p; break;
        case ConstructionKind::associative_E: rank = 1; break;
        default: rank = 2; break;
    }
    j["worst_sample"] = sample_to_json(rep.worst, rank);

    if (rep.kind == ConstructionKind::conormal) {
        j["phase_theta"] = rep.phase_theta;
        j["omega_defect_max"] = rep.omega_defect_max;
        j["im_defect_max"] = rep.im_defect_max;
        j["austere_max"] = rep.austere_max;
    }
    if (rep.kind == ConstructionKind::coassociative_F) {
        json iso;
        iso["plus_count"] = rep.sign_plus_count;
        iso["minus_count"] = rep.sign_minus_count;
        iso["base_count"] = rep.base_count;
        j["sign_match"] = iso;
        j["omega1_constancy"] = rep.omega1_constancy;
        j["omega1_spread"] = rep.omega1_spread;
        j["r6_containment"] =
            rep.pass && rep.omega1_constancy < rep.tol && rep.omega1_spread < rep.tol;
    }
    if (rep.kind == ConstructionKind::associative_E ||
        rep.kind == ConstructionKind::cayley_plus ||
        rep.kind == ConstructionKind::cayley_minus)
        j["closed_form_mismatch"] = rep.closed_form_mismatch;
    if (rep.kind == ConstructionKind::cayley_plus)
        j["one_in_tangent_defect"] = rep.one_in_tangent_defect;
    if (rep.kind == ConstructionKind::cayley_minus) {
        j["one_component_max"] = rep.one_component_max;
        j["im_coassoc_defect_max"] = rep.im_coassoc_defect_max;
    }

    json per_base = json::array();
    for (const BaseRecord& b : rep.base) {
        json o;
        o["u"] = b.u;
        o["v"] = b.v;
        o["defect_max"] = b.defect_max;
        o["h_norm"] = b.h_norm;
        o["austere"] = b.austere;
        if (rep.kind == ConstructionKind::coassociative_F) {
            o["q_abs"] = b.q_abs;
            o["sign_plus"] = b.sign_plus;
            o["sign_minus"] = b.sign_minus;
        }
        per_base.push_back(o);
    }
    j["per_base"] = per_base;

    return j.dump(2) + "\n";
}

std::string cloud_to_csv(const PointCloud& cloud, const std::string& header_note) {
    std::ostringstream out;
    out << "# " << header_note << "\n";
    out << "# columns:";
    for (const std::string& c : cloud.columns) out << " " << c;
    out << "\n";
    const std::size_t ncols = cloud.columns.size();
    for (std::size_t r = 0; r < cloud.rows; ++r) {
        for (std::size_t c = 0; c < ncols; ++c) {
            if (c) out << ",";
            out << fmt(cloud.at(r, c));
        }
        out << "\n";
    }
    return out.str();
}

namespace {

int classify_error(const std::exception& e) {
    if (dynamic_cast<const SpecError*>(&e)) return 2;
    if (dynamic_cast<const ParseError*>(&e)) return 2;
    if (dynamic_cast<const RankError*>(&e)) return 3;
    if (dynamic_cast<const EvalDomainError*>(&e)) return 3;
    if (dynamic_cast<const std::invalid_argument*>(&e)) return 3;
    return 3;
}

bool write_output(const std::string& path, const std::string& content, std::ostream& diag) {
    if (path.empty()) {
        std::cout << content;
        return true;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        diag << "error: cannot write '" << path << "'\n";
        return false;
    }
    out << content;
    return true;
}

void validate_options(const RunOptions& opts) {
    if (opts.tol < 0) throw SpecError("tolerance must be positive");
    if (opts.samples != -1 && opts.samples <= 0)
        throw SpecError("sample count must be positive");
    if (!(opts.fibre_min < opts.fibre_max))
        throw SpecError("fibre box must be a nonempty interval");
}

double resolve_tol(const RunOptions& opts) {
    if (opts.tol > 0) return opts.tol;
    return opts.mode == "fd" ? 1e-5 : 1e-8;
}

DiffMode mode_from_string(const std::string& mode) {
    if (mode == "jet") return DiffMode::jet;
    if (mode == "fd") return DiffMode::finite_difference;
    throw SpecError("mode must be 'jet' or 'fd'");
}

ConstructionKind kind_from_options(const RunOptions& opts) {
    auto kind = construction_from_string(opts.construction);
    if (!kind) throw SpecError("unknown construction '" + opts.construction + "'");
    return *kind;
}

}  // namespace

int cmd_verify(const RunOptions& opts, std::ostream& diag) {
    try {
        validate_options(opts);
        SurfaceSpec spec = load_surface_spec(opts.surface);
        ConstructionKind kind = kind_from_options(opts);

        VerifyConfig cfg;
        cfg.base_samples = (opts.samples > 0) ? opts.samples : spec.base_samples;
        cfg.fibre_per_axis = spec.grid_fibre;
        cfg.fibre_min = opts.fibre_min;
        cfg.fibre_max = opts.fibre_max;
        cfg.tol = resolve_tol(opts);
        cfg.mode = mode_from_string(opts.mode);
        cfg.seed = opts.seed;
        cfg.exec = opts.exec;

        DefectReport rep = verify(spec.immersion, kind, cfg);

        const bool expect_fail = (opts.expect == "fail");
        std::string outcome;
        int code;
        if (rep.pass && !expect_fail) {
            outcome = "pass";
            code = 0;
        } else if (!rep.pass && expect_fail) {
            outcome = "expected failure observed";
            code = 0;
        } else if (!rep.pass) {
            outcome = "fail";
            code = 1;
        } else {
            outcome = "unexpected pass";
            code = 1;
        }

        std::string doc = report_to_json(rep, opts, spec.label, outcome);
        if (!write_output(opts.out, doc, diag)) return 3;
        diag << to_string(kind) << " over " << spec.label << ": " << outcome
             << " (max defect " << fmt(rep.max_defect) << ", tol " << fmt(rep.tol) << ")\n";
        return code;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << "\n";
        return classify_error(e);
    }
}

int cmd_sample(const RunOptions& opts, std::ostream& diag) {
    try {
        validate_options(opts);
        SurfaceSpec spec = load_surface_spec(opts.surface);
        ConstructionKind kind = kind_from_options(opts);

        SampleGrid grid;
        if (opts.samples > 0) grid.base_u = grid.base_v = opts.samples;
        else {
            grid.base_u = spec.grid_u;
            grid.base_v = spec.grid_v;
        }
        grid.fibre_per_axis = spec.grid_fibre;
        grid.fibre_min = opts.fibre_min;
        grid.fibre_max = opts.fibre_max;
        grid.mode = mode_from_string(opts.mode);

        PointCloud cloud = sample_points(spec.immersion, kind, grid);
        std::string note = to_string(kind) + " over " + spec.label + ", base grid " +
                           std::to_string(grid.base_u) + "x" + std::to_string(grid.base_v) +
                           ", fibre " + std::to_string(grid.fibre_per_axis) + "/axis in [" +
                           fmt(grid.fibre_min) + ", " + fmt(grid.fibre_max) + "]";
        if (!write_output(opts.out, cloud_to_csv(cloud, note), diag)) return 3;
        diag << cloud.rows << " rows, " << cloud.columns.size() << " columns\n";
        return 0;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << "\n";
        return classify_error(e);
    }
}

int cmd_catalog(std::ostream& out) {
    for (const CatalogEntry& e : catalog_entries()) {
        out << e.name << "  p=" << e.immersion.p() << " n=" << e.immersion.n() << "  [";
        bool first = true;
        auto flag = [&](bool set, const char* name) {
            if (!set) return;
            if (!first) out << " ";
            out << name;
            first = false;
        };
        flag(e.expected.minimal, "minimal");
        flag(e.expected.austere, "austere");
        flag(e.expected.isotropic_plus.value_or(false), "isotropic_plus");
        flag(e.expected.isotropic_minus.value_or(false), "isotropic_minus");
        if (first) out << "-";
        out << "]  " << e.provenance;
        if (!e.note.empty()) out << " | " << e.note;
        out << "\n";
    }
    out << "--\nexplicit calibrated maps:\n";
    for (const ExplicitMap& m : explicit_calibrated_maps())
        out << m.name << "  (" << to_string(m.kind) << " over " << m.base_surface << ")\n";
    return 0;
}

}  // namespace calib
