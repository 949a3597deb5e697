#pragma once

#include "calib/constructions.hpp"
#include "calib/immersion.hpp"

#include <optional>
#include <string>
#include <vector>

// Builtin closed-form surfaces and curves, used as fixtures and as
// cross-validation targets, plus the explicit calibrated submanifolds that
// certain constructions reduce to in closed form.  Expected flags are
// verified against the immersion machinery by the test suite.

namespace calib {

struct CatalogFlags {
    bool minimal = false;
    bool austere = false;
    std::optional<bool> isotropic_plus;   // surfaces in R^4 only
    std::optional<bool> isotropic_minus;
};

enum class CrClaim { none, holomorphic, antiholomorphic };

struct CatalogEntry {
    std::string name;
    Immersion immersion;
    CatalogFlags expected;
    std::string provenance;  // where the closed form comes from
    std::string note;        // e.g. excluded-region remark
    CrClaim cr_claim = CrClaim::none;
    // set for graph entries (u, v, f1, f2) / (u, v, f1): the graph components
    std::vector<Expr> graph_components;
};

// General solution of the catenoid-type minimal ODE
//   f (1 + f'^2) = f'' (1 + f^2)
// as the surface (u, v, f(u) cos v, f(u) sin v),
//   f(u) = (C/2) e^{Ku} + (1 - K^2)/(2 C K^2) e^{-Ku}.
// K = 1 collapses to the holomorphic family c e^z.
CatalogEntry catenoid_family(double C, double K);

// Rotationally symmetric minimal graphs (u, v, f(u^2+v^2), g(u^2+v^2)) with
//   f(t) = (2K/sqrt(L)) log(sqrt(t) + sqrt(t - 4(1+K^2)/L)),  g = f/K,
// defined outside the disk t <= 4(1+K^2)/L.
CatalogEntry rotational_family(double K, double L);

CatalogEntry graph_surface(const std::string& name, const std::string& f1,
                           const std::string& f2, CatalogFlags flags);
// Graph of w = f(z) (resp. f(z-bar)) given the real/imaginary parts of f;
// flags are filled in (minimal, and the matching isotropy sign).
CatalogEntry holomorphic_graph(const std::string& name, const std::string& re,
                               const std::string& im);
CatalogEntry antiholomorphic_graph(const std::string& name, const std::string& re,
                                   const std::string& im);

const std::vector<CatalogEntry>& catalog_entries();

// Accepts "name" or "name(C=...,K=...)" / "name(K=...,L=...)".
std::optional<CatalogEntry> catalog_lookup(const std::string& spec);

// ODE residuals for the two families (profile functions evaluated by jets).
double catenoid_ode_residual(double C, double K, double u);
std::array<double, 2> rotational_ode_residual(double K, double L, double t);

// -- explicit calibrated submanifolds ----------------------------------------

// A closed-form parametric map (x, y, t_1[, t_2]) -> R^7 whose image is the
// total space of one of the constructions over a catalog surface.  The fibre
// coordinate enters linearly: point = sum_r t_r dir_r(x, y) on the first
// three coordinates, base(x, y) on the last four.
struct ExplicitMap {
    std::string name;
    std::string base_surface;        // catalog entry the map sits over
    ConstructionKind kind;           // construction it cross-validates
    int fibre_rank = 1;
    std::vector<Expr> fibre_dir[2];  // 3 expressions per fibre direction
    std::vector<Expr> base;          // 4 expressions
};

struct ExplicitMapJet {
    double point[7] = {};
    double tangent[4][7] = {};  // d/dx, d/dy, d/dt_1 [, d/dt_2]
    int tangent_count = 3;
};

const std::vector<ExplicitMap>& explicit_calibrated_maps();
const ExplicitMap& explicit_calibrated(const std::string& name);  // throws on unknown name

ExplicitMapJet eval_explicit(const ExplicitMap& map, double x, double y, const double* t);

}  // namespace calib
