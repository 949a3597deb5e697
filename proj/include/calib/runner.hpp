#pragma once

#include "calib/catalog.hpp"
#include "calib/constructions.hpp"

#include <iosfwd>
#include <string>

// Command implementations behind the CLI.  Surface specs are JSON documents;
// verification reports are JSON; point clouds are CSV with a commented
// header.  Identical inputs and seed produce byte-identical outputs.
//
// Exit codes: 0 success (or an expected failure observed), 1 verdict failure,
// 2 spec/config parse error, 3 domain or rank failure.

namespace calib {

struct SurfaceSpec {
    std::string label;
    Immersion immersion;
    int base_samples = 200;
    int grid_u = 20;
    int grid_v = 20;
    int grid_fibre = 5;
};

// Accepts "catalog:NAME" or a path to a JSON spec file:
//   {
//     "kind": "graph" | "catalog" | "parametric",
//     "f1": "...", "f2": "...",                  (graph)
//     "name": "catenoid(C=2,K=0.5)",             (catalog)
//     "p": 2, "components": ["...", ...],        (parametric)
//     "domain": {"u": [a,b], "v": [a,b], "exclude": "expr"},
//     "samples": {"base": N, "grid_u": N, "grid_v": N, "fibre": N}
//   }
// A point is excluded wherever the "exclude" expression is <= 0.
SurfaceSpec load_surface_spec(const std::string& source);

struct RunOptions {
    std::string surface;
    std::string construction;
    int samples = -1;  // override of the spec's base sample count
    double fibre_min = -10, fibre_max = 10;
    double tol = 0;            // 0 = default for the mode (1e-8 jet, 1e-5 fd)
    std::string mode = "jet";  // "jet" | "fd"
    unsigned long long seed = 0;
    std::string out;  // output path; empty writes to stdout
    std::string expect = "pass";
    Exec exec = Exec::parallel;
};

int cmd_verify(const RunOptions& opts, std::ostream& diag);
int cmd_sample(const RunOptions& opts, std::ostream& diag);
int cmd_catalog(std::ostream& out);

// Serialization helpers (exposed for tests).
std::string report_to_json(const DefectReport& rep, const RunOptions& opts,
                           const std::string& surface_label, const std::string& outcome);
std::string cloud_to_csv(const PointCloud& cloud, const std::string& header_note);

}  // namespace calib
