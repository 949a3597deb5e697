#include "calib/runner.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

void add_common(CLI::App* cmd, calib::RunOptions& opts, std::string& fibre_box,
                std::string& exec) {
    cmd->add_option("--surface", opts.surface, "surface spec file or catalog:NAME")
        ->required();
    cmd->add_option("--construction", opts.construction,
                    "conormal | coassociative_F | associative_E | cayley_plus | cayley_minus "
                    "| spinor3_plus | spinor3_minus")
        ->required();
    cmd->add_option("--samples", opts.samples, "base sample count (overrides the spec file)");
    cmd->add_option("--fibre-box", fibre_box, "fibre coordinate range a,b (default -10,10)");
    cmd->add_option("--tol", opts.tol, "defect tolerance (default 1e-8 jet, 1e-5 fd)");
    cmd->add_option("--mode", opts.mode, "jet | fd");
    cmd->add_option("--seed", opts.seed, "sampling seed");
    cmd->add_option("--out", opts.out, "output path (stdout when omitted)");
    cmd->add_option("--exec", exec, "parallel | serial");
}

bool apply_common(calib::RunOptions& opts, const std::string& fibre_box,
                  const std::string& exec) {
    if (!fibre_box.empty()) {
        auto comma = fibre_box.find(',');
        if (comma == std::string::npos) {
            std::cerr << "error: --fibre-box expects 'a,b'\n";
            return false;
        }
        try {
            opts.fibre_min = std::stod(fibre_box.substr(0, comma));
            opts.fibre_max = std::stod(fibre_box.substr(comma + 1));
        } catch (...) {
            std::cerr << "error: --fibre-box expects numbers\n";
            return false;
        }
    }
    if (exec == "serial") opts.exec = calib::Exec::serial;
    else if (exec == "parallel" || exec.empty()) opts.exec = calib::Exec::parallel;
    else {
        std::cerr << "error: --exec must be 'parallel' or 'serial'\n";
        return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical verification of calibrated bundle constructions"};
    app.require_subcommand(1);

    calib::RunOptions vopts, sopts;
    std::string vfibre, sfibre, vexec, sexec;

    CLI::App* verify = app.add_subcommand("verify", "run a construction verification");
    add_common(verify, vopts, vfibre, vexec);
    verify->add_option("--expect", vopts.expect, "pass | fail (negative controls)");

    CLI::App* sample = app.add_subcommand("sample", "emit a point cloud of the construction");
    add_common(sample, sopts, sfibre, sexec);

    CLI::App* catalog = app.add_subcommand("catalog", "list builtin surfaces");
    (void)catalog;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    if (app.got_subcommand("verify")) {
        if (!apply_common(vopts, vfibre, vexec)) return 2;
        if (vopts.expect != "pass" && vopts.expect != "fail") {
            std::cerr << "error: --expect must be 'pass' or 'fail'\n";
            return 2;
        }
        return calib::cmd_verify(vopts, std::cerr);
    }
    if (app.got_subcommand("sample")) {
        if (!apply_common(sopts, sfibre, sexec)) return 2;
        return calib::cmd_sample(sopts, std::cerr);
    }
    return calib::cmd_catalog(std::cout);
}
