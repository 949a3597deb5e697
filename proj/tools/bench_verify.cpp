// Times the verification kernel with the serial reference loop against the
// OpenMP parallel one and checks that the two produce identical reports.

#include "calib/catalog.hpp"
#include "calib/constructions.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double run_ms(const calib::Immersion& imm, calib::ConstructionKind kind,
              calib::VerifyConfig cfg, calib::DefectReport* out) {
    auto t0 = std::chrono::steady_clock::now();
    *out = calib::verify(imm, kind, cfg);
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

bool reports_equal(const calib::DefectReport& a, const calib::DefectReport& b) {
    if (a.samples.size() != b.samples.size()) return false;
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        if (a.samples[i].defect != b.samples[i].defect || a.samples[i].raw != b.samples[i].raw)
            return false;
    return a.max_defect == b.max_defect && a.mean_defect == b.mean_defect;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not available; both runs are serial\n");
#endif

    struct Case {
        const char* surface;
        calib::ConstructionKind kind;
        int base_samples;
    };
    const Case cases[] = {
        {"catenoid(C=2,K=0.5)", calib::ConstructionKind::associative_E, 3000},
        {"antiholomorphic_expz", calib::ConstructionKind::coassociative_F, 1500},
        {"holomorphic_expz", calib::ConstructionKind::cayley_minus, 1000},
        {"catenoid(C=2,K=0.5)", calib::ConstructionKind::conormal, 1500},
    };

    std::printf("%-24s %-18s %10s %10s %8s\n", "surface", "construction", "serial", "parallel",
                "speedup");
    bool all_equal = true;
    for (const Case& c : cases) {
        auto entry = calib::catalog_lookup(c.surface);
        if (!entry) {
            std::printf("missing catalog entry %s\n", c.surface);
            return 1;
        }
        calib::VerifyConfig cfg;
        cfg.base_samples = c.base_samples;

        calib::DefectReport serial_rep, parallel_rep;
        cfg.exec = calib::Exec::serial;
        double serial_ms = run_ms(entry->immersion, c.kind, cfg, &serial_rep);
        cfg.exec = calib::Exec::parallel;
        double parallel_ms = run_ms(entry->immersion, c.kind, cfg, &parallel_rep);

        bool same = reports_equal(serial_rep, parallel_rep);
        all_equal = all_equal && same;
        std::printf("%-24s %-18s %8.1fms %8.1fms %7.2fx%s\n", c.surface,
                    calib::to_string(c.kind).c_str(), serial_ms, parallel_ms,
                    serial_ms / parallel_ms, same ? "" : "  MISMATCH");
    }
    if (!all_equal) {
        std::printf("serial and parallel reports disagree\n");
        return 1;
    }
    return 0;
}
