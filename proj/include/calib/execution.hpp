#pragma once

#include <stdexcept>
#include <string>
#include <vector>

// Sample loops write into preallocated slots indexed by sample id, so the
// parallel kernel and the serial reference produce bit-identical results;
// tests and the benchmark tool compare the two.

namespace calib {

enum class Exec { serial, parallel };

template <class F>
void for_each_index(int count, Exec exec, F&& body) {
    std::vector<std::string> errors(static_cast<std::size_t>(count));
    bool failed = false;
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < count; ++i) {
            try {
                body(i);
            } catch (const std::exception& e) {
                errors[static_cast<std::size_t>(i)] = e.what();
#pragma omp atomic write
                failed = true;
            }
        }
    } else {
        for (int i = 0; i < count; ++i) {
            try {
                body(i);
            } catch (const std::exception& e) {
                errors[static_cast<std::size_t>(i)] = e.what();
                failed = true;
            }
        }
    }
    if (failed) {
        for (const std::string& e : errors)
            if (!e.empty()) throw std::runtime_error(e);
    }
}

}  // namespace calib
