#pragma once

// Test-only oracles, independent of the library implementation paths they
// check.

#include "calib/octonion.hpp"

#include <random>
#include <string>

namespace oracle {

// A third, independently typed copy of the basis multiplication table,
// written as human-readable strings and decoded at use.  Basis order
// (1, i, j, k, e, ie, je, ke); entry [row][col] is row * col.
inline const char* kTable[8][8] = {
    {"1", "i", "j", "k", "e", "ie", "je", "ke"},
    {"i", "-1", "k", "-j", "ie", "-e", "-ke", "je"},
    {"j", "-k", "-1", "i", "je", "ke", "-e", "-ie"},
    {"k", "j", "-i", "-1", "ke", "-je", "ie", "-e"},
    {"e", "-ie", "-je", "-ke", "-1", "i", "j", "k"},
    {"ie", "e", "-ke", "je", "-i", "-1", "-k", "j"},
    {"je", "ke", "e", "-ie", "-j", "k", "-1", "-i"},
    {"ke", "-je", "ie", "e", "-k", "-j", "i", "-1"},
};

inline int basis_name_to_index(const std::string& name) {
    static const char* names[8] = {"1", "i", "j", "k", "e", "ie", "je", "ke"};
    for (int t = 0; t < 8; ++t)
        if (name == names[t]) return t;
    return -1;
}

// Decodes an entry like "-ke" into (sign, index).
inline std::pair<int, int> decode(const char* entry) {
    std::string s = entry;
    int sign = 1;
    if (s[0] == '-') {
        sign = -1;
        s = s.substr(1);
    }
    return {sign, basis_name_to_index(s)};
}

// Basis product via the string table only.
inline calib::Octonion table_mul(int row, int col) {
    auto [sign, idx] = decode(kTable[row][col]);
    return static_cast<double>(sign) * calib::Octonion::unit(idx);
}

inline calib::Octonion random_octonion(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1, 1);
    calib::Octonion o;
    for (int t = 0; t < 8; ++t) o.c[t] = dist(rng);
    return o;
}

}  // namespace oracle
