#pragma once

// Small helpers shared by tests: raw supports of the built-in families,
// independent of the families module.

#include <vector>

#include "nhpoly/lattice.hpp"

namespace nhpoly::testsup {

inline std::vector<LatticePoint> diag_support(const std::vector<i64>& m) {
    const int n = (int)m.size();
    std::vector<LatticePoint> s;
    for (int i = 0; i < n; ++i) {
        LatticePoint e(n, 0);
        e[i] = m[i];
        s.push_back(e);
    }
    return s;
}

inline std::vector<LatticePoint> reflection_support(const std::vector<i64>& m,
                                                    int j) {
    auto s = diag_support(m);
    const int n = (int)m.size();
    for (int i = 0; i < j; ++i) {
        LatticePoint e(n, 0);
        e[i] = -m[i];
        s.push_back(e);
    }
    return s;
}

inline std::vector<LatticePoint> kloosterman_support(const std::vector<i64>& m,
                                                     int j) {
    auto s = diag_support(m);
    const int n = (int)m.size();
    LatticePoint neg(n, 0);
    for (int i = 0; i < j; ++i) neg[i] = -1;
    s.push_back(neg);
    return s;
}

} // namespace nhpoly::testsup
