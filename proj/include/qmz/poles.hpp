#pragma once

#include <vector>

#include "qmz/errors.hpp"
#include "qmz/types.hpp"

namespace qmz {

// the hyperplane s_1 + ... + s_j = -k + lattice_m * (2*pi*i / log q)
struct HyperplaneId {
    int j = 1;
    int k = 0;          // SZ: k >= 0; BZ sheets may carry k down to -j (partial sum = j - ...)
    long lattice_m = 0;  // 0 = real sheet
    bool operator==(const HyperplaneId&) const = default;
};

struct pole_proximity : error {
    HyperplaneId hyperplane;
    pole_proximity(HyperplaneId hp, const std::string& what) : error(what), hyperplane(hp) {}
};

// distance from z to the nearest point of Z_{<=0} + (2*pi*i/log q) Z, reporting
// the nearest (k, m)
double sz_lattice_distance(Cplx z, const QParam& q, int& k_out, long& m_out);

// every hyperplane of the model's pole set whose partial sum passes within tol.
// SZ rule: s_1+...+s_j in Z_{<=0} + (2 pi i/log q) Z for some j (SZ_STAR shares it:
// the weak sum decomposes into strict sums whose partials are a subset of these).
// BZ rule: s_1 in 1 + lattice, or s_1 in Z_{<=0} + nonzero lattice multiples, or
// s_1+...+s_j in Z_{<=j} + lattice for j >= 2.
std::vector<HyperplaneId> pole_locus(Model model, const ArgVector& s, const QParam& q, double tol);

}  // namespace qmz
