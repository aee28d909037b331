#include "qmz/poles.hpp"

#include <cmath>

#include "qmz/kernel.hpp"

namespace qmz {

namespace {

// |z - (-k + m P i)| with P = 2 pi / log q, choosing the nearest admissible (k, m)
double dist_to(Cplx z, double P, int k, long m) {
    return std::hypot(z.real() + static_cast<double>(k),
                      z.imag() - static_cast<double>(m) * P);
}

long nearest_m(double im, double P) { return std::lround(im / P); }

}  // namespace

double sz_lattice_distance(Cplx z, const QParam& q, int& k_out, long& m_out) {
    const double P = 2.0 * M_PI / q.log_q;  // negative
    const double kr = std::round(-z.real());
    k_out = (kr < 0.0) ? 0 : static_cast<int>(kr);
    m_out = nearest_m(z.imag(), P);
    return dist_to(z, P, k_out, m_out);
}

std::vector<HyperplaneId> pole_locus(Model model, const ArgVector& s, const QParam& q, double tol) {
    if (s.empty()) throw argument_error("pole_locus: empty argument vector");
    for (const Cplx& v : s)
        if (!is_finite(v)) throw argument_error("pole_locus: non-finite component");
    if (!(tol >= 0.0)) throw argument_error("pole_locus: tol must be nonnegative");
    if (model == Model::FQ_GENERAL)
        throw argument_error("pole_locus: no pole predicate for FQ_GENERAL");

    const double P = 2.0 * M_PI / q.log_q;
    const int r = static_cast<int>(s.size());
    std::vector<HyperplaneId> hits;
    Cplx partial = 0.0;

    for (int j = 1; j <= r; ++j) {
        partial += s[static_cast<size_t>(j) - 1];
        if (model == Model::SZ || model == Model::SZ_STAR) {
            int k;
            long m;
            if (sz_lattice_distance(partial, q, k, m) <= tol) hits.push_back({j, k, m});
            continue;
        }
        // BZ three-branch rule
        if (j == 1) {
            const long m1 = nearest_m(partial.imag(), P);
            if (std::hypot(partial.real() - 1.0, partial.imag() - static_cast<double>(m1) * P) <= tol)
                hits.push_back({1, -1, m1});
            // Z_{<=0} with a nonzero lattice multiple
            long m2 = m1;
            if (m2 == 0) m2 = (partial.imag() / P >= 0.0) ? 1 : -1;
            const double kr = std::round(-partial.real());
            const int k2 = (kr < 0.0) ? 0 : static_cast<int>(kr);
            if (m2 != 0 && dist_to(partial, P, k2, m2) <= tol) hits.push_back({1, k2, m2});
        } else {
            // partial sum in Z_{<=j} + lattice, i.e. -k with k >= -j
            const double cr = std::round(partial.real());
            const int k = (cr > static_cast<double>(j)) ? -j : static_cast<int>(-cr);
            const long m = nearest_m(partial.imag(), P);
            if (dist_to(partial, P, k, m) <= tol) hits.push_back({j, k, m});
        }
    }
    return hits;
}

}  // namespace qmz
