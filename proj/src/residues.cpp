// Closed-form residues and the h -> 0 limit oracle.  The closed forms only
// need L values at nonpositive integers, where every pole factor q_i(-m) =
// q^{m-i} - 1 with i < m stays away from zero, and row 0 of the truncated
// H-block product.

#include "qmz/residues.hpp"

#include <cmath>
#include <cstdlib>
#include <utility>

#include "qmz/coefficients.hpp"
#include "qmz/errors.hpp"
#include "qmz/kernel.hpp"
#include "qmz/matrices.hpp"

namespace qmz {

namespace {

// Evaluation anywhere this close to a second hyperplane is meaningless.
constexpr double kOffLatticeGuard = 1e-8;
constexpr double kOnHyperplaneTol = 1e-10;

Cplx trailing_factor(const ArgVector& trailing, const QParam& q, const ContinuationPlan& plan) {
    if (trailing.empty()) return 1.0;
    return continue_eval(trailing, q, plan).value;
}

}  // namespace

ResidueResult residue_h1(int n, const ArgVector& trailing, const QParam& q,
                         const ContinuationPlan& plan) {
    if (n < 0) throw argument_error("residue_h1: n must be >= 0");
    const Cplx z_trail = trailing_factor(trailing, q, plan);
    ResidueResult out;
    out.value = -factorial(n) * L_n(n + 1, Cplx(-static_cast<double>(n), 0.0), q) * z_trail / q.log_q;
    out.hyperplane = HyperplaneId{1, n, 0};
    out.method = "closed_form";
    return out;
}

ResidueResult residue_hjk(int j, int k, const ArgVector& point, const QParam& q, int K,
                          const ContinuationPlan& plan) {
    const int r = static_cast<int>(point.size());
    if (j < 2 || j > r) throw argument_error("residue_hjk: need 2 <= j <= depth");
    if (k < 0) throw argument_error("residue_hjk: k must be >= 0");
    if (K <= k) throw argument_error("residue_hjk: need K > k");

    const Cplx pj = partial_sum(point, j);
    if (std::abs(pj + static_cast<double>(k)) > kOnHyperplaneTol)
        throw argument_error("residue_hjk: point is not on the requested hyperplane");
    for (int l = 1; l <= r; ++l) {
        if (l == j) continue;
        int kk = 0;
        long mm = 0;
        if (sz_lattice_distance(partial_sum(point, l), q, kk, mm) < kOffLatticeGuard)
            throw argument_error("residue_hjk: point lies on a second hyperplane");
    }

    // row 0 of prod_{d=1}^{j-1} H(s_1+...+s_d), truncated at K x K
    std::vector<Cplx> row(static_cast<size_t>(K), 0.0);
    row[0] = 1.0;
    for (int d = 1; d <= j - 1; ++d) {
        const TriBlock h = build_block(BlockKind::H, partial_sum(point, d), K, K, q);
        std::vector<Cplx> next(static_cast<size_t>(K), 0.0);
        for (int c = 0; c < K; ++c) {
            Cplx acc = 0.0;
            for (int l = 0; l <= c; ++l) acc += row[static_cast<size_t>(l)] * h.at(l, c);
            next[static_cast<size_t>(c)] = acc;
        }
        row = std::move(next);
    }

    ArgVector trailing(point.begin() + j, point.end());
    const Cplx z_trail = trailing_factor(trailing, q, plan);

    Cplx value = 0.0;
    for (int s = 0; s <= k; ++s) {
        const int m = k - s;
        const Cplx weight =
            -factorial(m) * L_n(m + 1, Cplx(-static_cast<double>(m), 0.0), q) * z_trail / q.log_q;
        value += weight * row[static_cast<size_t>(s)];
    }

    ResidueResult out;
    out.value = value;
    out.hyperplane = HyperplaneId{j, k, 0};
    out.method = "closed_form";
    return out;
}

Cplx numeric_residue(const HyperplaneId& hp, const ArgVector& point, const QParam& q,
                     const std::vector<double>& h_seq, const ContinuationPlan& plan) {
    const int r = static_cast<int>(point.size());
    if (hp.j < 1 || hp.j > r) throw argument_error("numeric_residue: hyperplane index out of range");
    if (h_seq.empty()) throw argument_error("numeric_residue: h_seq must be non-empty");

    const double cell = 2.0 * M_PI / q.log_q;  // negative; sheet spacing
    const Cplx pj = partial_sum(point, hp.j);
    const double dist = std::hypot(pj.real() + static_cast<double>(hp.k),
                                   pj.imag() - static_cast<double>(hp.lattice_m) * cell);
    if (dist > kOnHyperplaneTol)
        throw argument_error("numeric_residue: point is not on the given hyperplane");

    // transverse coordinate u = s_1+...+s_j + k moves 1:1 with s_j
    std::vector<Cplx> g;
    g.reserve(h_seq.size());
    for (double h : h_seq) {
        ArgVector shifted = point;
        shifted[static_cast<size_t>(hp.j) - 1] += h;
        g.push_back(h * continue_eval(shifted, q, plan).value);
    }
    if (g.size() == 1) return g[0];

    // Neville tableau evaluated at h = 0
    const size_t n = g.size();
    for (size_t m = 1; m < n; ++m)
        for (size_t i = n - 1; i >= m; --i) {
            const double xi = h_seq[i];
            const double xim = h_seq[i - m];
            g[i] = (xi * g[i - 1] - xim * g[i]) / (xi - xim);
        }
    return g[n - 1];
}

}  // namespace qmz
