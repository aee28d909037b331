#pragma once
// Residues along the pole hyperplanes of the strict model.
//
// Every pole is simple, so the residue along s_1+...+s_j = -k is the limit of
// u * zeta_q taken in the transverse coordinate u = s_1+...+s_j + k, and it is
// itself a function of the remaining arguments.  Closed forms:
//
//   along s_1 = -n:            -n! L_{n+1}(-n) zeta_q(s_2,...,s_r) / log q
//   along s_1+...+s_j = -k:    sum_{s=0}^{k} -(k-s)! L_{k-s+1}(-(k-s))
//                                  * zeta_q(s_{j+1},...,s_r) / log q
//                                  * (0,s) entry of prod_{d=1}^{j-1} H(s_1+...+s_d)
//
// with the H blocks truncated at size K > k.  numeric_residue is the
// independent check: evaluate h * zeta_q with s_j nudged by h and extrapolate
// h -> 0 over a geometric sequence.

#include <vector>

#include "qmz/continuation.hpp"
#include "qmz/poles.hpp"
#include "qmz/types.hpp"

namespace qmz {

struct ResidueResult {
    Cplx value{};
    HyperplaneId hyperplane{};
    std::string method;  // "closed_form" or "numeric_limit"
};

// Residue along s_1 = -n with the trailing arguments held fixed; empty
// trailing means depth 1 and the zeta factor degenerates to 1.
ResidueResult residue_h1(int n, const ArgVector& trailing, const QParam& q,
                         const ContinuationPlan& plan = {});

// Residue along s_1+...+s_j = -k for j >= 2.  `point` is the full depth-r
// argument vector and must satisfy the hyperplane equation to 1e-10 while
// keeping every other partial sum off the pole lattice.  K is the truncation
// size of the H blocks and must exceed k.
ResidueResult residue_hjk(int j, int k, const ArgVector& point, const QParam& q, int K,
                          const ContinuationPlan& plan = {});

// Limit oracle: g(h) = h * continue_eval(point with s_j += h) for each h in
// h_seq, Neville-extrapolated to h = 0.  A one-element h_seq returns the raw
// product.
Cplx numeric_residue(const HyperplaneId& hp, const ArgVector& point, const QParam& q,
                     const std::vector<double>& h_seq = {1e-2, 5e-3, 2.5e-3},
                     const ContinuationPlan& plan = {});

}  // namespace qmz
