#pragma once

#include "qmz/series.hpp"
#include "qmz/types.hpp"

namespace qmz {

struct ContinuationPlan {
    int K = 0;                  // 0: K = max(1, ceil(1.5 - min_j Re(s_1+...+s_j)))
    double tail_tol = 1e-10;    // per-term stop threshold for the J-block tails
    long tail_max_terms = 4000;
    int max_depth = 32;         // recursion guard
    SumBudget series{};         // budget for every direct series on the right-hand side
};

// Meromorphic continuation of the strict-simplex q-multiple zeta value at s.
//
// depth 1: the translation identity instantiated at s, s+1, ..., s+K-1 is a unit
// upper triangular K x K system in (z(s), ..., z(s+K-1)); columns beyond K are
// convergent and move to the right-hand side as direct series; back-substitute.
//
// depth r >= 2: z(s) = sum_{i=1}^{K} H_{1,i}(s1) z(s1+s2+i-1, s3, ..., s_r)
//                      + sum_n Rhat_{1,n}(s1) z(s1+K+n-1, s2, ..., s_r)
//                      + sum_n Rhat_{1,n}(s1) z(s1+s2+K+n-1, s3, ..., s_r)
// with Rhat = M_II^{-1} N_IJ; the two tails land inside the convergence domain by
// the choice of K and are summed directly; the main sum recurses on depth r-1.
//
// Refuses points within 1e-8 of the pole lattice (pole_proximity carries the
// offending hyperplane).
struct ContinuationResult {
    Cplx value{};
    double err_est = 0.0;
    long terms_used = 0;
    bool converged = false;
    int K_used = 0;       // K chosen at the top level
    int max_depth = 0;    // deepest recursion level reached (0 = no recursion)
    long nodes = 0;       // argument vectors run through the machinery (memo misses)
};

ContinuationResult continue_eval(const ArgVector& s, const QParam& q,
                                 const ContinuationPlan& plan = {});

}  // namespace qmz
