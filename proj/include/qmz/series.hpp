#pragma once

#include "qmz/types.hpp"

namespace qmz {

struct SumBudget {
    long max_outer_index = 10000;  // cap on k_1
    double tol = 1e-12;            // target absolute tail
};

struct EvalResult {
    Cplx value{0.0, 0.0};
    double err_est = 0.0;
    long terms_used = 0;  // outer (k_1) layers processed
    bool converged = false;
};

// Strict convergence conditions:
//   SZ / SZ_STAR : Re(s_1+...+s_j) > 0 for every j
//   BZ           : Re(s_1+...+s_j) > j for every j
//   FQ_GENERAL   : Re(t_1+...+t_j) > 0 for every j
bool in_domain(Model model, const ArgVector& s, const ArgVector* t_opt = nullptr);

// Direct summation of
//   sum over k_1 > ... > k_r >= 1 (weak inequalities for SZ_STAR) of
//   prod_i q^{k_i t_i} / [k_i]^{s_i}
// where t = s (SZ, SZ_STAR), t = s - 1 (BZ), or the given vector (FQ_GENERAL).
EvalResult eval_series(Model model, const ArgVector& s, const QParam& q,
                       const SumBudget& budget = {}, const ArgVector* t_opt = nullptr);

EvalResult eval_f_q(const ArgVector& s, const ArgVector& t, const QParam& q,
                    const SumBudget& budget = {});

}  // namespace qmz
