/*
 * Direct evaluation of the q-multiple zeta series.
 *
 * The nested sum over k_1 > k_2 > ... > k_r >= 1 is rolled up from the inside:
 * with T_j(k) = q^{k t_j} / [k]^{s_j} and running inner sums
 *
 *   S_r(m) = sum_{k<=m} T_r(k),   S_j(m) = sum_{k<=m} T_j(k) S_{j+1}(k-1),
 *
 * the k_1 = m layer equals T_1(m) S_2(m-1), so each new outer index costs O(r)
 * term evaluations. The weak simplex (SZ_STAR) uses S_{j+1}(k) instead of
 * S_{j+1}(k-1) throughout.
 *
 * Truncation: layers eventually decay geometrically; the ratio of consecutive
 * layer magnitudes approaches q^{min_j Re(t_1+...+t_j)} from below (each factor
 * q^k/[k] shrinks by strictly more than q per step). The tail bound uses the
 * observed ratio capped by 1.1 times that analytic value.
 */

#include "qmz/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qmz/errors.hpp"
#include "qmz/kernel.hpp"

namespace qmz {

namespace {

// Neumaier-compensated accumulator, component-wise
struct KahanSum {
    double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;
    void add(Cplx x) {
        add1(sr, cr, x.real());
        add1(si, ci, x.imag());
    }
    Cplx value() const { return {sr + cr, si + ci}; }

private:
    static void add1(double& s, double& c, double v) {
        const double t = s + v;
        if (std::abs(s) >= std::abs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    }
};

void validate_args(const ArgVector& s, const char* who) {
    if (s.empty()) throw argument_error(std::string(who) + ": empty argument vector");
    for (const Cplx& v : s)
        if (!is_finite(v)) throw argument_error(std::string(who) + ": non-finite component");
}

bool partials_positive(const ArgVector& t) {
    double acc = 0.0;
    for (const Cplx& v : t) {
        acc += v.real();
        if (!(acc > 0.0)) return false;
    }
    return true;
}

// exponent vector actually sitting over q^{k_i * (.)} for the given model
ArgVector exponent_vector(Model model, const ArgVector& s, const ArgVector* t_opt) {
    switch (model) {
        case Model::SZ:
        case Model::SZ_STAR:
            return s;
        case Model::BZ: {
            ArgVector t = s;
            for (Cplx& v : t) v -= 1.0;
            return t;
        }
        case Model::FQ_GENERAL:
            return *t_opt;
    }
    throw argument_error("unknown model");
}

}  // namespace

bool in_domain(Model model, const ArgVector& s, const ArgVector* t_opt) {
    validate_args(s, "in_domain");
    if (model == Model::FQ_GENERAL) {
        if (t_opt == nullptr || t_opt->size() != s.size())
            throw argument_error("in_domain: FQ_GENERAL needs a t vector of equal depth");
        validate_args(*t_opt, "in_domain");
    } else if (t_opt != nullptr) {
        throw argument_error("in_domain: t vector only valid for FQ_GENERAL");
    }
    return partials_positive(exponent_vector(model, s, t_opt));
}

EvalResult eval_series(Model model, const ArgVector& s, const QParam& q,
                       const SumBudget& budget, const ArgVector* t_opt) {
    validate_args(s, "eval_series");
    if (!in_domain(model, s, t_opt)) throw domain_error("eval_series: outside convergence domain");
    if (!(budget.tol > 0.0)) throw argument_error("eval_series: tol must be positive");
    const int r = static_cast<int>(s.size());
    if (budget.max_outer_index < r)
        throw argument_error("eval_series: max_outer_index below depth");

    const ArgVector t = exponent_vector(model, s, t_opt);
    const bool weak = (model == Model::SZ_STAR);

    // per-factor value at index k: q^{k t_j} / [k]^{s_j}
    auto term = [&](int j, long k) -> Cplx {
        const double br = q_bracket(k, q);
        return cpow_real_base(q.q, static_cast<double>(k) * t[static_cast<size_t>(j)]) *
               cpow_real_base(br, -s[static_cast<size_t>(j)]);
    };

    const double ratio_cap =
        std::min(1.1 * std::pow(q.q, min_partial_re(t)), std::numeric_limits<double>::max());

    std::vector<Cplx> S(static_cast<size_t>(r) + 2, Cplx{0.0, 0.0});  // S[j], j = 2..r
    KahanSum total;
    double prev_mag = -1.0;
    double ratios[3] = {2.0, 2.0, 2.0};
    int ratio_at = 0, ratios_seen = 0, zero_streak = 0;
    double tail = std::numeric_limits<double>::infinity();
    long m = 0;
    bool converged = false;

    for (m = 1; m <= budget.max_outer_index; ++m) {
        Cplx layer;
        if (r == 1) {
            layer = term(0, m);
        } else if (!weak) {
            layer = term(0, m) * S[2];  // S_2(m-1)
            for (int j = 2; j <= r; ++j) {  // ascending: S_{j+1} still at m-1
                const Cplx inner = (j < r) ? S[static_cast<size_t>(j) + 1] : Cplx{1.0, 0.0};
                S[static_cast<size_t>(j)] += term(j - 1, m) * inner;
            }
        } else {
            for (int j = r; j >= 2; --j) {  // descending: S_{j+1} already at m
                const Cplx inner = (j < r) ? S[static_cast<size_t>(j) + 1] : Cplx{1.0, 0.0};
                S[static_cast<size_t>(j)] += term(j - 1, m) * inner;
            }
            layer = term(0, m) * S[2];  // S_2(m)
        }
        total.add(layer);

        const double mag = std::abs(layer);
        if (prev_mag > 0.0 && mag > 0.0) {
            ratios[ratio_at] = mag / prev_mag;
            ratio_at = (ratio_at + 1) % 3;
            ++ratios_seen;
        }
        prev_mag = mag;
        zero_streak = (mag == 0.0 && m > r) ? zero_streak + 1 : 0;
        if (zero_streak >= 3) {  // underflowed for good
            tail = 0.0;
            converged = true;
            break;
        }

        if (m < r + 3 || ratios_seen < 3) continue;
        const double rho = std::min(std::max({ratios[0], ratios[1], ratios[2]}), ratio_cap);
        if (rho < 1.0) {
            tail = mag * rho / (1.0 - rho);
            if (tail <= budget.tol) {
                converged = true;
                break;
            }
        }
    }

    EvalResult out;
    out.value = total.value();
    out.err_est = tail;
    out.terms_used = std::min(m, budget.max_outer_index);
    out.converged = converged;
    return out;
}

EvalResult eval_f_q(const ArgVector& s, const ArgVector& t, const QParam& q,
                    const SumBudget& budget) {
    return eval_series(Model::FQ_GENERAL, s, q, budget, &t);
}

}  // namespace qmz
