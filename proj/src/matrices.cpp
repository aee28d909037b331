#include "qmz/matrices.hpp"

#include <cmath>
#include <utility>

#include "qmz/coefficients.hpp"
#include "qmz/errors.hpp"
#include "qmz/kernel.hpp"

namespace qmz {

namespace {

Cplx guarded_inv_q0(Cplx t, const QParam& q, int row) {
    const Cplx q0 = q_pole_factor(t, 0, q);
    if (std::abs(q0) < kSingularQTol)
        throw singular_coefficient(row, "singular diagonal factor at row " + std::to_string(row));
    return 1.0 / q0;
}

}  // namespace

TriBlock::TriBlock(BlockKind kind, Cplx t, int K, int j_cols, std::vector<Cplx> entries)
    : kind_(kind), t_(t), K_(K), j_cols_(j_cols), entries_(std::move(entries)) {}

Cplx TriBlock::at(int row, int col) const {
    if (row < 0 || row >= K_ || col < 0 || col >= K_ + j_cols_)
        throw argument_error("TriBlock::at: index out of range");
    return entries_[static_cast<size_t>(row) * static_cast<size_t>(K_ + j_cols_) +
                    static_cast<size_t>(col)];
}

Cplx M_first_row(int n, Cplx t, const QParam& q) {
    if (n < 1) throw argument_error("M_first_row: n must be >= 1");
    if (n == 1) return 1.0;
    // (t)(t+1)...(t+n-2)/(n-1)! interleaved so large n stays in range
    Cplx frac = 1.0;
    for (int x = 0; x <= n - 2; ++x) frac *= (t + static_cast<double>(x)) / static_cast<double>(x + 1);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;  // (-1)^n
    return sign * frac * guarded_inv_q0(t, q, 1);
}

Cplx N_first_row(int n, Cplx t, const QParam& q) {
    if (n < 1) throw argument_error("N_first_row: n must be >= 1");
    if (n == 1) return guarded_inv_q0(t, q, 1);
    return -M_first_row(n, t, q);
}

TriBlock build_block(BlockKind kind, Cplx t, int K, int j_cols, const QParam& q) {
    if (K < 1) throw argument_error("build_block: K must be >= 1");
    if (j_cols < 0) throw argument_error("build_block: j_cols must be >= 0");
    const int cols = K + j_cols;
    std::vector<Cplx> e(static_cast<size_t>(K) * static_cast<size_t>(cols), Cplx{0.0, 0.0});
    for (int row = 1; row <= K; ++row) {
        const Cplx trow = t + static_cast<double>(row) - 1.0;
        for (int col = row; col <= cols; ++col) {
            const int n = col - row + 1;  // first-row index after the shift
            Cplx v;
            switch (kind) {
                case BlockKind::M: v = M_first_row(n, trow, q); break;
                case BlockKind::N: v = N_first_row(n, trow, q); break;
                case BlockKind::M_INV: v = R_entry(n, trow, q); break;
                case BlockKind::H: v = H_entry(n, trow, q); break;
            }
            e[static_cast<size_t>(row - 1) * static_cast<size_t>(cols) +
              static_cast<size_t>(col - 1)] = v;
        }
    }
    return TriBlock(kind, t, K, j_cols, std::move(e));
}

TriBlock invert_block_backsub(const TriBlock& m_block) {
    if (m_block.kind() != BlockKind::M)
        throw argument_error("invert_block_backsub: expects an M block");
    const int K = m_block.K();
    std::vector<Cplx> x(static_cast<size_t>(K) * static_cast<size_t>(K), Cplx{0.0, 0.0});
    auto ref = [&](int r, int c) -> Cplx& {
        return x[static_cast<size_t>(r) * static_cast<size_t>(K) + static_cast<size_t>(c)];
    };
    // unit upper triangular: columns solved upward
    for (int col = 0; col < K; ++col) {
        ref(col, col) = 1.0;
        for (int row = col - 1; row >= 0; --row) {
            Cplx acc = 0.0;
            for (int l = row + 1; l <= col; ++l) acc += m_block.at(row, l) * ref(l, col);
            ref(row, col) = -acc;
        }
    }
    return TriBlock(BlockKind::M_INV, m_block.base_t(), K, 0, std::move(x));
}

double verify_inverse(Cplx t, int K, const QParam& q) {
    const TriBlock m = build_block(BlockKind::M, t, K, 0, q);
    const TriBlock minv = build_block(BlockKind::M_INV, t, K, 0, q);
    double worst = 0.0;
    for (int r = 0; r < K; ++r) {
        for (int c = 0; c < K; ++c) {
            Cplx acc = 0.0;
            for (int l = 0; l < K; ++l) acc += m.at(r, l) * minv.at(l, c);
            const Cplx want = (r == c) ? Cplx{1.0, 0.0} : Cplx{0.0, 0.0};
            worst = std::max(worst, std::abs(acc - want));
        }
    }
    return worst;
}

namespace {

Cplx series_value(Model model, const ArgVector& s, const QParam& q, const SumBudget& budget) {
    return eval_series(model, s, q, budget).value;
}

ArgVector with_head(const ArgVector& s, Cplx head, size_t drop) {
    ArgVector out;
    out.reserve(s.size() - drop + 1);
    out.push_back(head);
    for (size_t i = drop; i < s.size(); ++i) out.push_back(s[i]);
    return out;
}

}  // namespace

TranslationCheck check_translation(Model model, const ArgVector& s, const QParam& q, int k_terms,
                                   const SumBudget& budget) {
    if (k_terms < 1) throw argument_error("check_translation: k_terms must be >= 1");
    if (model == Model::FQ_GENERAL)
        throw argument_error("check_translation: no translation identity for FQ_GENERAL");
    if (!in_domain(model, s, nullptr))
        throw domain_error("check_translation: s outside the model's convergence domain");

    const size_t r = s.size();
    TranslationCheck out;
    const Cplx s1 = s[0];

    if (r == 1) {
        if (model != Model::SZ)
            throw argument_error("check_translation: depth-1 identity only for SZ");
        const Cplx qs = cpow_real_base(q.q, s1);
        Cplx ksum = 0.0;
        Cplx coef = s1;  // (s1)_{k+1}/(k+1)! carried across k to dodge factorial overflow
        for (int k = 0; k < k_terms; ++k) {
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            ksum += sign * coef *
                    series_value(model, {s1 + static_cast<double>(k + 1)}, q, budget);
            coef *= (s1 + static_cast<double>(k + 1)) / static_cast<double>(k + 2);
        }
        out.lhs = qs;
        out.rhs = (1.0 - qs) * series_value(model, s, q, budget) + qs * ksum;
        out.residual = std::abs(out.lhs - out.rhs);
        return out;
    }

    if (model == Model::SZ_STAR) {
        // z*(s1+s2, s3,...) = q^{s1} sum_k ... + (1-q^{s1}) z*(s)
        out.lhs = series_value(model, with_head(s, s[0] + s[1], 2), q, budget);
        Cplx ksum = 0.0;
        Cplx coef = s1;
        for (int k = 0; k < k_terms; ++k) {
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            ksum += sign * coef *
                    series_value(model, with_head(s, s1 + static_cast<double>(k + 1), 1), q, budget);
            coef *= (s1 + static_cast<double>(k + 1)) / static_cast<double>(k + 2);
        }
        const Cplx qs1 = cpow_real_base(q.q, s1);
        out.rhs = qs1 * ksum + (1.0 - qs1) * series_value(model, s, q, budget);
        out.residual = std::abs(out.lhs - out.rhs);
        return out;
    }

    const bool bz = (model == Model::BZ);
    Cplx lhs = 0.0;
    Cplx lcoef = 1.0;  // (s1)_k/k!
    for (int k = 0; k < k_terms; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        Cplx term = series_value(model, with_head(s, s[0] + s[1] + static_cast<double>(k), 2), q, budget);
        if (bz)
            term += (1.0 - q.q) *
                    series_value(model, with_head(s, s[0] + s[1] + static_cast<double>(k - 1), 2), q,
                                 budget);
        lhs += sign * lcoef * term;
        lcoef *= (s1 + static_cast<double>(k)) / static_cast<double>(k + 1);
    }
    Cplx rhs = 0.0;
    Cplx rcoef = s1;  // (s1)_{k+1}/(k+1)!
    for (int k = 0; k < k_terms; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        rhs += sign * rcoef *
               series_value(model, with_head(s, s1 + static_cast<double>(k + 1), 1), q, budget);
        rcoef *= (s1 + static_cast<double>(k + 1)) / static_cast<double>(k + 2);
    }
    const Cplx shift = bz ? (s1 - 1.0) : s1;
    rhs += (cpow_real_base(q.q, -shift) - 1.0) * series_value(model, s, q, budget);
    out.lhs = lhs;
    out.rhs = rhs;
    out.residual = std::abs(lhs - rhs);
    return out;
}

}  // namespace qmz
