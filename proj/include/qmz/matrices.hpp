#pragma once

#include <vector>

#include "qmz/series.hpp"
#include "qmz/types.hpp"

namespace qmz {

enum class BlockKind { M, N, M_INV, H };

// K x (K + j_cols) truncation of one of the translation matrices at base point t.
// Row k is row 1 shifted to t+k-1; all four kinds are upper triangular with the
// diagonals 1 (M, M_INV) and 1/q_0(t+k-1) (N, H).
class TriBlock {
public:
    TriBlock(BlockKind kind, Cplx t, int K, int j_cols, std::vector<Cplx> entries);
    Cplx at(int row, int col) const;  // 0-indexed; col may reach into the J block
    BlockKind kind() const { return kind_; }
    Cplx base_t() const { return t_; }
    int K() const { return K_; }
    int j_cols() const { return j_cols_; }

private:
    BlockKind kind_;
    Cplx t_;
    int K_;
    int j_cols_;
    std::vector<Cplx> entries_;  // row-major, K x (K + j_cols)
};

// first-row entries of the infinite matrices (n >= 1)
Cplx M_first_row(int n, Cplx t, const QParam& q);
Cplx N_first_row(int n, Cplx t, const QParam& q);

TriBlock build_block(BlockKind kind, Cplx t, int K, int j_cols, const QParam& q);

// M_II^{-1} by back substitution on the unit upper triangular system (the second,
// independent route; build_block(M_INV, ...) uses the closed form)
TriBlock invert_block_backsub(const TriBlock& m_block);

// max |(M_II . M_II^{-1}) - I|, closed-form inverse; exact in exact arithmetic
// because triangular truncation commutes with the product on the II block
double verify_inverse(Cplx t, int K, const QParam& q);

struct TranslationCheck {
    Cplx lhs{0.0, 0.0};
    Cplx rhs{0.0, 0.0};
    double residual = 0.0;
};

// Both sides of the model's translation identity, every zeta value by direct
// series, the k-sums truncated at k_terms:
//   SZ depth 1 :  q^s = (1-q^s) z(s) + q^s sum_k (-1)^k (s)_{k+1}/(k+1)! z(s+k+1)
//   SZ depth r :  sum_k (-1)^k (s1)_k/k! z(s1+s2+k, s3,...)
//                   = sum_k (-1)^k (s1)_{k+1}/(k+1)! z(s1+k+1, s2,...) + (q^{-s1}-1) z(s)
//   BZ depth r :  as SZ but with z(s1+s2+k,...) + (1-q) z(s1+s2+k-1,...) on the left
//                 and the prefactor q^{-(s1-1)} - 1
//   STAR depth r: z*(s1+s2, s3,...) = q^{s1} sum_k (-1)^k (s1)_{k+1}/(k+1)! z*(s1+k+1, s2,...)
//                   + (1-q^{s1}) z*(s)
TranslationCheck check_translation(Model model, const ArgVector& s, const QParam& q, int k_terms,
                                   const SumBudget& budget = {});

}  // namespace qmz
