#pragma once

#include <vector>

#include "qmz/types.hpp"

namespace qmz {

// |q_i(t)| below this raises singular_coefficient instead of returning a huge value
inline constexpr double kSingularQTol = 1e-10;

// Partition with every part >= 2, stored in canonical nonincreasing order.
struct Partition {
    std::vector<int> parts;
    int total() const;
    bool all_parts_equal() const;
};

// all partitions of i into parts >= 2, canonical order, no duplicates; empty for i < 2
std::vector<Partition> partitions_no_ones(int i);

// Nested block sum for one fixed ordering (i_1, ..., i_j) of parts:
//   sum over 0 <= k_j <= ... <= k_1 <= n-i-1 of
//     prod_{u=0}^{k_j} 1/q_u
//     * prod_{r=1}^{j-1} prod_{s=k_{j-r+1}}^{k_{j-r}} 1/q_{T_r+s},  T_r = i_1+...+i_r
//     * prod_{v=i+k_1}^{n-2} 1/q_v
// with q_u = q^{-(t+u)} - 1.
Cplx arrangement_sum(const std::vector<int>& parts_in_order, Cplx t, int n, const QParam& q);

// forward ordering plus the reversed one (suppressed when all parts are equal)
Cplx u_sum(const Partition& p, Cplx t, int n, const QParam& q);

// L_n(t): 1/(q_0 ... q_{n-2}) plus, for each partition of each i in [2, n-1],
// (1/prod parts!) times the block sum over EVERY distinct ordering of the parts.
// Forward + backward covers all orderings only up to n = 7; from n = 8 on,
// partitions like (3,2,2) admit interior orderings that the determinant
// recurrence also counts, so the full ordering sum is what factors D_{1,n}.
Cplx L_n(int n, Cplx t, const QParam& q);

// D_{1,n}(t) by the upper-Hessenberg minor recurrence d_k = a_{k,k} d_{k-1} + sum a_{i,k} d_{i-1}
Cplx hessenberg_det(int n, Cplx t, const QParam& q);

// D_{1,n}(t) by restricted-permutation expansion (sigma(j) >= j-1); oracle only, n <= 9
Cplx permutation_det(int n, Cplx t, const QParam& q);

// L_1..L_n_max and 1/q_i(t) for i <= n_max-2 at one base point; immutable after construction
class CoeffTable {
public:
    CoeffTable(Cplx t, int n_max, const QParam& q);
    Cplx L(int n) const;      // 1 <= n <= n_max
    Cplx inv_q(int i) const;  // 0 <= i <= n_max - 2
    Cplx base_t() const { return t_; }
    int n_max() const { return n_max_; }

private:
    Cplx t_;
    int n_max_;
    std::vector<Cplx> L_;
    std::vector<Cplx> inv_q_;
};

// (1,n) entry of M(t)^{-1}: (-1)^{n-1} t(t+1)...(t+n-2) L_n(t); entry (k,n) follows
// from the shift law R_{k,n}(t) = R_{1,n-k+1}(t+k-1)
Cplx R_entry(int n, Cplx t, const QParam& q);

// (1,n) entry of H(t) = M(t)^{-1} N(t):
//   (-1)^{n-1} t(t+1)...(t+n-2) sum_{i=1}^{n} L_i(t) / ((n-i)! q_{i-1}(t))
Cplx H_entry(int n, Cplx t, const QParam& q);

// entry (m,n) of M_II(t)^{-1} N_IJ(t) = -M_II(t)^{-1} M_IJ(t) for block size K:
//   (-1)^{K+n-m} (t+m-1)...(t+K+n-2) sum_{j=1}^{K-m+1} L_j(t+m-1) / ((K+n-m-j+1)! q_{m-2+j}(t))
// The rising factorial and the factorial are fused into one interleaved product
// so large n stays in range.
Cplx R_tail_entry(int m, int n, Cplx t, int K, const QParam& q);

// table-reusing variants; the table must be built at the entry's base point
// (H rows and first-row tail entries both live at t = table.base_t())
Cplx H_entry(const CoeffTable& table, int n, const QParam& q);
Cplx R_tail_first_row(const CoeffTable& table, int n, int K, const QParam& q);

}  // namespace qmz
