/*
 * Combinatorial coefficients behind the translation matrices.
 *
 * D_{1,n}(t) is the determinant of the (n-1) x (n-1) upper Hessenberg matrix
 * with unit subdiagonal and entries (j >= i)
 *
 *   a_{i,j} = (t+i-1)(t+i)...(t+j-1) / ((j-i+1)! q_{i-1}(t)),
 *   q_u(t) = q^{-(t+u)} - 1.
 *
 * Expanding along restricted permutations decomposes each term into a tiling of
 * {0, ..., n-2} by singletons and blocks of size >= 2: a piece starting at
 * position l contributes 1/q_l, a block of size m contributes 1/m!, and every
 * numerator factor appears exactly once, giving
 *
 *   D_{1,n}(t) = t(t+1)...(t+n-2) L_n(t),
 *
 * with L_n summing 1/(prod part!) times the ordered block sums over all block
 * multisets (partitions with parts >= 2).
 */

#include "qmz/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmz/errors.hpp"
#include "qmz/kernel.hpp"

namespace qmz {

namespace {

// 1/q_i(t) for i = 0..count-1, guarding each factor
std::vector<Cplx> inv_pole_factors(Cplx t, int count, const QParam& q) {
    std::vector<Cplx> inv(static_cast<size_t>(std::max(count, 0)));
    for (int i = 0; i < count; ++i) {
        const Cplx qi = q_pole_factor(t, i, q);
        if (std::abs(qi) < kSingularQTol)
            throw singular_coefficient(i, "q_" + std::to_string(i) + "(t) is singular");
        inv[static_cast<size_t>(i)] = 1.0 / qi;
    }
    return inv;
}

// the ordered block sum, written against a precomputed 1/q table of length n-1
Cplx arrangement_sum_impl(const std::vector<int>& parts, const std::vector<Cplx>& inv, int n) {
    const int j = static_cast<int>(parts.size());
    int i = 0;
    for (int p : parts) i += p;
    const int limit = n - i - 1;
    if (limit < 0) return 0.0;

    std::vector<int> T(static_cast<size_t>(j) + 1, 0);  // T[r] = i_1 + ... + i_r
    for (int r = 1; r <= j; ++r) T[static_cast<size_t>(r)] = T[static_cast<size_t>(r) - 1] + parts[static_cast<size_t>(r) - 1];

    std::vector<int> ks(static_cast<size_t>(j), 0);  // ks[0] = k_1, ..., ks[j-1] = k_j
    Cplx total = 0.0;

    // choose k_j first, then k_{j-1} >= k_j, ..., up to k_1 <= limit
    auto rec = [&](auto&& self, int level) -> void {  // level counts down j..1
        if (level == 0) {
            Cplx prod = 1.0;
            for (int u = 0; u <= ks[static_cast<size_t>(j) - 1]; ++u) prod *= inv[static_cast<size_t>(u)];
            for (int r = 1; r <= j - 1; ++r)
                for (int s = ks[static_cast<size_t>(j - r)]; s <= ks[static_cast<size_t>(j - r - 1)]; ++s)
                    prod *= inv[static_cast<size_t>(T[static_cast<size_t>(r)] + s)];
            for (int v = i + ks[0]; v <= n - 2; ++v) prod *= inv[static_cast<size_t>(v)];
            total += prod;
            return;
        }
        const int lo = (level == j) ? 0 : ks[static_cast<size_t>(level)];
        for (int kv = lo; kv <= limit; ++kv) {
            ks[static_cast<size_t>(level) - 1] = kv;
            self(self, level - 1);
        }
    };
    rec(rec, j);
    return total;
}

// distinct orderings of a multiset of parts
std::vector<std::vector<int>> distinct_orderings(std::vector<int> parts) {
    std::sort(parts.begin(), parts.end());
    std::vector<std::vector<int>> out;
    do {
        out.push_back(parts);
    } while (std::next_permutation(parts.begin(), parts.end()));
    return out;
}

Cplx L_from_inv(int n, const std::vector<Cplx>& inv) {
    if (n == 1) return 1.0;
    Cplx lead = 1.0;
    for (int u = 0; u <= n - 2; ++u) lead *= inv[static_cast<size_t>(u)];
    Cplx total = lead;
    for (int i = 2; i <= n - 1; ++i) {
        for (const Partition& p : partitions_no_ones(i)) {
            double coef = 1.0;
            for (int part : p.parts) coef /= factorial(part);
            Cplx orderings = 0.0;
            for (const std::vector<int>& ord : distinct_orderings(p.parts))
                orderings += arrangement_sum_impl(ord, inv, n);
            total += coef * orderings;
        }
    }
    return total;
}

void check_parts(const std::vector<int>& parts, const char* who) {
    if (parts.empty()) throw argument_error(std::string(who) + ": empty part list");
    for (int p : parts)
        if (p < 2) throw argument_error(std::string(who) + ": parts must be >= 2");
}

}  // namespace

int Partition::total() const {
    int s = 0;
    for (int p : parts) s += p;
    return s;
}

bool Partition::all_parts_equal() const {
    for (int p : parts)
        if (p != parts.front()) return false;
    return true;
}

std::vector<Partition> partitions_no_ones(int i) {
    std::vector<Partition> out;
    if (i < 2) return out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rem, int maxp) -> void {
        if (rem == 0) {
            out.push_back(Partition{cur});
            return;
        }
        for (int p = std::min(rem, maxp); p >= 2; --p) {
            if (rem - p == 1) continue;  // a leftover 1 can never be placed
            cur.push_back(p);
            self(self, rem - p, p);
            cur.pop_back();
        }
    };
    rec(rec, i, i);
    return out;
}

Cplx arrangement_sum(const std::vector<int>& parts_in_order, Cplx t, int n, const QParam& q) {
    check_parts(parts_in_order, "arrangement_sum");
    int i = 0;
    for (int p : parts_in_order) i += p;
    if (n < i + 1) throw argument_error("arrangement_sum: n must be at least total + 1");
    return arrangement_sum_impl(parts_in_order, inv_pole_factors(t, n - 1, q), n);
}

Cplx u_sum(const Partition& p, Cplx t, int n, const QParam& q) {
    check_parts(p.parts, "u_sum");
    if (n < p.total() + 1) throw argument_error("u_sum: n must be at least total + 1");
    const std::vector<Cplx> inv = inv_pole_factors(t, n - 1, q);
    Cplx out = arrangement_sum_impl(p.parts, inv, n);
    if (!p.all_parts_equal()) {
        std::vector<int> rev(p.parts.rbegin(), p.parts.rend());
        out += arrangement_sum_impl(rev, inv, n);
    }
    return out;
}

Cplx L_n(int n, Cplx t, const QParam& q) {
    if (n < 1) throw argument_error("L_n: n must be >= 1");
    return L_from_inv(n, inv_pole_factors(t, n - 1, q));
}

Cplx hessenberg_det(int n, Cplx t, const QParam& q) {
    if (n < 2) throw argument_error("hessenberg_det: n must be >= 2");
    const int size = n - 1;
    const std::vector<Cplx> inv = inv_pole_factors(t, size, q);
    // a_{i,k} = (t+i-1)...(t+k-1) / ((k-i+1)! q_{i-1});  d_k = a_{k,k} d_{k-1} + sum a_{i,k} d_{i-1}
    std::vector<Cplx> d(static_cast<size_t>(size) + 1);
    d[0] = 1.0;
    for (int k = 1; k <= size; ++k) {
        Cplx acc = 0.0;
        for (int i = k; i >= 1; --i) {
            const Cplx a_ik = rising_factorial(t + static_cast<double>(i) - 1.0, k - i + 1) /
                              factorial(k - i + 1) * inv[static_cast<size_t>(i) - 1];
            acc += a_ik * d[static_cast<size_t>(i) - 1];
        }
        d[static_cast<size_t>(k)] = acc;
    }
    return d[static_cast<size_t>(size)];
}

Cplx permutation_det(int n, Cplx t, const QParam& q) {
    if (n < 2) throw argument_error("permutation_det: n must be >= 2");
    if (n > 9) throw argument_error("permutation_det: n > 9 refused (factorial blow-up)");
    const int size = n - 1;
    const std::vector<Cplx> inv = inv_pole_factors(t, size, q);
    auto entry = [&](int i, int j) -> Cplx {  // 1-indexed; j >= i-1 guaranteed by the filter
        if (j == i - 1) return 1.0;
        return rising_factorial(t + static_cast<double>(i) - 1.0, j - i + 1) /
               factorial(j - i + 1) * inv[static_cast<size_t>(i) - 1];
    };
    std::vector<int> sigma(static_cast<size_t>(size));
    for (int i = 0; i < size; ++i) sigma[static_cast<size_t>(i)] = i + 1;
    Cplx total = 0.0;
    do {
        bool ok = true;
        for (int j = 2; j <= size && ok; ++j)
            if (sigma[static_cast<size_t>(j) - 1] < j - 1) ok = false;
        if (!ok) continue;
        Cplx prod = 1.0;
        for (int i = 1; i <= size; ++i) prod *= entry(i, sigma[static_cast<size_t>(i) - 1]);
        total += prod;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total;
}

CoeffTable::CoeffTable(Cplx t, int n_max, const QParam& q) : t_(t), n_max_(n_max) {
    if (n_max < 1) throw argument_error("CoeffTable: n_max must be >= 1");
    if (!is_finite(t)) throw argument_error("CoeffTable: non-finite base point");
    inv_q_ = inv_pole_factors(t, n_max - 1, q);
    L_.resize(static_cast<size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) L_[static_cast<size_t>(n) - 1] = L_from_inv(n, inv_q_);
}

Cplx CoeffTable::L(int n) const {
    if (n < 1 || n > n_max_) throw argument_error("CoeffTable::L: n out of range");
    return L_[static_cast<size_t>(n) - 1];
}

Cplx CoeffTable::inv_q(int i) const {
    if (i < 0 || i > n_max_ - 2) throw argument_error("CoeffTable::inv_q: index out of range");
    return inv_q_[static_cast<size_t>(i)];
}

Cplx R_entry(int n, Cplx t, const QParam& q) {
    if (n < 1) throw argument_error("R_entry: n must be >= 1");
    if (n == 1) return 1.0;
    const double sign = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^{n-1}
    return sign * rising_factorial(t, n - 1) * L_n(n, t, q);
}

namespace {

// guarded 1/q_i(t) for a single index
Cplx inv_pole_factor_at(Cplx t, int i, const QParam& q) {
    const Cplx qi = q_pole_factor(t, i, q);
    if (std::abs(qi) < kSingularQTol)
        throw singular_coefficient(i, "q_" + std::to_string(i) + "(t) is singular");
    return 1.0 / qi;
}

}  // namespace

Cplx H_entry(const CoeffTable& table, int n, const QParam& q) {
    if (n < 1 || n > table.n_max()) throw argument_error("H_entry: n out of table range");
    Cplx sum = 0.0;
    for (int i = 1; i <= n; ++i) {
        const Cplx invq = (i - 1 <= table.n_max() - 2) ? table.inv_q(i - 1)
                                                       : inv_pole_factor_at(table.base_t(), i - 1, q);
        sum += table.L(i) / factorial(n - i) * invq;
    }
    const double sign = (n % 2 == 0) ? -1.0 : 1.0;
    return sign * rising_factorial(table.base_t(), n - 1) * sum;
}

Cplx H_entry(int n, Cplx t, const QParam& q) {
    if (n < 1) throw argument_error("H_entry: n must be >= 1");
    return H_entry(CoeffTable(t, n, q), n, q);
}

Cplx R_tail_first_row(const CoeffTable& table, int n, int K, const QParam& q) {
    if (K < 1 || K > table.n_max()) throw argument_error("R_tail_first_row: K out of table range");
    if (n < 1) throw argument_error("R_tail_first_row: n must be >= 1");
    const Cplx t = table.base_t();
    const int A = K + n - 1;  // rising-factorial length for m = 1
    Cplx sum = 0.0;
    for (int j = 1; j <= K; ++j) {
        // (t)(t+1)...(t+A-1) / (A-j+1)!  as one interleaved product
        Cplx frac = 1.0;
        for (int x = 0; x < A; ++x) {
            frac *= t + static_cast<double>(x);
            if (x <= A - j) frac /= static_cast<double>(x + 1);
        }
        const Cplx invq = (j - 1 <= table.n_max() - 2) ? table.inv_q(j - 1)
                                                       : inv_pole_factor_at(t, j - 1, q);
        sum += frac * table.L(j) * invq;
    }
    const double sign = (A % 2 == 0) ? 1.0 : -1.0;  // (-1)^{K+n-1}
    return sign * sum;
}

Cplx R_tail_entry(int m, int n, Cplx t, int K, const QParam& q) {
    if (m < 1 || m > K) throw argument_error("R_tail_entry: need 1 <= m <= K");
    if (n < 1) throw argument_error("R_tail_entry: n must be >= 1");
    // shift to the row base point: L_j(t+m-1) and q_{m-2+j}(t) = q_{j-1}(t+m-1)
    const Cplx tm = t + static_cast<double>(m) - 1.0;
    const CoeffTable table(tm, K - m + 1, q);
    const int A = K + n - m;
    Cplx sum = 0.0;
    for (int j = 1; j <= K - m + 1; ++j) {
        Cplx frac = 1.0;
        for (int x = 0; x < A; ++x) {
            frac *= tm + static_cast<double>(x);
            if (x <= A - j) frac /= static_cast<double>(x + 1);
        }
        const Cplx invq = (j - 1 <= table.n_max() - 2) ? table.inv_q(j - 1)
                                                       : inv_pole_factor_at(tm, j - 1, q);
        sum += frac * table.L(j) * invq;
    }
    const double sign = (A % 2 == 0) ? 1.0 : -1.0;  // (-1)^{K+n-m}
    return sign * sum;
}

}  // namespace qmz
