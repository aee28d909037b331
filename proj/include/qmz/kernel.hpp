#pragma once

#include "qmz/types.hpp"

namespace qmz {

// [k]_q = (1-q^k)/(1-q) = 1 + q + ... + q^{k-1}, strictly positive
double q_bracket(long k, const QParam& q);

// b^s = exp(s ln b) for real b > 0; single-valued, no branch choice involved
Cplx cpow_real_base(double b, Cplx s);

// (s)_k = s(s+1)...(s+k-1), empty product for k = 0
Cplx rising_factorial(Cplx s, int k);

// q_i(t) = q^{-(t+i)} - 1; vanishes exactly when t+i lies in (2*pi*i/log q) Z
Cplx q_pole_factor(Cplx t, int i, const QParam& q);

// exact for n <= 170, then overflows like the underlying double
double factorial(int n);

}  // namespace qmz
