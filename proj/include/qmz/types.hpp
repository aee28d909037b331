#pragma once

#include <complex>
#include <vector>

namespace qmz {

using Cplx = std::complex<double>;

// Argument tuple (s_1, ..., s_r); depth r = size(). Ops validate r >= 1 and
// finiteness at entry.
using ArgVector = std::vector<Cplx>;

enum class Model { SZ, SZ_STAR, BZ, FQ_GENERAL };

// q in (0,1) with its natural log cached; construction rejects anything else.
struct QParam {
    double q;
    double log_q;
    explicit QParam(double q_);
};

bool is_finite(Cplx z);

// s_1 + ... + s_j, 1 <= j <= r
Cplx partial_sum(const ArgVector& s, int j);

// min over j of Re(s_1 + ... + s_j)
double min_partial_re(const ArgVector& s);

const char* model_name(Model m);

}  // namespace qmz
