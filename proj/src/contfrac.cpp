#include "explab/contfrac.hpp"

#include <cmath>
#include <sstream>

#include "explab/errors.hpp"

namespace explab {

std::vector<long long> continued_fraction_denominators(double alpha, int k) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ParameterError("continued fraction: alpha must be in (0,1)");
    if (k < 1 || k > 25) throw ParameterError("continued fraction: k must be in [1,25]");
    std::vector<long long> q;
    q.reserve(static_cast<std::size_t>(k));
    long long q_prev = 1, q_prev2 = 0; // q_0 = 1, q_{-1} = 0
    double x = alpha;
    for (int i = 0; i < k; ++i) {
        if (x < 1e-12) {
            std::ostringstream msg;
            msg << "continued fraction: expansion terminated after " << q.size()
                << " terms (alpha rational to precision); computed:";
            for (long long v : q) msg << ' ' << v;
            throw ParameterError(msg.str());
        }
        const double inv = 1.0 / x;
        const double af = std::floor(inv);
        if (af > 9e15) {
            std::ostringstream msg;
            msg << "continued fraction: partial quotient overflow after " << q.size()
                << " terms; computed:";
            for (long long v : q) msg << ' ' << v;
            throw ParameterError(msg.str());
        }
        const long long a = static_cast<long long>(af);
        x = inv - af;
        const long long qn = a * q_prev + q_prev2;
        if (qn < q_prev) throw ParameterError("continued fraction: denominator overflow");
        q.push_back(qn);
        q_prev2 = q_prev;
        q_prev = qn;
    }
    return q;
}

double nearest_integer_distance(double alpha, long long q) {
    const double v = static_cast<double>(q) * alpha;
    return std::fabs(v - std::round(v));
}

} // namespace explab
