#include "explab/frechet.hpp"

#include <algorithm>
#include <vector>

namespace explab {

double discrete_frechet(const Trajectory& ta, const Trajectory& tb) {
    if (ta.points.empty() || tb.points.empty())
        throw ParameterError("discrete_frechet: trajectories must be nonempty");
    if (!domains_equal(ta.domain, tb.domain))
        throw ParameterError("discrete_frechet: mismatched domains");
    const auto& A = ta.points;
    const auto& B = tb.points;
    const std::size_t n = A.size(), m = B.size();
    std::vector<double> prev(m), cur(m);
    for (std::size_t j = 0; j < m; ++j) {
        double d = domain_distance(ta.domain, A[0], B[j]);
        prev[j] = (j == 0) ? d : std::max(prev[j - 1], d);
    }
    for (std::size_t i = 1; i < n; ++i) {
        cur[0] = std::max(prev[0], domain_distance(ta.domain, A[i], B[0]));
        for (std::size_t j = 1; j < m; ++j) {
            double reach = std::min({prev[j], cur[j - 1], prev[j - 1]});
            cur[j] = std::max(reach, domain_distance(ta.domain, A[i], B[j]));
        }
        std::swap(prev, cur);
    }
    return prev[m - 1];
}

} // namespace explab
