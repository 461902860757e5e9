#include "explab/denjoy_koksma.hpp"

#include <cmath>

#include "explab/contfrac.hpp"

namespace explab {

namespace {

const RotationMap& require_rotation(const SuspensionFlow& flow) {
    const auto* r = std::get_if<RotationMap>(&flow.map);
    if (!r) throw ParameterError("denjoy_koksma_gap: base map must be a circle rotation");
    return *r;
}

double smooth_mean(const ReturnTime& t) {
    if (const auto* c = std::get_if<ConstantTime>(&t)) return c->c;
    if (std::holds_alternative<SinusoidalTime>(t)) return 1.0; // sinusoid integrates to zero
    throw ParameterError("denjoy_koksma_gap: return time must be C1 on the circle "
                         "(constant or sinusoidal)");
}

} // namespace

long long denjoy_koksma_qn(const SuspensionFlow& flow, int n) {
    const RotationMap& rot = require_rotation(flow);
    return continued_fraction_denominators(rot.alpha, n).back();
}

double denjoy_koksma_gap(const SuspensionFlow& flow, int n, long grid, par::Exec exec) {
    const RotationMap& rot = require_rotation(flow);
    const double tau = smooth_mean(flow.time);
    if (grid < 1000) throw ParameterError("denjoy_koksma_gap: grid must be >= 1e3");
    const long long qn = continued_fraction_denominators(rot.alpha, n).back();

    auto gap_at = [&](std::size_t i) {
        double x = static_cast<double>(i) / static_cast<double>(grid);
        double sum = 0.0;
        for (long long k = 0; k < qn; ++k) {
            sum += eval_time(flow.time, x);
            x += rot.alpha;
            if (x >= 1.0) x -= 1.0;
        }
        return std::fabs(tau * static_cast<double>(qn) - sum);
    };
    return par::max_scan(static_cast<std::size_t>(grid), gap_at, exec).value;
}

} // namespace explab
