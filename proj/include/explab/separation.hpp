#pragma once

#include <optional>
#include <string>
#include <vector>

#include "explab/integrate.hpp"
#include "explab/parallel.hpp"
#include "explab/suspension.hpp"

namespace explab {

enum class SeparationMode { forward, backward, bidirectional };

enum class Channel { none, base_distance, time_gap };

std::string to_string(SeparationMode m);
std::string to_string(Channel c);

/// Outcome of a separation test. A "not separated" verdict is always relative
/// to (threshold, horizon) and carries its margin: threshold minus the largest
/// statistic observed over the scan (positive = comfortably below threshold).
struct SeparationVerdict {
    bool separated = false;
    std::optional<double> witness_time; // continuous flows
    std::optional<long> witness_index;  // suspension criterion
    double threshold = 0.0;
    double horizon = 0.0; // time horizon, or N for the suspension criterion
    Channel channel = Channel::none;
    double margin = 0.0;
};

/// First sampled time with dist(phi_t a, phi_t b) >= delta, both points
/// integrated on one step grid (no reparametrization). Backward mode runs the
/// reversed field; bidirectional reports the witness of smaller |t| (signed,
/// backward negative). Ties count as separated.
SeparationVerdict separation_time(const VectorFieldSpec& spec, Point2 a, Point2 b, double delta,
                                  double horizon, double dt, SeparationMode mode);

/// Suspension separation criterion: scan n = 0..N (and/or negative n per
/// mode) for the first index where either the base distance d(f^n x, f^n y)
/// or the inclusive Birkhoff gap |sum_{i=0..n} T(f^i x) - T(f^i y)| reaches
/// rho, tagging which channel fired; base distance wins ties between the two.
SeparationVerdict kinematic_check_pair(const SuspensionFlow& flow, double x, double y, double rho,
                                       long N, SeparationMode mode);

/// Partial sums S_k = sum_{i=0}^{k} (T(f^i x) - T(f^i y)), k = 0..N, with the
/// first index crossing the certificate threshold (default 1e3) if any.
struct SeriesCertificate {
    std::vector<double> partial_sums;
    std::optional<long> crossed;
    double threshold = 1000.0;
};

SeriesCertificate divergence_partial_sums(const SuspensionFlow& flow, double x, double y, long N,
                                          double threshold = 1000.0);

/// One sweep entry; `error` is set (and the verdict meaningless) when the
/// pair aborted.
struct FieldSweepRow {
    std::size_t pair_id = 0;
    Point2 a, b;
    SeparationVerdict verdict;
    std::string error;
};

struct SuspensionSweepRow {
    std::size_t pair_id = 0;
    double x = 0.0, y = 0.0;
    SeparationVerdict verdict;
    std::string error;
};

template <class Row>
struct SweepReport {
    std::vector<Row> rows;             // pair order preserved
    double fraction_separated = 0.0;   // over pairs without errors
    std::optional<double> min_witness; // |witness| over separated pairs
    std::optional<double> max_witness;
    std::size_t errors = 0;
    std::vector<std::size_t> by_margin; // non-separated pair ids, smallest margin first
};

SweepReport<FieldSweepRow> pair_sweep(const VectorFieldSpec& spec,
                                      const std::vector<std::pair<Point2, Point2>>& pairs,
                                      double delta, double horizon, double dt, SeparationMode mode,
                                      par::Exec exec = par::Exec::openmp);

SweepReport<SuspensionSweepRow> pair_sweep(const SuspensionFlow& flow,
                                           const std::vector<std::pair<double, double>>& pairs,
                                           double rho, long N, SeparationMode mode,
                                           par::Exec exec = par::Exec::openmp);

} // namespace explab
