#pragma once

#include <cstdint>
#include <span>

#include "gaussent/gree.hpp"
#include "gaussent/nla.hpp"
#include "gaussent/report.hpp"
#include "gaussent/shots.hpp"

namespace gaussent {

struct BootstrapOptions {
  unsigned workers = 1;
  GreeOptions gree{};
};

struct BootstrapResult {
  /// Mean over repetitions of p_success and every measure; separable is the majority vote.
  MeasureReport mean;
  /// 1.5 sample standard deviations of the same fields.
  MeasureReport spread;
  unsigned n_reps;
};

/// Repeats mc_distill with n_reps seeds derived from seed (only the accept/reject draws
/// change) and evaluates all measures each time. Throws DomainError for n_reps < 2;
/// StarvationError from any repetition propagates.
BootstrapResult bootstrap_errorbars(std::span<const ShotRecord> records, const FilterParams& fp, unsigned n_reps,
                                    std::uint64_t seed, const BootstrapOptions& options = {});

}  // namespace gaussent
