#pragma once

#include <string>
#include <vector>

#include "uqpt/qpt.hpp"
#include "uqpt/setup.hpp"

namespace uqpt {

enum class GridKind { SampleCount, SystematicStd, QubitCount, Variant };

enum class SetupVariant {
  SemiBlind,  // inputs estimated like everything else
  Chain,      // single input, d+1 delays, n_c scaled to keep total measurements
  Sqpt,       // trusted inputs measured after one application
};

std::string variant_name(SetupVariant v);

struct CampaignConfig {
  SetupSpec base;
  GridKind grid = GridKind::SampleCount;
  std::vector<double> values;             // n_c / std / n_qb values per grid point
  std::vector<SetupVariant> variants{SetupVariant::SemiBlind};  // Variant grid points
  int trials = 50;
  bool fixed_gate = false;  // default: a fresh random gate per trial
  Matrix gate;              // used when fixed_gate
  double orth_cutoff = 0.05;
  QstOptions qst;
  bool record_timing = false;  // off by default so repeated runs are byte-identical
  int jobs = 1;
};

struct TrialOutcome {
  std::string grid_point;
  int trial = 0;
  std::uint64_t seed = 0;
  double epsilon = 0.0;  // NaN when the trial failed
  double wall_seconds = 0.0;
  std::string note;  // failure description, empty on success
};

struct GridSummary {
  std::string grid_point;
  int completed = 0;
  int failed = 0;
  double median = 0.0, q1 = 0.0, q3 = 0.0, p5 = 0.0, p95 = 0.0;
};

struct CampaignResult {
  std::vector<TrialOutcome> trials;  // ordered by (grid point, trial index)
  std::vector<GridSummary> summary;
  double total_seconds = 0.0;
};

/// Linear-interpolation percentile of a sorted sample, q in [0, 1].
double percentile(const std::vector<double>& sorted, double q);

/// Run trials per grid point. Each trial draws its own gate (unless fixed),
/// simulates the setup, runs the pipeline and scores the estimate against
/// the true gate. Per-trial seeds come from a counter split of the master
/// seed, so results do not depend on execution order; failed trials are
/// recorded and the campaign continues.
CampaignResult run_campaign(const CampaignConfig& config);

/// Long CSV: grid_point,trial,seed,epsilon,wall_time (one row per trial).
/// Summary CSV: per grid point count, failures and percentiles. Percentiles
/// are recomputed from exactly the values the rows carry.
void write_campaign_csv(const CampaignResult& result, const std::string& long_path,
                        const std::string& summary_path);

struct ReplicationReport {
  Matrix x_hat;      // estimated inputs, columns in state order
  Matrix y_hat;      // estimated outputs
  Matrix m_aligned;  // pipeline estimate, global phase aligned to the target
  double epsilon = 0.0;
  QptResult result{UnitaryMatrix::identity(1), {}, 0.0, false};
  std::string rendered;  // printable report
};

/// End-to-end run on recorded counts: tomography with the measurement set
/// declared in the file, pipeline, then alignment and distance to `target`.
ReplicationReport replicate_experiment(const CountsFile& counts, const UnitaryMatrix& target,
                                       const QstOptions& qst_options = {},
                                       double orth_cutoff = 0.05);

}  // namespace uqpt
