#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "cone/oracle.hpp"

namespace cone {

/// Willingness-to-wait distribution of one (slot, line) cell. Sampled by
/// inverse transform; `Infinite` is the never-abandon test hook.
struct WtwSpec {
  enum class Kind { Lognormal, PiecewiseCdf, Infinite };
  Kind kind = Kind::Lognormal;

  // Lognormal parameters (minutes): median and log-space sigma.
  double median_minutes = 2.0;
  double sigma_log = 1.0;

  // Piecewise-linear CDF: (minutes, probability) knots, probabilities
  // increasing from 0 to 1.
  std::vector<std::pair<double, double>> cdf;

  double sample(Rng& rng) const;

  static WtwSpec infinite() {
    WtwSpec w;
    w.kind = Kind::Infinite;
    return w;
  }
};

/// Arrival-rate bounds (calls per minute) and patience model of one
/// (slot, line) cell.
struct SlotLineSpec {
  double rate_min = 0.2;
  double rate_max = 4.0;
  WtwSpec wtw;
};

/// Two-line call center over one shift: a fixed staff split serves two
/// independent FCFS queues with caller abandonment.
struct CallCenterConfig {
  int total_staff = 60;
  int min_per_line = 5;
  int n_slots = 8;
  double slot_minutes = 30.0;
  std::array<double, 2> service_mean_minutes = {3.0, 3.0};  // [AP, GE]
  std::vector<std::array<SlotLineSpec, 2>> slots;           // [slot][line]

  static CallCenterConfig defaults();
  static CallCenterConfig from_json_file(const std::string& path);

  void validate() const;

  /// Valid staff splits: total_staff - 2*min_per_line + 1.
  int n_decisions() const { return total_staff - 2 * min_per_line + 1; }

  /// Split index -> (staff on AP, staff on GE).
  std::pair<int, int> staffing(int split) const {
    return {min_per_line + split, total_staff - min_per_line - split};
  }

  /// 16-d arrival-rate box, slot-major line-minor: coordinate 2*slot + line.
  ContextBox context_box() const;

  double shift_minutes() const { return n_slots * slot_minutes; }
};

/// One shift simulation; returns abandoned/arrived over both lines
/// (0 when nothing arrives). Piecewise-constant Poisson arrivals per slot,
/// exponential service, per-caller patience; arrivals stop at shift end
/// and calls already in the system run to completion.
double callcenter_simulate(int split, const Context& arrival_profile,
                           const CallCenterConfig& config, Rng& rng);

/// Best split at `arrival_profile` estimated from `reps` independent runs
/// per split (evaluation-only; not charged to any learning budget).
int callcenter_estimate_best(const Context& arrival_profile,
                             const CallCenterConfig& config, int reps, Rng& rng);

class CallCenterOracle final : public Oracle {
 public:
  explicit CallCenterOracle(CallCenterConfig config, int true_best_reps = 10);

  int n_decisions() const override { return config_.n_decisions(); }
  const ContextBox& context_box() const override { return box_; }
  double sample(int decision, const Context& y, Rng& rng) const override;
  bool has_true_best() const override { return true; }
  int true_best(const Context& y, Rng& rng) const override;

  const CallCenterConfig& config() const { return config_; }

 private:
  CallCenterConfig config_;
  ContextBox box_;
  int true_best_reps_;
};

}  // namespace cone
