#include "cone/callcenter.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>

#include <json.hpp>

namespace cone {

double WtwSpec::sample(Rng& rng) const {
  switch (kind) {
    case Kind::Infinite:
      return std::numeric_limits<double>::infinity();
    case Kind::Lognormal:
      return lognormal(rng, std::log(median_minutes), sigma_log);
    case Kind::PiecewiseCdf: {
      // Inverse transform with linear interpolation between knots.
      const double u = uniform01(rng);
      if (u <= cdf.front().second) return cdf.front().first;
      for (size_t i = 1; i < cdf.size(); ++i) {
        if (u <= cdf[i].second) {
          const double p0 = cdf[i - 1].second, p1 = cdf[i].second;
          const double t0 = cdf[i - 1].first, t1 = cdf[i].first;
          const double w = (p1 > p0) ? (u - p0) / (p1 - p0) : 1.0;
          return t0 + w * (t1 - t0);
        }
      }
      return cdf.back().first;
    }
  }
  return 0.0;
}

CallCenterConfig CallCenterConfig::defaults() {
  CallCenterConfig cfg;
  cfg.slots.resize(static_cast<size_t>(cfg.n_slots));
  for (auto& slot : cfg.slots) {
    for (auto& line : slot) {
      line.rate_min = 0.2;
      line.rate_max = 4.0;
      line.wtw = WtwSpec{};
    }
  }
  return cfg;
}

void CallCenterConfig::validate() const {
  if (total_staff - min_per_line < min_per_line) {
    throw ConfigError("call center: total_staff must allow min_per_line on both lines");
  }
  if (n_slots < 1 || slot_minutes <= 0.0) {
    throw ConfigError("call center: need n_slots >= 1 and positive slot_minutes");
  }
  if (static_cast<int>(slots.size()) != n_slots) {
    throw ConfigError("call center: slots array must have n_slots entries");
  }
  for (const auto& slot : slots) {
    for (const auto& line : slot) {
      if (!(line.rate_min >= 0.0 && line.rate_min < line.rate_max)) {
        throw ConfigError("call center: each cell needs 0 <= rate_min < rate_max");
      }
      if (line.wtw.kind == WtwSpec::Kind::PiecewiseCdf) {
        const auto& cdf = line.wtw.cdf;
        if (cdf.size() < 2 || cdf.front().second != 0.0 || cdf.back().second != 1.0) {
          throw ConfigError("call center: piecewise WTW CDF must run from p=0 to p=1");
        }
        for (size_t i = 1; i < cdf.size(); ++i) {
          if (cdf[i].first < cdf[i - 1].first || cdf[i].second < cdf[i - 1].second) {
            throw ConfigError("call center: piecewise WTW CDF knots must be nondecreasing");
          }
        }
      } else if (line.wtw.kind == WtwSpec::Kind::Lognormal) {
        if (!(line.wtw.median_minutes > 0.0) || !(line.wtw.sigma_log > 0.0)) {
          throw ConfigError("call center: lognormal WTW needs positive median and sigma");
        }
      }
    }
  }
  if (!(service_mean_minutes[0] > 0.0 && service_mean_minutes[1] > 0.0)) {
    throw ConfigError("call center: service means must be positive");
  }
}

ContextBox CallCenterConfig::context_box() const {
  const int d = 2 * n_slots;
  Eigen::VectorXd lo(d), hi(d);
  for (int s = 0; s < n_slots; ++s) {
    for (int line = 0; line < 2; ++line) {
      lo[2 * s + line] = slots[static_cast<size_t>(s)][static_cast<size_t>(line)].rate_min;
      hi[2 * s + line] = slots[static_cast<size_t>(s)][static_cast<size_t>(line)].rate_max;
    }
  }
  return ContextBox(lo, hi);
}

namespace {

WtwSpec parse_wtw(const nlohmann::json& j) {
  WtwSpec w;
  const std::string type = j.value("type", "lognormal");
  if (type == "lognormal") {
    w.kind = WtwSpec::Kind::Lognormal;
    w.median_minutes = j.value("median_minutes", 2.0);
    w.sigma_log = j.value("sigma_log", 1.0);
  } else if (type == "piecewise_cdf") {
    w.kind = WtwSpec::Kind::PiecewiseCdf;
    for (const auto& pt : j.at("points")) {
      w.cdf.emplace_back(pt.at(0).get<double>(), pt.at(1).get<double>());
    }
  } else if (type == "infinite") {
    w.kind = WtwSpec::Kind::Infinite;
  } else {
    throw ConfigError("call center: unknown wtw type '" + type + "'");
  }
  return w;
}

SlotLineSpec parse_cell(const nlohmann::json& j) {
  SlotLineSpec cell;
  cell.rate_min = j.value("rate_min", 0.2);
  cell.rate_max = j.value("rate_max", 4.0);
  if (j.contains("wtw")) cell.wtw = parse_wtw(j.at("wtw"));
  return cell;
}

}  // namespace

CallCenterConfig CallCenterConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("call center: cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("call center: invalid JSON in " + path + ": " + e.what());
  }
  try {
    CallCenterConfig cfg = defaults();
    cfg.total_staff = j.value("total_staff", cfg.total_staff);
    cfg.min_per_line = j.value("min_per_line", cfg.min_per_line);
    cfg.slot_minutes = j.value("slot_minutes", cfg.slot_minutes);
    if (j.contains("service_mean_minutes")) {
      const auto& s = j.at("service_mean_minutes");
      if (s.is_number()) {
        cfg.service_mean_minutes = {s.get<double>(), s.get<double>()};
      } else {
        cfg.service_mean_minutes = {s.at("ap").get<double>(), s.at("ge").get<double>()};
      }
    }
    if (j.contains("slots")) {
      cfg.n_slots = static_cast<int>(j.at("slots").size());
      cfg.slots.clear();
      for (const auto& slot : j.at("slots")) {
        cfg.slots.push_back({parse_cell(slot.at("ap")), parse_cell(slot.at("ge"))});
      }
    }
    cfg.validate();
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("call center: bad config schema in " + path + ": " + e.what());
  }
}

namespace {

struct Caller {
  double arrival;
  double wtw;
  double service;
  int line;
  bool served = false;
  bool abandoned = false;
};

enum class EventType { Completion = 0, Arrival = 1, Abandon = 2 };

// Key orders by (time, type, seq): at equal timestamps a freed server is
// handed to the queue before any abandonment deadline fires, so a caller
// whose patience expires exactly when a server frees is served.
struct Event {
  double time;
  EventType type;
  long seq;
  int line;
  int caller;  // -1 for completions

  bool operator>(const Event& o) const {
    if (time != o.time) return time > o.time;
    if (type != o.type) return type > o.type;
    return seq > o.seq;
  }
};

}  // namespace

double callcenter_simulate(int split, const Context& arrival_profile,
                           const CallCenterConfig& config, Rng& rng) {
  if (arrival_profile.size() != 2 * config.n_slots) {
    throw std::invalid_argument("callcenter_simulate: arrival profile must have one rate per (slot, line)");
  }
  if (split < 0 || split >= config.n_decisions()) {
    throw std::invalid_argument("callcenter_simulate: split index out of range");
  }
  for (Eigen::Index k = 0; k < arrival_profile.size(); ++k) {
    if (!(arrival_profile[k] >= 0.0) || !std::isfinite(arrival_profile[k])) {
      throw std::invalid_argument("callcenter_simulate: arrival rates must be finite and nonnegative");
    }
  }

  const auto [staff_ap, staff_ge] = config.staffing(split);
  const int servers[2] = {staff_ap, staff_ge};
  const double horizon = config.shift_minutes();

  // All caller attributes are drawn up front, line 0 then line 1 in time
  // order, so the draw sequence does not depend on queue dynamics.
  std::vector<Caller> callers;
  for (int line = 0; line < 2; ++line) {
    for (int s = 0; s < config.n_slots; ++s) {
      const double rate = arrival_profile[2 * s + line];
      if (rate <= 0.0) continue;
      const double t0 = s * config.slot_minutes;
      const double t1 = std::min((s + 1) * config.slot_minutes, horizon);
      double t = t0;
      while (true) {
        t += exponential(rng, 1.0 / rate);
        if (t >= t1) break;
        Caller c;
        c.arrival = t;
        c.line = line;
        c.wtw = config.slots[static_cast<size_t>(s)][static_cast<size_t>(line)].wtw.sample(rng);
        c.service = exponential(rng, config.service_mean_minutes[static_cast<size_t>(line)]);
        callers.push_back(c);
      }
    }
  }
  if (callers.empty()) return 0.0;

  std::priority_queue<Event, std::vector<Event>, std::greater<Event>> events;
  long seq = 0;
  for (int i = 0; i < static_cast<int>(callers.size()); ++i) {
    events.push({callers[static_cast<size_t>(i)].arrival, EventType::Arrival, seq++,
                 callers[static_cast<size_t>(i)].line, i});
  }

  std::array<std::queue<int>, 2> waiting;
  int busy[2] = {0, 0};
  long abandoned_count = 0;

  auto start_service = [&](int caller_id, double now) {
    Caller& c = callers[static_cast<size_t>(caller_id)];
    c.served = true;
    ++busy[c.line];
    events.push({now + c.service, EventType::Completion, seq++, c.line, -1});
  };

  while (!events.empty()) {
    const Event ev = events.top();
    events.pop();
    switch (ev.type) {
      case EventType::Arrival: {
        Caller& c = callers[static_cast<size_t>(ev.caller)];
        if (busy[ev.line] < servers[ev.line]) {
          start_service(ev.caller, ev.time);
        } else {
          waiting[static_cast<size_t>(ev.line)].push(ev.caller);
          if (std::isfinite(c.wtw)) {
            events.push({ev.time + c.wtw, EventType::Abandon, seq++, ev.line, ev.caller});
          }
        }
        break;
      }
      case EventType::Completion: {
        --busy[ev.line];
        auto& q = waiting[static_cast<size_t>(ev.line)];
        while (!q.empty()) {
          const int next = q.front();
          q.pop();
          if (callers[static_cast<size_t>(next)].abandoned) continue;
          start_service(next, ev.time);
          break;
        }
        break;
      }
      case EventType::Abandon: {
        Caller& c = callers[static_cast<size_t>(ev.caller)];
        if (!c.served && !c.abandoned) {
          c.abandoned = true;  // removed from the FIFO lazily
          ++abandoned_count;
        }
        break;
      }
    }
  }

  return static_cast<double>(abandoned_count) / static_cast<double>(callers.size());
}

int callcenter_estimate_best(const Context& arrival_profile,
                             const CallCenterConfig& config, int reps, Rng& rng) {
  if (reps < 1) throw std::invalid_argument("callcenter_estimate_best: reps must be >= 1");
  Eigen::VectorXd avg(config.n_decisions());
  for (int split = 0; split < config.n_decisions(); ++split) {
    double sum = 0.0;
    for (int r = 0; r < reps; ++r) {
      sum += callcenter_simulate(split, arrival_profile, config, rng);
    }
    avg[split] = sum / static_cast<double>(reps);
  }
  return argmin_tiebreak(avg, rng);
}

CallCenterOracle::CallCenterOracle(CallCenterConfig config, int true_best_reps)
    : config_(std::move(config)),
      box_(config_.context_box()),
      true_best_reps_(true_best_reps) {
  config_.validate();
}

double CallCenterOracle::sample(int decision, const Context& y, Rng& rng) const {
  return callcenter_simulate(decision, y, config_, rng);
}

int CallCenterOracle::true_best(const Context& y, Rng& rng) const {
  return callcenter_estimate_best(y, config_, true_best_reps_, rng);
}

}  // namespace cone
