#include "xlayer/params.hpp"

#include <sstream>

namespace xlayer {
namespace {

class Checker {
 public:
  explicit Checker(ValidationReport& report) : report_(report) {}

  void require(bool condition, std::string field, std::string message) {
    if (!condition) report_.errors.push_back({std::move(field), std::move(message)});
  }
  void warn(bool condition, std::string field, std::string message) {
    if (!condition) report_.warnings.push_back({std::move(field), std::move(message)});
  }

 private:
  ValidationReport& report_;
};

bool finite(double x) { return std::isfinite(x); }

void merge(ValidationReport& into, const ValidationReport& from) {
  into.errors.insert(into.errors.end(), from.errors.begin(), from.errors.end());
  into.warnings.insert(into.warnings.end(), from.warnings.begin(), from.warnings.end());
}

}  // namespace

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::Hybrid:
      return "hybrid";
    case SchemeKind::Centralized:
      return "centralized";
    case SchemeKind::Distributed:
      return "distributed";
  }
  return "unknown";
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (i) out << "; ";
    out << errors[i].field << ": " << errors[i].message;
  }
  return out.str();
}

ValidationError::ValidationError(ValidationReport report)
    : std::invalid_argument("invalid parameters: " + report.summary()), report_(std::move(report)) {}

ValidationReport validate(const ClusterTopology& t) {
  ValidationReport report;
  Checker c(report);
  c.require(finite(t.ap_density) && t.ap_density > 0.0, "topology.lambda_h", "must be > 0");
  c.require(finite(t.cluster_radius) && t.cluster_radius > 0.0, "topology.d_c", "must be > 0");
  c.require(finite(t.exclusion_distance) && t.exclusion_distance > 0.0, "topology.d_min", "must be > 0");
  c.require(finite(t.path_loss_exponent) && t.path_loss_exponent > 2.0, "topology.alpha",
            "must be > 2 for finite interference moments");
  c.require(t.mean_nodes >= 1, "topology.M", "must be >= 1");
  c.require(t.subcarriers >= 1, "topology.N", "must be >= 1");
  if (report.ok())
    c.warn(t.exclusion_distance >= t.cluster_radius, "topology.d_min",
           "below d_c: neighbouring clusters overlap the representative cluster");
  return report;
}

ValidationReport validate(const PowerTimingProfile& p) {
  ValidationReport report;
  Checker c(report);
  c.require(finite(p.transmit_power) && p.transmit_power > 0.0, "power.P_t", "must be > 0");
  c.require(finite(p.sensing_power) && p.sensing_power >= 0.0, "power.P_s", "must be >= 0");
  c.require(finite(p.decoding_power) && p.decoding_power >= 0.0, "power.P_d", "must be >= 0");
  c.require(finite(p.control_power) && p.control_power >= 0.0, "power.P_c", "must be >= 0");
  c.require(finite(p.slot_duration) && p.slot_duration > 0.0, "power.T", "must be > 0");
  c.require(finite(p.sensing_time) && p.sensing_time >= 0.0, "power.T_s", "must be >= 0");
  c.require(!(p.sensing_time >= p.slot_duration), "power.T_s", "must be < T");
  return report;
}

ValidationReport validate(const MacConfig& m) {
  ValidationReport report;
  Checker c(report);
  c.require(finite(m.access_probability) && m.access_probability > 0.0 && m.access_probability <= 1.0, "mac.p",
            "must lie in (0, 1]");
  c.require(m.max_subcarriers >= 1, "mac.s", "must be >= 1");
  c.require(m.contention_slots >= 1, "mac.k_c", "must be >= 1");
  c.require(m.frame_slots >= 1, "mac.k_f", "must be >= 1");
  c.require(m.contention_slots <= m.frame_slots, "mac.k_c", "must be <= k_f");
  return report;
}

ValidationReport validate(const DecodingConfig& d) {
  ValidationReport report;
  Checker c(report);
  c.require(finite(d.threshold) && d.threshold > 0.0, "decoding.zeta", "must be > 0");
  c.require(static_cast<bool>(d.spectral_gain), "decoding.chi", "spectral gain must be set");
  return report;
}

ValidationReport validate(const SensingErrors& e) {
  ValidationReport report;
  Checker c(report);
  c.require(finite(e.missed_detection) && e.missed_detection >= 0.0 && e.missed_detection < 1.0,
            "sensing.P_md", "must lie in [0, 1)");
  c.require(finite(e.false_alarm) && e.false_alarm >= 0.0 && e.false_alarm < 1.0, "sensing.P_fa",
            "must lie in [0, 1)");
  return report;
}

ValidationReport validate(const ParameterBundle& b) {
  ValidationReport report;
  merge(report, validate(b.topology));
  merge(report, validate(b.power));
  merge(report, validate(b.mac));
  merge(report, validate(b.decoding));
  merge(report, validate(b.sensing));
  return report;
}

const ParameterBundle& require_valid(const ParameterBundle& bundle) {
  auto report = validate(bundle);
  if (!report.ok()) throw ValidationError(std::move(report));
  return bundle;
}

}  // namespace xlayer
