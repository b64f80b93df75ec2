#include "experiments.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "xlayer/efficiency.hpp"
#include "xlayer/interference.hpp"
#include "xlayer/mac.hpp"
#include "xlayer/sensing.hpp"
#include "xlayer/sic.hpp"

namespace xlayer::cli {
namespace {

ParameterBundle valid_bundle(const Config& config) { return require_valid(config.bundle()); }

efficiency::EfficiencyOptions efficiency_options(const RunContext& ctx) {
  efficiency::EfficiencyOptions o;
  o.sic_mean_active = ctx.config.real("sic.mu");
  const auto& method = ctx.config.text("sic.method");
  o.method = method == "general" ? sic::Method::General
             : method == "closed-form" ? sic::Method::ClosedForm4
                                       : sic::Method::Auto;
  o.threads = ctx.threads;
  return o;
}

Table interference_cdf(const RunContext& ctx) {
  const auto bundle = valid_bundle(ctx.config);
  const double mu = ctx.config.real("interference.mu");
  interference::SimulationOptions o;
  o.trials = ctx.trials;
  o.seed = ctx.seed;
  o.threads = ctx.threads;
  const double pt = bundle.power.transmit_power;
  const auto matern = interference::simulate_interference_cdf(interference::Process::Matern, bundle.topology, pt, mu, o);
  const auto ppp = interference::simulate_interference_cdf(interference::Process::Ppp, bundle.topology, pt, mu, o);

  std::vector<double> pooled = matern.samples();
  pooled.insert(pooled.end(), ppp.samples().begin(), ppp.samples().end());
  const EmpiricalCdf both(std::move(pooled));

  Table t{{"I [W]", "cdf_matern [-]", "cdf_ppp [-]"}, {}};
  for (double q : sweep_grid(ctx.config)) {
    const double x = both.quantile(q);
    t.rows.push_back({x, matern(x), ppp(x)});
  }
  return t;
}

Table sensing_roc(const RunContext& ctx) {
  const auto bundle = valid_bundle(ctx.config);
  const auto& c = ctx.config;
  const double mu = c.real("interference.mu");
  sensing::SensingModel model;
  model.blocks = c.integer("detector.B");
  model.in_cluster_actives = c.integer("detector.l");
  model.noise_variance = c.real("detector.sigma_w2");
  model.interference_variance = interference::aggregate_variance(bundle.topology, bundle.power.transmit_power, mu);
  sensing::SignalGeometry geometry;
  geometry.cluster_radius = bundle.topology.cluster_radius;
  geometry.path_loss_exponent = bundle.topology.path_loss_exponent;
  geometry.transmit_power = bundle.power.transmit_power;
  const auto variant = c.text("detector.cf") == "as-printed" ? sensing::CfVariant::AsPrinted : sensing::CfVariant::Derived;

  const auto grid = sweep_grid(c);
  std::vector<double> thresholds;
  for (double f : grid) thresholds.push_back(f * model.idle_mean());
  const auto roc = sensing::roc_curve(model, thresholds, geometry, variant, ctx.threads);

  sensing::DetectorSimulation sim;
  sim.trials = ctx.trials;
  sim.seed = ctx.seed;
  sim.threads = ctx.threads;
  sim.interference = c.text("detector.interference") == "point-process" ? sensing::InterferenceMode::PointProcess
                                                                          : sensing::InterferenceMode::Gaussian;
  sim.ap_density = bundle.topology.ap_density;
  sim.mean_active = mu;
  sim.exclusion_distance = bundle.topology.exclusion_distance;
  const auto samples = sensing::simulate_energies(model, geometry, sim);

  Table t{{"rho [W]", "p_fa_analytic [-]", "p_md_analytic [-]", "p_fa_mc [-]", "p_md_mc [-]"}, {}};
  for (const auto& p : roc) {
    const auto e = sensing::empirical_errors(samples, p.threshold);
    t.rows.push_back({p.threshold, p.false_alarm, p.missed_detection, e.false_alarm, e.missed_detection});
  }
  return t;
}

Table mac_energy(const RunContext& ctx) {
  auto bundle = ctx.config.bundle();
  Table t{{"s [-]", "k_c [slots]", "E_t_analytic [J]", "E_t_mc [J]"}, {}};
  for (int s : ctx.config.integers("sweep.s")) {
    for (int kc : ctx.config.integers("sweep.k_c")) {
      bundle.mac.max_subcarriers = s;
      bundle.mac.contention_slots = kc;
      require_valid(bundle);
      const int M = bundle.topology.mean_nodes, N = bundle.topology.subcarriers;
      const double analytic = mac::mac_energy(bundle.power, bundle.mac, M, N, bundle.sensing).transmission;
      mac::MacSimulation sim;
      sim.frames = ctx.trials;
      sim.seed = ctx.seed;
      sim.threads = ctx.threads;
      const auto mc = mac::simulate_mac(bundle.mac, M, N, bundle.sensing, bundle.power, sim);
      t.rows.push_back({static_cast<double>(s), static_cast<double>(kc), analytic, mc.energy.transmission});
    }
  }
  return t;
}

Table mac_sensing_energy(const RunContext& ctx) {
  auto bundle = ctx.config.bundle();
  Table t{{"M [-]", "T_s [s]", "E_s [J]", "E_t [J]", "E_s_over_E_t [-]"}, {}};
  for (int m : ctx.config.integers("sweep.M")) {
    for (double ts : sweep_grid(ctx.config)) {
      bundle.topology.mean_nodes = m;
      bundle.power.sensing_time = ts;
      require_valid(bundle);
      const auto e = mac::mac_energy(bundle.power, bundle.mac, m, bundle.topology.subcarriers, bundle.sensing);
      t.rows.push_back({static_cast<double>(m), ts, e.sensing, e.transmission, e.sensing / e.transmission});
    }
  }
  return t;
}

Table sic_decode(const RunContext& ctx) {
  auto bundle = valid_bundle(ctx.config);
  const auto options = efficiency_options(ctx);
  const int l = ctx.config.integer("sic.l");
  sic::SicSimulation sim;
  sim.trials = ctx.trials;
  sim.seed = ctx.seed;
  sim.threads = ctx.threads;
  sim.ordering = ctx.config.text("sic.ordering") == "distance" ? sic::Ordering::Distance : sic::Ordering::Power;

  Table t{{"zeta [dB]", "n [-]", "p_dec_analytic [-]", "p_dec_mc [-]", "p_pass_mc [-]"}, {}};
  for (double zdb : sweep_grid(ctx.config)) {
    bundle.decoding.threshold = db_to_linear(zdb);
    const auto scenario = efficiency::sic_scenario(bundle, l, options);
    const auto mc = sic::simulate_sic(scenario, sim);
    for (int n = 1; n <= l; ++n)
      t.rows.push_back({zdb, static_cast<double>(n), sic::p_dec(n, scenario, options.method),
                        mc.conditional_success[n - 1], mc.genie_success[n - 1]});
  }
  return t;
}

Table efficiency_vs_threshold(const RunContext& ctx) {
  auto bundle = valid_bundle(ctx.config);
  const auto options = efficiency_options(ctx);
  efficiency::DecodeFamilyCache cache;
  efficiency::ComposedSimulation sim;
  sim.frames = ctx.trials;
  sim.seed = ctx.seed;
  sim.threads = ctx.threads;
  sim.ordering = ctx.config.text("sic.ordering") == "distance" ? sic::Ordering::Distance : sic::Ordering::Power;

  Table t{{"zeta [dB]", "eta_hybrid [bit/J]", "eta_distributed [bit/J]", "eta_centralized [bit/J]",
           "eta_hybrid_mc [bit/J]", "eta_distributed_mc [bit/J]"},
          {}};
  for (double zdb : sweep_grid(ctx.config)) {
    bundle.decoding.threshold = db_to_linear(zdb);
    const auto c = efficiency::evaluate_schemes(bundle, options, &cache);
    double hybrid_mc = std::numeric_limits<double>::quiet_NaN();
    double distributed_mc = hybrid_mc;
    if (sim.frames > 0) {
      const auto mc = efficiency::simulate_composed(bundle, sim, options);
      hybrid_mc = mc.hybrid.efficiency;
      distributed_mc = mc.distributed.efficiency;
    }
    t.rows.push_back({zdb, c.hybrid.efficiency, c.distributed.efficiency, c.centralized.efficiency, hybrid_mc,
                      distributed_mc});
  }
  return t;
}

Table scheme_tradeoff(const RunContext& ctx) {
  const auto bundle = valid_bundle(ctx.config);
  const auto& name = ctx.config.text("sweep.variable");
  auto grid = sweep_grid(ctx.config);
  std::vector<double> values = grid;
  efficiency::SweepVariable variable = efficiency::SweepVariable::DecodingPower;
  std::string column = "P_d [W]";
  if (name == "P_c") {
    variable = efficiency::SweepVariable::ControlPower;
    column = "P_c [W]";
  } else if (name == "p") {
    variable = efficiency::SweepVariable::AccessProbability;
    column = "p [-]";
  } else if (name == "k_c") {
    variable = efficiency::SweepVariable::ContentionSlots;
    column = "k_c [slots]";
    for (auto& v : grid) v = std::nearbyint(v);
    values = grid;
  } else if (name == "zeta_db") {
    variable = efficiency::SweepVariable::Threshold;
    column = "zeta [dB]";
    for (auto& v : values) v = db_to_linear(v);
  }
  const auto rows = efficiency::compare_schemes(bundle, variable, values, efficiency_options(ctx));
  Table t{{column, "eta_hybrid [bit/J]", "eta_centralized [bit/J]", "eta_distributed [bit/J]"}, {}};
  for (std::size_t i = 0; i < rows.size(); ++i)
    t.rows.push_back({grid[i], rows[i].hybrid.efficiency, rows[i].centralized.efficiency,
                      rows[i].distributed.efficiency});
  return t;
}

}  // namespace

void write_csv(std::ostream& out, const std::string& metadata, const Table& table) {
  out << "# " << metadata << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  char buffer[32];
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buffer, sizeof buffer, "%.12g", row[i]);
      out << (i ? "," : "") << buffer;
    }
    out << '\n';
  }
}

std::vector<double> sweep_grid(const Config& config) {
  const double lo = config.real("sweep.lo");
  const double hi = config.real("sweep.hi");
  const int points = config.integer("sweep.points");
  const bool log = config.text("sweep.spacing") == "log";
  if (points < 1) throw ConfigError("sweep.points must be at least 1");
  if (hi < lo) throw ConfigError("sweep.hi must not be below sweep.lo");
  if (log && !(lo > 0.0)) throw ConfigError("a log sweep needs sweep.lo > 0");
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) {
    const double f = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    grid[i] = log ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
  }
  return grid;
}

const std::vector<Experiment>& experiments() {
  static const std::vector<Experiment> registry = {
      {"interference-cdf",
       "Matern and PPP interference-power CDFs at the pooled quantile levels sweep.lo..sweep.hi",
       10'000,
       {{"sweep.lo", "0.005"}, {"sweep.hi", "0.995"}, {"sweep.points", "100"}},
       interference_cdf},
      {"sensing-roc",
       "analytic and sample-level ROC; the sweep is the threshold over its idle mean",
       10'000,
       {{"sweep.lo", "0.9"}, {"sweep.hi", "1.2"}, {"sweep.points", "20"}},
       sensing_roc},
      {"mac-energy", "transmission energy over sweep.s x sweep.k_c, analytic and slot-level simulation", 10'000, {},
       mac_energy},
      {"mac-sensing-energy",
       "sensing and transmission energy versus the sensing time T_s",
       0,
       {{"sweep.lo", "0.02"}, {"sweep.hi", "0.5"}, {"sweep.points", "25"}},
       mac_sensing_energy},
      {"sic-decode",
       "per-rank decoding probability versus the threshold in dB, analytic and simulated",
       100'000,
       {{"sweep.lo", "-10"}, {"sweep.hi", "20"}, {"sweep.points", "13"}},
       sic_decode},
      {"efficiency-vs-threshold",
       "energy efficiency of the three schemes versus the threshold in dB; trials are simulated frames",
       2'000,
       {{"sweep.lo", "-10"}, {"sweep.hi", "30"}, {"sweep.points", "41"}},
       efficiency_vs_threshold},
      {"scheme-tradeoff",
       "energy efficiency of the three schemes versus sweep.variable",
       0,
       {{"sweep.variable", "P_d"}, {"sweep.lo", "0.001"}, {"sweep.hi", "1"}, {"sweep.points", "13"},
        {"sweep.spacing", "log"}},
       scheme_tradeoff},
  };
  return registry;
}

const Experiment* find_experiment(const std::string& name) {
  for (const auto& e : experiments())
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace xlayer::cli
