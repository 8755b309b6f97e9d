#include "pspin/cli.hpp"

#include "pspin/bell.hpp"
#include "pspin/fock.hpp"
#include "pspin/lhv.hpp"
#include "pspin/optimize.hpp"
#include "pspin/pseudospin.hpp"
#include "pspin/report.hpp"
#include "pspin/rng.hpp"
#include "pspin/states.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace pspin::cli {

namespace {

struct CommonOpts {
  std::string format; // json | csv | text; default set per subcommand
  std::string out_path;
};

void add_common(CLI::App *sub, CommonOpts &c, const std::string &default_fmt) {
  c.format = default_fmt;
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  sub->add_option("--out", c.out_path, "Write output to a file instead of stdout");
  sub->set_config("--config", "",
                  "Read options from a key=value file; flags take precedence");
}

void emit(const CommonOpts &c, const std::string &payload) {
  if (c.out_path.empty()) {
    std::cout << payload;
    std::cout.flush();
  } else {
    std::ofstream f(c.out_path, std::ios::binary);
    if (!f) {
      throw std::runtime_error("cannot open output file: " + c.out_path);
    }
    f << payload;
  }
}

void emit_json_or_text(const CommonOpts &c, const JsonWriter &w) {
  if (c.format == "csv") {
    throw std::invalid_argument("this subcommand has no CSV representation");
  }
  emit(c, c.format == "text" ? w.text() : w.str());
}

int check_even_dim(std::int64_t dim) {
  if (dim < 2 || dim % 2 != 0 || dim > kMaxStateSize) {
    throw std::invalid_argument("--dim must be an even integer >= 2");
  }
  return static_cast<int>(dim);
}

ParityProfile parse_profile(const std::string &spec, int dim) {
  if (spec == "fock0") {
    return ParityProfile::fock0();
  }
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  if (head == "geometric" && colon != std::string::npos) {
    const double q = std::stod(spec.substr(colon + 1));
    return ParityProfile::geometric(q, dim / 2);
  }
  if (head == "uniform" && colon != std::string::npos) {
    const int m = std::stoi(spec.substr(colon + 1));
    return ParityProfile::uniform(m);
  }
  throw std::invalid_argument(
      "--profile must be fock0, geometric:<q>, or uniform:<M>");
}

PlaneConstraint parse_plane(const std::string &s) {
  if (s == "xy") {
    return PlaneConstraint::XY;
  }
  if (s == "xz") {
    return PlaneConstraint::XZ;
  }
  if (s == "none") {
    return PlaneConstraint::None;
  }
  throw std::invalid_argument("--plane must be xy, xz, or none");
}

MeasurementSettings load_settings_file(const std::string &path, int n_modes) {
  std::ifstream f(path);
  if (!f) {
    throw std::invalid_argument("cannot open settings file: " + path);
  }
  nlohmann::json j;
  f >> j;
  if (!j.is_array() || j.size() != static_cast<std::size_t>(2 * n_modes)) {
    throw std::invalid_argument(
        "settings file must hold a JSON array of 2N unit vectors");
  }
  std::vector<UnitVector3> vecs;
  for (const auto &row : j) {
    if (!row.is_array() || row.size() != 3) {
      throw std::invalid_argument("each settings entry must be [x, y, z]");
    }
    const double x = row[0].get<double>();
    const double y = row[1].get<double>();
    const double z = row[2].get<double>();
    const double norm = std::sqrt(x * x + y * y + z * z);
    if (std::abs(norm - 1.0) > 1e-9) {
      throw std::invalid_argument("settings vectors must be unit length");
    }
    vecs.push_back(UnitVector3::normalized(x, y, z));
  }
  MeasurementSettings s;
  for (int m = 0; m < n_modes; ++m) {
    s.pairs.emplace_back(vecs[static_cast<std::size_t>(2 * m)],
                         vecs[static_cast<std::size_t>(2 * m + 1)]);
  }
  return s;
}

std::vector<std::vector<double>> settings_rows(const MeasurementSettings &s) {
  std::vector<std::vector<double>> rows;
  rows.reserve(2 * s.pairs.size());
  for (const auto &[a, ap] : s.pairs) {
    rows.push_back({a.x, a.y, a.z});
    rows.push_back({ap.x, ap.y, ap.z});
  }
  return rows;
}

MeasurementSettings random_settings(int n_modes, Rng &rng) {
  MeasurementSettings s;
  for (int m = 0; m < n_modes; ++m) {
    const UnitVector3 a =
        UnitVector3::normalized(rng.normal(), rng.normal(), rng.normal());
    const UnitVector3 ap =
        UnitVector3::normalized(rng.normal(), rng.normal(), rng.normal());
    s.pairs.emplace_back(a, ap);
  }
  return s;
}

// ---------------------------------------------------------------------------

struct AlgebraOpts {
  std::int64_t dim = 16;
  std::uint64_t seed = 0;
  CommonOpts common;
};

bool run_algebra_check(const AlgebraOpts &o) {
  const int dim = check_even_dim(o.dim);
  const PseudospinSet s = build_pseudospin(dim);
  const SparseOperator id = SparseOperator::identity(dim);
  const cplx two{2.0, 0.0};
  double res = 0.0;
  const auto track = [&](const SparseOperator &diff) {
    res = std::max(res, diff.max_abs_entry());
  };
  // commutation relations
  track(s.sz * s.s_plus - s.s_plus * s.sz - two * s.s_plus);
  track(s.sz * s.s_minus - s.s_minus * s.sz + two * s.s_minus);
  track(s.s_plus * s.s_minus - s.s_minus * s.s_plus - s.sz);
  // composition of the Cartesian components
  track(s.sx - (s.s_plus + s.s_minus));
  track(s.sy - cplx{0.0, -1.0} * (s.s_plus - s.s_minus));
  track(s.s_minus - s.s_plus.adjoint());
  // anticommutators
  const SparseOperator *xyz[3] = {&s.sx, &s.sy, &s.sz};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      SparseOperator anti = *xyz[a] * *xyz[b] + *xyz[b] * *xyz[a];
      track(a == b ? anti - two * id : anti);
    }
  }
  // (a.s)^2 = I and rotation inverses for seeded directions
  Rng rng(o.seed);
  for (int t = 0; t < 12; ++t) {
    const UnitVector3 a =
        UnitVector3::normalized(rng.normal(), rng.normal(), rng.normal());
    const SparseOperator das = dot_spin(a, s);
    track(das * das - id);
    const double zeta = rng.uniform(-6.0, 6.0);
    track(rotation({zeta, a}, s) * rotation({-zeta, a}, s) - id);
  }
  const bool pass = res < 1e-12;
  JsonWriter w;
  w.field("dim", dim);
  w.field("seed", static_cast<std::int64_t>(o.seed));
  w.field("max_residual", res);
  w.field("pass", pass);
  emit_json_or_text(o.common, w);
  return pass;
}

struct GhzEigenOpts {
  std::int64_t modes = 3;
  std::int64_t dim = 8;
  std::string profile = "fock0";
  CommonOpts common;
};

bool run_ghz_eigen(const GhzEigenOpts &o) {
  if (o.modes != 3) {
    throw std::invalid_argument("ghz-eigen is defined for --modes 3");
  }
  const int dim = check_even_dim(o.dim);
  GhzSpec spec{3, dim, {parse_profile(o.profile, dim)}};
  const GhzEigenResiduals r = ghz_eigen_check(ghz_state(spec));
  const bool pass = r.max_residual() < 1e-10;
  JsonWriter w;
  w.field("modes", 3);
  w.field("dim", dim);
  w.field("profile", o.profile);
  w.field("residual_xxx", r.xxx);
  w.field("residual_xyy", r.xyy);
  w.field("residual_yxy", r.yxy);
  w.field("residual_yyx", r.yyx);
  w.field("max_residual", r.max_residual());
  w.field("pass", pass);
  emit_json_or_text(o.common, w);
  return pass;
}

struct ParadoxOpts {
  std::int64_t modes = 3;
  CommonOpts common;
};

bool run_paradox(const ParadoxOpts &o) {
  if (o.modes != 3) {
    throw std::invalid_argument(
        "the GHZ constraint system is stated for --modes 3");
  }
  const GhzParadoxResult full = ghz_constraints_satisfiable();
  std::vector<int> drop_counts;
  bool drops_ok = true;
  for (int drop = 0; drop < 4; ++drop) {
    std::array<bool, 4> active{true, true, true, true};
    active[static_cast<std::size_t>(drop)] = false;
    const GhzParadoxResult partial = ghz_constraints_count({-1, 1, 1, 1}, active);
    drop_counts.push_back(partial.satisfying_count);
    drops_ok = drops_ok && partial.satisfiable;
  }
  const bool pass = !full.satisfiable && drops_ok;
  JsonWriter w;
  w.field("modes", 3);
  w.field("satisfiable", full.satisfiable);
  w.field("assignments_checked", full.assignments_checked);
  w.field("satisfying_count", full.satisfying_count);
  w.field_array("drop_one_counts", drop_counts);
  w.field("pass", pass);
  emit_json_or_text(o.common, w);
  return pass;
}

struct MerminGapOpts {
  std::int64_t modes = 3;
  std::int64_t dim = 4;
  std::string profile = "fock0";
  CommonOpts common;
};

bool run_mermin_gap(const MerminGapOpts &o) {
  const int n = static_cast<int>(o.modes);
  const int dim = check_even_dim(o.dim);
  const MerminLhvResult lhv = lhv_max_mermin(n);
  const GapReport gap = quantum_vs_lhv_gap(n);

  bool operator_checked = false;
  double eigen_residual = 0.0;
  double mermin_expectation = 0.0;
  double total = 1.0;
  for (int m = 0; m < n && total <= static_cast<double>(kMaxStateSize); ++m) {
    total *= dim;
  }
  if (total <= static_cast<double>(kMaxStateSize)) {
    GhzSpec spec{n, dim, {parse_profile(o.profile, dim)}};
    const StateVector g = ghz_state(spec);
    const SparseOperator a = mermin_operator(n, dim);
    eigen_residual =
        distance(apply(a, g), cplx{-std::pow(2.0, n - 1), 0.0} * g);
    mermin_expectation = expectation(a, g);
    operator_checked = true;
  }

  const bool pass = lhv.max_value <= lhv.paper_bound + 1e-12 &&
                    (!operator_checked || eigen_residual < 1e-10);
  JsonWriter w;
  w.field("modes", n);
  w.field("quantum", gap.quantum);
  w.field("lhv_max", lhv.max_value);
  w.field("paper_lhv_bound", lhv.paper_bound);
  w.field("ratio", gap.ratio);
  w.field("bound_gap_factor", std::pow(2.0, n / 2.0 - 1.0));
  w.field_array("witness_px", lhv.argmax.p_x);
  w.field_array("witness_py", lhv.argmax.p_y);
  w.field("operator_checked", operator_checked);
  if (operator_checked) {
    w.field("dim", dim);
    w.field("eigen_residual", eigen_residual);
    w.field("mermin_expectation", mermin_expectation);
  }
  w.field("pass", pass);
  emit_json_or_text(o.common, w);
  return pass;
}

struct ChshOpts {
  std::string state;
  std::int64_t modes = 2;
  std::int64_t dim = 0; // 0 = default per state (16 ghz, 32 nopa)
  double r = 1.0;
  std::string profile = "fock0";
  bool optimize = false;
  std::string settings_file;
  std::string plane = "none";
  std::int64_t restarts = 16;
  std::int64_t max_iters = 2000;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  CommonOpts common;
};

bool run_chsh(const ChshOpts &o) {
  const int n = static_cast<int>(o.modes);
  const int dim = check_even_dim(o.dim != 0 ? o.dim
                                            : (o.state == "nopa" ? 32 : 16));
  if (o.optimize == !o.settings_file.empty()) {
    throw std::invalid_argument(
        "chsh needs exactly one of --optimize or --settings-file");
  }

  std::optional<StateVector> state;
  double deficit = 0.0;
  if (o.state == "ghz") {
    state = ghz_state(GhzSpec{n, dim, {parse_profile(o.profile, dim)}});
  } else if (o.state == "nopa") {
    if (n != 2) {
      throw std::invalid_argument("the NOPA state has exactly two modes");
    }
    NopaResult nopa = nopa_state({o.r}, dim);
    deficit = nopa.deficit;
    state = std::move(nopa.state);
  } else {
    throw std::invalid_argument("--state must be ghz or nopa");
  }

  BellReport report;
  if (o.optimize) {
    OptimizerConfig cfg;
    cfg.restarts = static_cast<int>(o.restarts);
    cfg.max_iters = static_cast<int>(o.max_iters);
    cfg.tol = o.tol;
    cfg.seed = o.seed;
    cfg.plane = parse_plane(o.plane);
    report = optimize_settings(*state, cfg);
  } else {
    const MeasurementSettings s = load_settings_file(o.settings_file, n);
    report =
        BellReport::make(n, expectation(bell_operator(s, dim), *state), s);
  }

  const bool pass =
      report.abs_value <= report.quantum_bound * (1.0 + 1e-9);
  JsonWriter w;
  w.field("state", o.state);
  w.field("modes", n);
  w.field("dim", dim);
  if (o.state == "nopa") {
    w.field("r", o.r);
    w.field("truncation_deficit", deficit);
    w.field("closed_form", nopa_chsh_closed_form(o.r));
    w.field("abs_error", std::abs(report.abs_value - nopa_chsh_closed_form(o.r)));
  } else {
    w.field("profile", o.profile);
  }
  w.field("optimized", o.optimize);
  if (o.optimize) {
    w.field("restarts", static_cast<int>(o.restarts));
    w.field("seed", static_cast<std::int64_t>(o.seed));
    w.field("plane", o.plane);
  }
  w.field("value", report.value);
  w.field("abs_value", report.abs_value);
  w.field("local_bound", report.local_bound);
  w.field("quantum_bound", report.quantum_bound);
  w.field("violation_factor", report.violation_factor);
  w.field_vector_list("settings", settings_rows(report.settings));
  w.field("pass", pass);
  emit_json_or_text(o.common, w);
  return pass;
}

struct SweepOpts {
  std::string state;
  double r_min = 0.1;
  double r_max = 1.2;
  std::int64_t steps = 12;
  std::int64_t dim = 32;
  std::string plane = "xz";
  std::int64_t restarts = 16;
  std::int64_t max_iters = 2000;
  double tol = 1e-4; // pass threshold on |value - closed form|
  std::uint64_t seed = 0;
  CommonOpts common;
};

bool run_sweep(const SweepOpts &o) {
  if (o.state != "nopa") {
    throw std::invalid_argument("sweep supports --state nopa");
  }
  const int dim = check_even_dim(o.dim);
  if (o.steps < 1) {
    throw std::invalid_argument("--steps must be at least 1");
  }
  if (!(o.r_min > 0.0) || o.r_max < o.r_min) {
    throw std::invalid_argument("need 0 < r-min <= r-max");
  }
  OptimizerConfig cfg;
  cfg.restarts = static_cast<int>(o.restarts);
  cfg.max_iters = static_cast<int>(o.max_iters);
  cfg.seed = o.seed;
  cfg.plane = parse_plane(o.plane);

  std::vector<double> rs, values, closed, errors, deficits;
  bool pass = true;
  for (std::int64_t k = 0; k < o.steps; ++k) {
    const double r =
        o.steps == 1 ? o.r_min
                     : o.r_min + (o.r_max - o.r_min) * static_cast<double>(k) /
                           static_cast<double>(o.steps - 1);
    const NopaResult nopa = nopa_state({r}, dim);
    const BellReport report = optimize_settings(nopa.state, cfg);
    const double cf = nopa_chsh_closed_form(r);
    const double err = std::abs(report.abs_value - cf);
    rs.push_back(r);
    values.push_back(report.abs_value);
    closed.push_back(cf);
    errors.push_back(err);
    deficits.push_back(nopa.deficit);
    pass = pass && err <= o.tol;
  }

  if (o.common.format == "json" || o.common.format == "text") {
    JsonWriter w;
    w.field("state", o.state);
    w.field("dim", dim);
    w.field("steps", static_cast<std::int64_t>(o.steps));
    w.field("seed", static_cast<std::int64_t>(o.seed));
    w.field_array("r", rs);
    w.field_array("chsh_value", values);
    w.field_array("closed_form", closed);
    w.field_array("abs_error", errors);
    w.field_array("truncation_deficit", deficits);
    w.field("pass", pass);
    emit_json_or_text(o.common, w);
  } else {
    CsvWriter csv({"r", "chsh_value", "closed_form", "abs_error",
                   "truncation_deficit"});
    for (std::size_t i = 0; i < rs.size(); ++i) {
      csv.row(std::vector<double>{rs[i], values[i], closed[i], errors[i],
                                  deficits[i]});
    }
    emit(o.common, csv.str());
  }
  return pass;
}

struct SpectralOpts {
  std::int64_t modes = 3;
  std::int64_t dim = 4;
  std::int64_t trials = 50;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  CommonOpts common;
};

bool run_spectral(const SpectralOpts &o) {
  const int n = static_cast<int>(o.modes);
  const int dim = check_even_dim(o.dim);
  if (n < 2 || o.trials < 1) {
    throw std::invalid_argument("spectral needs --modes >= 2, --trials >= 1");
  }
  Rng rng(o.seed);
  double worst = 0.0;
  bool all_converged = true;
  for (std::int64_t t = 0; t < o.trials; ++t) {
    const MeasurementSettings s = random_settings(n, rng);
    const SpectralResult r = spectral_radius(bell_operator(s, dim), o.tol);
    worst = std::max(worst, r.value);
    all_converged = all_converged && r.converged;
  }
  const double bound = std::pow(2.0, (n + 1) / 2.0);
  const bool pass = all_converged && worst <= bound * (1.0 + 1e-9);
  JsonWriter w;
  w.field("modes", n);
  w.field("dim", dim);
  w.field("trials", static_cast<std::int64_t>(o.trials));
  w.field("seed", static_cast<std::int64_t>(o.seed));
  w.field("max_spectral_radius", worst);
  w.field("quantum_bound", bound);
  w.field("all_converged", all_converged);
  w.field("pass", pass);
  emit_json_or_text(o.common, w);
  return pass;
}

struct SquareIdentityOpts {
  std::int64_t modes = 3;
  std::int64_t dim = 4;
  std::int64_t trials = 20;
  std::uint64_t seed = 0;
  CommonOpts common;
};

bool run_square_identity(const SquareIdentityOpts &o) {
  const int n = static_cast<int>(o.modes);
  const int dim = check_even_dim(o.dim);
  if (n < 3 || o.trials < 1) {
    throw std::invalid_argument(
        "square-identity needs --modes >= 3, --trials >= 1");
  }
  Rng rng(o.seed);
  double worst = 0.0;
  for (std::int64_t t = 0; t < o.trials; ++t) {
    worst = std::max(
        worst, bell_square_identity_check(random_settings(n, rng), dim));
  }
  const bool pass = worst < 1e-10;
  JsonWriter w;
  w.field("modes", n);
  w.field("dim", dim);
  w.field("trials", static_cast<std::int64_t>(o.trials));
  w.field("seed", static_cast<std::int64_t>(o.seed));
  w.field("max_residual", worst);
  w.field("pass", pass);
  emit_json_or_text(o.common, w);
  return pass;
}

} // namespace

int run(int argc, const char *const *argv) {
  CLI::App app{"Truncated-Fock-space pseudospin nonlocality simulator"};
  app.require_subcommand(1);

  AlgebraOpts algebra;
  CLI::App *sub_algebra = app.add_subcommand(
      "algebra-check", "Verify the pseudospin operator algebra at even D");
  sub_algebra->add_option("--dim", algebra.dim, "Per-mode truncation (even)");
  sub_algebra->add_option("--seed", algebra.seed, "Seed for random directions");
  add_common(sub_algebra, algebra.common, "json");

  GhzEigenOpts ghz_eigen;
  CLI::App *sub_ghz = app.add_subcommand(
      "ghz-eigen", "Residuals of the four three-mode GHZ eigenvalue equations");
  sub_ghz->add_option("--modes", ghz_eigen.modes, "Number of modes (must be 3)");
  sub_ghz->add_option("--dim", ghz_eigen.dim, "Per-mode truncation (even)");
  sub_ghz->add_option("--profile", ghz_eigen.profile,
                      "fock0 | geometric:<q> | uniform:<M>");
  add_common(sub_ghz, ghz_eigen.common, "json");

  ParadoxOpts paradox;
  CLI::App *sub_paradox = app.add_subcommand(
      "paradox", "Exhaustive LHV check of the GHZ constraint system");
  sub_paradox->add_option("--modes", paradox.modes, "Number of modes (must be 3)");
  add_common(sub_paradox, paradox.common, "json");

  MerminGapOpts mermin;
  CLI::App *sub_mermin = app.add_subcommand(
      "mermin-gap", "Quantum vs LHV bound for the Mermin quantity");
  sub_mermin->add_option("--modes", mermin.modes, "Number of modes (2..14)");
  sub_mermin->add_option("--dim", mermin.dim,
                         "Truncation for the operator verification");
  sub_mermin->add_option("--profile", mermin.profile,
                         "fock0 | geometric:<q> | uniform:<M>");
  add_common(sub_mermin, mermin.common, "json");

  ChshOpts chsh;
  CLI::App *sub_chsh = app.add_subcommand(
      "chsh", "Bell-CHSH expectation at optimized or supplied settings");
  sub_chsh->add_option("--state", chsh.state, "ghz | nopa")->required();
  sub_chsh->add_option("--modes", chsh.modes, "Number of modes");
  sub_chsh->add_option("--dim", chsh.dim,
                       "Per-mode truncation (default 16 ghz / 32 nopa)");
  sub_chsh->add_option("--r", chsh.r, "Squeezing parameter (nopa)");
  sub_chsh->add_option("--profile", chsh.profile,
                       "fock0 | geometric:<q> | uniform:<M>");
  sub_chsh->add_flag("--optimize", chsh.optimize,
                     "Maximize |<B_N>| over settings");
  sub_chsh->add_option("--settings-file", chsh.settings_file,
                       "JSON file with 2N unit vectors a_1 a_1' a_2 a_2' ...");
  sub_chsh->add_option("--plane", chsh.plane,
                       "Optimizer constraint: xy | xz | none");
  sub_chsh->add_option("--restarts", chsh.restarts, "Optimizer restarts");
  sub_chsh->add_option("--max-iters", chsh.max_iters,
                       "Simplex iterations per restart");
  sub_chsh->add_option("--tol", chsh.tol, "Optimizer convergence tolerance");
  sub_chsh->add_option("--seed", chsh.seed, "Optimizer seed");
  add_common(sub_chsh, chsh.common, "json");

  SweepOpts sweep;
  CLI::App *sub_sweep = app.add_subcommand(
      "sweep", "CHSH violation versus squeezing for the NOPA state");
  sub_sweep->add_option("--state", sweep.state, "nopa")->required();
  sub_sweep->add_option("--r-min", sweep.r_min, "Smallest squeezing")->required();
  sub_sweep->add_option("--r-max", sweep.r_max, "Largest squeezing")->required();
  sub_sweep->add_option("--steps", sweep.steps, "Number of sweep points")
      ->required();
  sub_sweep->add_option("--dim", sweep.dim, "Per-mode truncation");
  sub_sweep->add_option("--plane", sweep.plane, "Optimizer constraint plane");
  sub_sweep->add_option("--restarts", sweep.restarts, "Optimizer restarts");
  sub_sweep->add_option("--max-iters", sweep.max_iters,
                        "Simplex iterations per restart");
  sub_sweep->add_option("--tol", sweep.tol,
                        "Pass threshold on |value - closed form|");
  sub_sweep->add_option("--seed", sweep.seed, "Optimizer seed");
  add_common(sub_sweep, sweep.common, "csv");

  SpectralOpts spectral;
  CLI::App *sub_spectral = app.add_subcommand(
      "spectral", "Spectral radius of B_N over random settings");
  sub_spectral->add_option("--modes", spectral.modes, "Number of modes");
  sub_spectral->add_option("--dim", spectral.dim, "Per-mode truncation");
  sub_spectral->add_option("--trials", spectral.trials, "Random settings");
  sub_spectral->add_option("--seed", spectral.seed, "Seed");
  sub_spectral->add_option("--tol", spectral.tol,
                           "Power iteration convergence tolerance");
  add_common(sub_spectral, spectral.common, "json");

  SquareIdentityOpts square;
  CLI::App *sub_square = app.add_subcommand(
      "square-identity", "Frobenius residual of the B_N^2 decomposition");
  sub_square->add_option("--modes", square.modes, "Number of modes (>= 3)");
  sub_square->add_option("--dim", square.dim, "Per-mode truncation");
  sub_square->add_option("--trials", square.trials, "Random settings");
  sub_square->add_option("--seed", square.seed, "Seed");
  add_common(sub_square, square.common, "json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError &e) {
    std::cerr << e.what() << "\n";
    std::cerr << app.help() << "\n";
    return 2;
  }

  try {
    bool pass = false;
    if (sub_algebra->parsed()) {
      pass = run_algebra_check(algebra);
    } else if (sub_ghz->parsed()) {
      pass = run_ghz_eigen(ghz_eigen);
    } else if (sub_paradox->parsed()) {
      pass = run_paradox(paradox);
    } else if (sub_mermin->parsed()) {
      pass = run_mermin_gap(mermin);
    } else if (sub_chsh->parsed()) {
      pass = run_chsh(chsh);
    } else if (sub_sweep->parsed()) {
      pass = run_sweep(sweep);
    } else if (sub_spectral->parsed()) {
      pass = run_spectral(spectral);
    } else if (sub_square->parsed()) {
      pass = run_square_identity(square);
    }
    return pass ? 0 : 1;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace pspin::cli
