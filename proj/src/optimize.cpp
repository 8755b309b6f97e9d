#include "pspin/optimize.hpp"

#include "pspin/kernels.hpp"
#include "pspin/pseudospin.hpp"
#include "pspin/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pspin {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int angles_per_vector(PlaneConstraint plane) {
  return plane == PlaneConstraint::None ? 2 : 1;
}

UnitVector3 vector_from_params(PlaneConstraint plane,
                               std::span<const double> p) {
  if (plane == PlaneConstraint::None) {
    return vector_from_angles(p[0], p[1]);
  }
  return planar_vector(plane, p[0]);
}

MeasurementSettings settings_from_params(int n_modes, PlaneConstraint plane,
                                         std::span<const double> params) {
  const int apv = angles_per_vector(plane);
  MeasurementSettings s;
  s.pairs.reserve(static_cast<std::size_t>(n_modes));
  for (int m = 0; m < n_modes; ++m) {
    const auto base = static_cast<std::size_t>(2 * m * apv);
    s.pairs.emplace_back(
        vector_from_params(plane, params.subspan(base, static_cast<std::size_t>(apv))),
        vector_from_params(plane,
                           params.subspan(base + static_cast<std::size_t>(apv),
                                          static_cast<std::size_t>(apv))));
  }
  return s;
}

struct NmResult {
  std::vector<double> x;
  double f = 0.0;
};

/// Standard Nelder-Mead (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2), deterministic ordering, minimization.
NmResult nelder_mead(const std::function<double(std::span<const double>)> &f,
                     std::vector<double> x0, double init_step, double tol,
                     int max_iters) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> xs(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i + 1][i] += init_step;
  }
  std::vector<double> fs(n + 1);
  std::vector<std::size_t> order(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    fs[i] = f(xs[i]);
    order[i] = i;
  }
  const auto sort_order = [&] {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return fs[a] < fs[b];
    });
  };
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  for (int it = 0; it < max_iters; ++it) {
    sort_order();
    const std::size_t best = order[0], worst = order[n];
    const std::size_t second_worst = order[n - 1];
    if (fs[worst] - fs[best] < tol) {
      break;
    }
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) {
        continue;
      }
      for (std::size_t d = 0; d < n; ++d) {
        centroid[d] += xs[i][d];
      }
    }
    for (double &c : centroid) {
      c /= static_cast<double>(n);
    }
    for (std::size_t d = 0; d < n; ++d) {
      xr[d] = centroid[d] + (centroid[d] - xs[worst][d]);
    }
    const double fr = f(xr);
    if (fr < fs[best]) {
      for (std::size_t d = 0; d < n; ++d) {
        xe[d] = centroid[d] + 2.0 * (centroid[d] - xs[worst][d]);
      }
      const double fe = f(xe);
      if (fe < fr) {
        xs[worst] = xe;
        fs[worst] = fe;
      } else {
        xs[worst] = xr;
        fs[worst] = fr;
      }
    } else if (fr < fs[second_worst]) {
      xs[worst] = xr;
      fs[worst] = fr;
    } else {
      const bool outside = fr < fs[worst];
      const std::vector<double> &ref = outside ? xr : xs[worst];
      for (std::size_t d = 0; d < n; ++d) {
        xc[d] = centroid[d] + 0.5 * (ref[d] - centroid[d]);
      }
      const double fc = f(xc);
      if (fc < (outside ? fr : fs[worst])) {
        xs[worst] = xc;
        fs[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) {
            continue;
          }
          for (std::size_t d = 0; d < n; ++d) {
            xs[i][d] = xs[best][d] + 0.5 * (xs[i][d] - xs[best][d]);
          }
          fs[i] = f(xs[i]);
        }
      }
    }
  }
  sort_order();
  return {xs[order[0]], fs[order[0]]};
}

} // namespace

UnitVector3 vector_from_angles(double theta, double phi) {
  const double st = std::sin(theta);
  return UnitVector3::normalized(st * std::cos(phi), st * std::sin(phi),
                                 std::cos(theta));
}

std::pair<double, double> angles_from_vector(const UnitVector3 &v) {
  const double theta = std::acos(std::clamp(v.z, -1.0, 1.0));
  double phi = std::atan2(v.y, v.x);
  if (phi < 0.0) {
    phi += kTwoPi;
  }
  return {theta, phi};
}

UnitVector3 planar_vector(PlaneConstraint plane, double angle) {
  switch (plane) {
  case PlaneConstraint::XY:
    return UnitVector3::normalized(std::cos(angle), std::sin(angle), 0.0);
  case PlaneConstraint::XZ:
    return UnitVector3::normalized(std::sin(angle), 0.0, std::cos(angle));
  case PlaneConstraint::None:
    break;
  }
  throw std::invalid_argument("planar_vector needs a plane constraint");
}

BellReport optimize_settings(const StateVector &state,
                             const OptimizerConfig &cfg) {
  if (cfg.restarts < 1) {
    throw std::invalid_argument("optimizer needs at least one restart");
  }
  if (!(cfg.tol > 0.0)) {
    throw std::invalid_argument("optimizer tolerance must be positive");
  }
  const int n_modes = state.space().num_modes;
  const int dim = state.space().dim;
  if (n_modes < 2) {
    throw std::invalid_argument("Bell optimization needs at least two modes");
  }
  const int apv = angles_per_vector(cfg.plane);
  const std::size_t n_params = static_cast<std::size_t>(2 * n_modes * apv);

  double last_signed = 0.0;
  const auto objective = [&](std::span<const double> p) {
    const MeasurementSettings s = settings_from_params(n_modes, cfg.plane, p);
    last_signed = expectation(bell_operator(s, dim), state);
    return -std::abs(last_signed);
  };

  Rng rng(cfg.seed * 0x9e3779b97f4a7c15ULL + 0xd1b54a32d192ed03ULL);
  double best_abs = -1.0;
  double best_signed = 0.0;
  std::vector<double> best_params;
  for (int restart = 0; restart < cfg.restarts; ++restart) {
    std::vector<double> x0(n_params);
    for (int v = 0; v < 2 * n_modes; ++v) {
      if (cfg.plane == PlaneConstraint::None) {
        // uniform on the sphere, not uniform in angles
        const UnitVector3 u = UnitVector3::normalized(
            rng.normal(), rng.normal(), rng.normal());
        const auto [theta, phi] = angles_from_vector(u);
        x0[static_cast<std::size_t>(2 * v)] = theta;
        x0[static_cast<std::size_t>(2 * v + 1)] = phi;
      } else {
        x0[static_cast<std::size_t>(v)] = rng.uniform(0.0, kTwoPi);
      }
    }
    NmResult run = nelder_mead(objective, std::move(x0), 0.6, cfg.tol,
                               cfg.max_iters);
    run = nelder_mead(objective, std::move(run.x), 0.05, cfg.tol,
                      cfg.max_iters);
    const double abs_val = -run.f;
    if (abs_val > best_abs) {
      best_abs = abs_val;
      objective(run.x); // refresh last_signed for the winning point
      best_signed = last_signed;
      best_params = std::move(run.x);
    }
  }
  return BellReport::make(n_modes, best_signed,
                          settings_from_params(n_modes, cfg.plane, best_params));
}

BellReport grid_search_planar(const StateVector &state, PlaneConstraint plane,
                              double resolution) {
  if (plane == PlaneConstraint::None) {
    throw std::invalid_argument("grid search needs a plane constraint");
  }
  if (!(resolution > 0.0)) {
    throw std::invalid_argument("grid resolution must be positive");
  }
  const int n_modes = state.space().num_modes;
  const int dim = state.space().dim;
  if (n_modes < 2) {
    throw std::invalid_argument("Bell grid search needs at least two modes");
  }
  const std::int64_t grid =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(
                                    std::floor(kTwoPi / resolution + 1e-9)));

  // budget: correlation tensor size and search work
  double tensor_size = 1.0, configs = 1.0;
  for (int m = 0; m < n_modes; ++m) {
    tensor_size *= static_cast<double>(grid);
  }
  for (int m = 0; m < 2 * (n_modes - 1); ++m) {
    configs *= static_cast<double>(grid);
  }
  const double work =
      configs * static_cast<double>(grid) * std::pow(2.0, n_modes);
  if (tensor_size > 4e6 || work > 4e9) {
    throw std::invalid_argument("grid size budget exceeded");
  }

  // single-mode measurement operators for every grid angle
  const PseudospinSet spin = build_pseudospin(dim);
  std::vector<SparseOperator> mode_op;
  mode_op.reserve(static_cast<std::size_t>(grid));
  for (std::int64_t g = 0; g < grid; ++g) {
    mode_op.push_back(
        dot_spin(planar_vector(plane, static_cast<double>(g) * resolution), spin));
  }

  // strides of the flat tensor index (i_1 most significant, like the state)
  std::vector<std::int64_t> stride(static_cast<std::size_t>(n_modes), 1);
  for (int m = n_modes - 2; m >= 0; --m) {
    stride[static_cast<std::size_t>(m)] =
        stride[static_cast<std::size_t>(m + 1)] * grid;
  }

  // mode-m application y = (I x .. O .. x I) x, strided
  const std::int64_t total = state.size();
  const auto apply_mode = [&](const SparseOperator &op, int mode,
                              const std::vector<cplx> &x,
                              std::vector<cplx> &y) {
    std::int64_t inner = 1;
    for (int m = mode + 1; m < n_modes; ++m) {
      inner *= dim;
    }
    const std::int64_t block = inner * dim;
    for (std::int64_t base = 0; base < total; base += block) {
      for (std::int64_t row = 0; row < dim; ++row) {
        const cplx *xv = x.data();
        for (std::int64_t off = 0; off < inner; ++off) {
          cplx acc{};
          for (std::int64_t k = op.row_ptr()[static_cast<std::size_t>(row)];
               k < op.row_ptr()[static_cast<std::size_t>(row) + 1]; ++k) {
            acc += op.values()[static_cast<std::size_t>(k)] *
                   xv[base + op.cols()[static_cast<std::size_t>(k)] * inner + off];
          }
          y[static_cast<std::size_t>(base + row * inner + off)] = acc;
        }
      }
    }
  };

  // correlation tensor T[i_1,...,i_N] = <psi| prod_m (c(i_m).s_m) |psi>
  std::vector<double> tensor(static_cast<std::size_t>(tensor_size));
  {
    const std::span<const cplx> psi = state.amplitudes();
    std::vector<std::vector<cplx>> level(static_cast<std::size_t>(n_modes));
    for (auto &v : level) {
      v.resize(static_cast<std::size_t>(total));
    }
    std::vector<cplx> base_vec(psi.begin(), psi.end());
    const auto recurse = [&](auto &&self, int mode, std::int64_t idx,
                             const std::vector<cplx> &current) -> void {
      for (std::int64_t g = 0; g < grid; ++g) {
        auto &out = level[static_cast<std::size_t>(mode)];
        apply_mode(mode_op[static_cast<std::size_t>(g)], mode, current, out);
        const std::int64_t next_idx =
            idx + g * stride[static_cast<std::size_t>(mode)];
        if (mode + 1 == n_modes) {
          tensor[static_cast<std::size_t>(next_idx)] =
              kern::dot_conj(psi.data(), out.data(),
                             static_cast<std::size_t>(total))
                  .real();
        } else {
          self(self, mode + 1, next_idx, out);
        }
      }
    };
    recurse(recurse, 0, 0, base_vec);
  }

  // B_N = sum_t coeff_t * term, split by whether mode 1 uses a_1 or a_1'
  const std::vector<BellTerm> terms = bell_expansion(n_modes);
  std::vector<BellTerm> group_plain, group_primed;
  for (const BellTerm &t : terms) {
    ((t.primed_mask & 1u) == 0 ? group_plain : group_primed).push_back(t);
  }

  // exhaustive search over modes 2..N settings; mode 1 separates exactly
  const int tail = 2 * (n_modes - 1);
  std::vector<std::int64_t> cfg_idx(static_cast<std::size_t>(tail), 0);
  const std::int64_t stride0 = stride[0];

  double best_value = 0.0;
  double best_abs = -1.0;
  std::vector<std::int64_t> best_cfg(cfg_idx.size(), 0);
  std::int64_t best_i = 0, best_ip = 0;

  std::vector<std::int64_t> off_plain(group_plain.size());
  std::vector<std::int64_t> off_primed(group_primed.size());
  const auto term_offset = [&](const BellTerm &t) {
    std::int64_t off = 0;
    for (int m = 1; m < n_modes; ++m) {
      const bool primed = (t.primed_mask >> m) & 1u;
      const std::int64_t j =
          cfg_idx[static_cast<std::size_t>(2 * (m - 1) + (primed ? 1 : 0))];
      off += stride[static_cast<std::size_t>(m)] * j;
    }
    return off;
  };

  while (true) {
    for (std::size_t t = 0; t < group_plain.size(); ++t) {
      off_plain[t] = term_offset(group_plain[t]);
    }
    for (std::size_t t = 0; t < group_primed.size(); ++t) {
      off_primed[t] = term_offset(group_primed[t]);
    }
    double f0_max = 0.0, f0_min = 0.0, f1_max = 0.0, f1_min = 0.0;
    std::int64_t i0_max = 0, i0_min = 0, i1_max = 0, i1_min = 0;
    for (std::int64_t i = 0; i < grid; ++i) {
      double f0 = 0.0, f1 = 0.0;
      const std::int64_t base = i * stride0;
      for (std::size_t t = 0; t < group_plain.size(); ++t) {
        f0 += group_plain[t].coeff *
              tensor[static_cast<std::size_t>(base + off_plain[t])];
      }
      for (std::size_t t = 0; t < group_primed.size(); ++t) {
        f1 += group_primed[t].coeff *
              tensor[static_cast<std::size_t>(base + off_primed[t])];
      }
      if (i == 0 || f0 > f0_max) {
        f0_max = f0;
        i0_max = i;
      }
      if (i == 0 || f0 < f0_min) {
        f0_min = f0;
        i0_min = i;
      }
      if (i == 0 || f1 > f1_max) {
        f1_max = f1;
        i1_max = i;
      }
      if (i == 0 || f1 < f1_min) {
        f1_min = f1;
        i1_min = i;
      }
    }
    const double hi = f0_max + f1_max;
    const double lo = f0_min + f1_min;
    if (hi > best_abs) {
      best_abs = hi;
      best_value = hi;
      best_cfg = cfg_idx;
      best_i = i0_max;
      best_ip = i1_max;
    }
    if (-lo > best_abs) {
      best_abs = -lo;
      best_value = lo;
      best_cfg = cfg_idx;
      best_i = i0_min;
      best_ip = i1_min;
    }
    // odometer
    int d = tail - 1;
    while (d >= 0) {
      if (++cfg_idx[static_cast<std::size_t>(d)] < grid) {
        break;
      }
      cfg_idx[static_cast<std::size_t>(d)] = 0;
      --d;
    }
    if (d < 0) {
      break;
    }
  }

  MeasurementSettings settings;
  settings.pairs.emplace_back(
      planar_vector(plane, static_cast<double>(best_i) * resolution),
      planar_vector(plane, static_cast<double>(best_ip) * resolution));
  for (int m = 1; m < n_modes; ++m) {
    settings.pairs.emplace_back(
        planar_vector(plane,
                      static_cast<double>(
                          best_cfg[static_cast<std::size_t>(2 * (m - 1))]) *
                          resolution),
        planar_vector(plane,
                      static_cast<double>(
                          best_cfg[static_cast<std::size_t>(2 * (m - 1) + 1)]) *
                          resolution));
  }
  return BellReport::make(n_modes, best_value, std::move(settings));
}

std::vector<double> finite_difference_gradient(
    const std::function<double(std::span<const double>)> &objective,
    std::span<const double> angles, double step) {
  if (!(step > 0.0)) {
    throw std::invalid_argument("finite difference step must be positive");
  }
  std::vector<double> x(angles.begin(), angles.end());
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + step;
    const double fp = objective(x);
    x[i] = saved - step;
    const double fm = objective(x);
    x[i] = saved;
    grad[i] = (fp - fm) / (2.0 * step);
  }
  return grad;
}

} // namespace pspin
