#include "mmwt/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "mmwt/distance.hpp"
#include "mmwt/errors.hpp"
#include "mmwt/philox.hpp"
#include "mmwt/parallel.hpp"

namespace mmwt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Guard against windows that would need gigabytes of points.
constexpr double kMaxExpectedPoints = 5e6;

class DropRng {
 public:
  DropRng(std::uint64_t seed, std::uint64_t drop) : stream_(seed, drop) {}

  double uniform() { return stream_.uniform(); }
  double exponential() { return -std::log(stream_.uniform()); }

  /// Gamma(m, 1/m) power fading as a sum of m unit exponentials.
  double nakagami_power(int m) {
    double sum = 0.0;
    for (int i = 0; i < m; ++i) sum += exponential();
    return sum / m;
  }

  std::int64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    std::poisson_distribution<std::int64_t> dist(mean);
    return dist(stream_);
  }

  double gain(const HorizontalGainDist& d) {
    const double u = uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      acc += d.probs[i];
      if (u < acc) return d.values[i];
    }
    return d.values[3];
  }

  /// Uniform point in a disc: (x, y, r).
  void disc_point(double radius, double& x, double& y, double& r) {
    r = radius * std::sqrt(uniform());
    const double phi = 2.0 * kPi * uniform();
    x = r * std::cos(phi);
    y = r * std::sin(phi);
  }

 private:
  PhiloxStream stream_;
};

struct Mbs {
  double x, y, r;
  bool los;
};

struct Setup {
  const NetworkParams& p;
  EquivalentDistanceMap map;
  HorizontalGainDist macro_gain, femto_gain, fm_gain, mf_gain;
  int m;
  double window;
  double theta;

  Setup(const NetworkParams& params, const DropConfig& drop, double theta_tilt)
      : p(params),
        map(EquivalentDistanceMap::from(params.path_loss)),
        macro_gain(params.macro_gain()),
        femto_gain(params.femto_gain()),
        fm_gain(params.cross_fm_gain()),
        mf_gain(params.cross_mf_gain()),
        m(params.fading.nakagami_m),
        window(drop.window_radius > 0.0 ? drop.window_radius : default_window_radius(params)),
        theta(theta_tilt) {}

  double equivalent(const Mbs& b) const { return b.los ? b.r : map.r_eq(b.r); }
};

void check_drop(const NetworkParams& p, const DropConfig& drop, double window, double lambda) {
  p.validate();
  if (drop.n_drops < 1) throw DomainError("n_drops must be >= 1");
  if (!(window > 0.0) || !std::isfinite(window)) throw DomainError("window radius must be positive");
  if (lambda * kPi * window * window > kMaxExpectedPoints)
    throw DomainError("simulation window holds too many points; set a smaller window radius");
}

void check_tilt(double theta) {
  if (!(theta >= 0.0 && theta <= 90.0)) throw DomainError("tilt must lie in [0, 90] degrees");
}

void draw_mbs(DropRng& rng, double lambda, double radius, std::vector<Mbs>& out, const PathLossModel& pl) {
  out.clear();
  const auto n = rng.poisson(lambda * kPi * radius * radius);
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    Mbs b{};
    rng.disc_point(radius, b.x, b.y, b.r);
    b.los = rng.uniform() < std::exp(-pl.beta * b.r);
    out.push_back(b);
  }
}

std::size_t serving_index(const Setup& s, const std::vector<Mbs>& mbs) {
  std::size_t best = mbs.size();
  double best_eq = kInf;
  for (std::size_t i = 0; i < mbs.size(); ++i) {
    const double eq = s.equivalent(mbs[i]);
    if (eq < best_eq) {
      best_eq = eq;
      best = i;
    }
  }
  return best;
}

struct MacroPowers {
  double signal = 0.0;
  double interference = 0.0;
  bool empty = true;
};

MacroPowers macro_user(const Setup& s, const std::vector<Mbs>& mbs, DropRng& rng) {
  MacroPowers out;
  const std::size_t serving = serving_index(s, mbs);
  if (serving == mbs.size()) return out;
  out.empty = false;
  const auto& pl = s.p.path_loss;
  for (std::size_t i = 0; i < mbs.size(); ++i) {
    const auto& b = mbs[i];
    const LinkState st = b.los ? LinkState::kLos : LinkState::kNlos;
    const double mean = s.p.p_m * pl.gain(st) * std::pow(b.r, -pl.exponent(st)) * s.p.elevation_gain(b.r, s.theta);
    if (i == serving)
      out.signal = mean * s.macro_gain.aligned() * rng.nakagami_power(s.m);
    else
      out.interference += mean * rng.gain(s.macro_gain) * rng.nakagami_power(s.m);
  }
  return out;
}

double sinr(double signal, double interference, double noise) {
  const double denom = interference + noise;
  return denom > 0.0 ? signal / denom : kInf;
}

/// Uniform-grid index over MBS positions answering "nearest MBS if closer than cap".
class NearestMbs {
 public:
  void build(const std::vector<Mbs>& pts, double half_extent, double cap) {
    pts_ = &pts;
    cap_ = cap;
    if (!(cap > 0.0)) return;
    half_ = half_extent;
    cell_ = std::max(cap, 2.0 * half_extent / 1024.0);
    n_ = std::max(1, static_cast<int>(std::ceil(2.0 * half_extent / cell_)));
    start_.assign(static_cast<std::size_t>(n_) * n_ + 1, 0);
    std::vector<std::size_t> cells(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      cells[i] = cell_of(pts[i].x, pts[i].y);
      ++start_[cells[i] + 1];
    }
    for (std::size_t c = 1; c < start_.size(); ++c) start_[c] += start_[c - 1];
    items_.assign(pts.size(), 0);
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < pts.size(); ++i) items_[fill[cells[i]]++] = i;
  }

  /// Distance to the nearest MBS when below the cap, +inf otherwise.
  double nearest(double x, double y) const {
    if (!(cap_ > 0.0)) return kInf;
    const int cx = clamp_cell(x), cy = clamp_cell(y);
    double best2 = cap_ * cap_;
    bool found = false;
    for (int j = std::max(0, cy - 1); j <= std::min(n_ - 1, cy + 1); ++j)
      for (int i = std::max(0, cx - 1); i <= std::min(n_ - 1, cx + 1); ++i) {
        const std::size_t c = static_cast<std::size_t>(j) * n_ + i;
        for (std::size_t k = start_[c]; k < start_[c + 1]; ++k) {
          const auto& b = (*pts_)[items_[k]];
          const double d2 = (b.x - x) * (b.x - x) + (b.y - y) * (b.y - y);
          if (d2 <= best2) {
            best2 = d2;
            found = true;
          }
        }
      }
    return found ? std::sqrt(best2) : kInf;
  }

 private:
  int clamp_cell(double v) const {
    return std::clamp(static_cast<int>(std::floor((v + half_) / cell_)), 0, n_ - 1);
  }
  std::size_t cell_of(double x, double y) const {
    return static_cast<std::size_t>(clamp_cell(y)) * n_ + clamp_cell(x);
  }

  const std::vector<Mbs>* pts_ = nullptr;
  double cap_ = 0.0, half_ = 0.0, cell_ = 1.0;
  int n_ = 1;
  std::vector<std::size_t> start_, items_;
};

}  // namespace

double default_window_radius(const NetworkParams& p) {
  const double blockage = p.path_loss.beta > 0.0 ? 5.0 / p.path_loss.beta : 0.0;
  return std::max(blockage, 10.0 / std::sqrt(kPi * p.lambda_m));
}

EmpiricalEstimate EmpiricalEstimate::from_counts(std::int64_t hits, std::int64_t n) {
  EmpiricalEstimate e;
  e.n = n;
  if (n <= 0) return e;
  e.mean = static_cast<double>(hits) / static_cast<double>(n);
  e.ci95_halfwidth = 1.96 * std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(n));
  return e;
}

EmpiricalEstimate drop_homogeneous(const NetworkParams& p, const DropConfig& drop, double gamma, double theta_tilt) {
  return drop_homogeneous_sweep(p, drop, std::span(&gamma, 1), theta_tilt).front();
}

std::vector<EmpiricalEstimate> drop_homogeneous_sweep(const NetworkParams& p, const DropConfig& drop,
                                                      std::span<const double> gammas, double theta_tilt) {
  check_tilt(theta_tilt);
  NetworkParams q = p;
  q.lambda_f = 0.0;
  const Setup s(q, drop, theta_tilt);
  check_drop(q, drop, s.window, q.lambda_m);

  const unsigned workers = resolve_threads(drop.threads);
  std::vector<std::vector<std::int64_t>> hits(workers, std::vector<std::int64_t>(gammas.size(), 0));
  std::vector<std::int64_t> counted(workers, 0);

  parallel_chunks(static_cast<std::size_t>(drop.n_drops), workers,
                          [&](std::size_t begin, std::size_t end, unsigned w) {
                            std::vector<Mbs> mbs;
                            for (std::size_t d = begin; d < end; ++d) {
                              DropRng rng(drop.rng_seed, d);
                              draw_mbs(rng, q.lambda_m, s.window, mbs, q.path_loss);
                              const auto pw = macro_user(s, mbs, rng);
                              if (pw.empty && drop.condition_on_nonempty) continue;
                              ++counted[w];
                              if (pw.empty) continue;
                              const double x = sinr(pw.signal, pw.interference, q.sigma2);
                              for (std::size_t g = 0; g < gammas.size(); ++g)
                                if (x > gammas[g]) ++hits[w][g];
                            }
                          });

  std::int64_t n = 0;
  for (auto c : counted) n += c;
  std::vector<EmpiricalEstimate> out;
  for (std::size_t g = 0; g < gammas.size(); ++g) {
    std::int64_t k = 0;
    for (const auto& h : hits) k += h[g];
    out.push_back(EmpiricalEstimate::from_counts(k, n));
  }
  return out;
}

HetNetEstimate drop_hetnet(const NetworkParams& p, const DropConfig& drop, double gamma_m, double gamma_f,
                           double theta_tilt, double r_c) {
  const auto sweep =
      drop_hetnet_sweep(p, drop, std::span(&gamma_m, 1), std::span(&gamma_f, 1), theta_tilt, std::span(&r_c, 1));
  return {sweep.macro(drop.exact_hole_process, 0, 0), sweep.femto(drop.exact_hole_process, 0, 0)};
}

HetNetSweepEstimate drop_hetnet_sweep(const NetworkParams& p, const DropConfig& drop,
                                      std::span<const double> gammas_m, std::span<const double> gammas_f,
                                      double theta_tilt, std::span<const double> r_cs) {
  check_tilt(theta_tilt);
  for (double r_c : r_cs) check_sleep_radius(p, r_c);
  const Setup s(p, drop, theta_tilt);
  double r_c_max = 0.0;
  for (double r_c : r_cs) r_c_max = std::max(r_c_max, r_c);
  // MBSs just outside the window still carve holes into the FBS process inside it.
  const double mbs_window = s.window + r_c_max;
  check_drop(p, drop, mbs_window, p.lambda_m + p.lambda_f);

  const auto& pl = p.path_loss;
  const std::size_t nj = r_cs.size();
  const std::size_t ngm = gammas_m.size(), ngf = gammas_f.size();
  std::vector<double> keep(nj);
  for (std::size_t j = 0; j < nj; ++j) keep[j] = std::exp(-kPi * p.lambda_m * r_cs[j] * r_cs[j]);

  struct Counts {
    std::vector<std::int64_t> me, mt, fe, ft, se, st;
  };
  const unsigned workers = resolve_threads(drop.threads);
  std::vector<Counts> counts(workers);
  for (auto& c : counts) {
    c.me.assign(ngm * nj, 0);
    c.mt.assign(ngm * nj, 0);
    c.fe.assign(ngf * nj, 0);
    c.ft.assign(ngf * nj, 0);
    c.se.assign(nj, 0);
    c.st.assign(nj, 0);
  }
  std::vector<std::int64_t> counted(workers, 0);

  const double femto_mean_base = p.p_f * pl.c_nlos;
  const double d0f = s.femto_gain.aligned();

  parallel_chunks(
      static_cast<std::size_t>(drop.n_drops), workers, [&](std::size_t begin, std::size_t end, unsigned w) {
        auto& c = counts[w];
        std::vector<Mbs> mbs;
        NearestMbs index;
        std::vector<double> i_me(nj), i_mt(nj), i_fe(nj), i_ft(nj);
        for (std::size_t d = begin; d < end; ++d) {
          DropRng rng(drop.rng_seed, d);
          draw_mbs(rng, p.lambda_m, mbs_window, mbs, pl);
          const auto macro = macro_user(s, mbs, rng);
          if (macro.empty && drop.condition_on_nonempty) continue;
          ++counted[w];
          index.build(mbs, mbs_window, r_c_max);

          // Femto user at the origin, its FBS uniformly placed within r_f.
          double sx, sy, rho;
          rng.disc_point(p.r_f, sx, sy, rho);
          const double serving_hole = index.nearest(sx, sy);
          const double serving_u = rng.uniform();
          const double femto_signal = p.p_f * pl.c_los * std::pow(rho, -pl.alpha_los) * d0f * rng.exponential();
          double i_mf = 0.0;
          for (const auto& b : mbs)
            i_mf += p.p_m * p.ell_w * pl.c_nlos * std::pow(b.r, -pl.alpha_nlos) * p.elevation_gain(b.r, theta_tilt) *
                    rng.gain(s.mf_gain) * rng.exponential();

          std::fill(i_me.begin(), i_me.end(), 0.0);
          std::fill(i_mt.begin(), i_mt.end(), 0.0);
          std::fill(i_fe.begin(), i_fe.end(), 0.0);
          std::fill(i_ft.begin(), i_ft.end(), 0.0);
          const auto n_f = rng.poisson(p.lambda_f * kPi * s.window * s.window);
          for (std::int64_t k = 0; k < n_f; ++k) {
            double x, y, r;
            rng.disc_point(s.window, x, y, r);
            const double hole = index.nearest(x, y);
            const double u = rng.uniform();
            const double path = femto_mean_base * std::pow(r, -pl.alpha_nlos);
            const double to_macro = path * p.ell_w * rng.gain(s.fm_gain) * rng.exponential();
            // The analytic model puts the femto user's own FBS nearest; closer FBSs are left out.
            const double to_femto = r > rho ? path * p.ell_w * p.ell_w * rng.gain(s.femto_gain) * rng.exponential() : 0.0;
            for (std::size_t j = 0; j < nj; ++j) {
              if (hole > r_cs[j]) {
                i_me[j] += to_macro;
                i_fe[j] += to_femto;
              }
              if (u < keep[j]) {
                i_mt[j] += to_macro;
                i_ft[j] += to_femto;
              }
            }
          }

          for (std::size_t j = 0; j < nj; ++j) {
            if (!macro.empty) {
              const double xe = sinr(macro.signal, macro.interference + i_me[j], p.sigma2);
              const double xt = sinr(macro.signal, macro.interference + i_mt[j], p.sigma2);
              for (std::size_t g = 0; g < ngm; ++g) {
                if (xe > gammas_m[g]) ++c.me[g * nj + j];
                if (xt > gammas_m[g]) ++c.mt[g * nj + j];
              }
            }
            const bool silenced_e = serving_hole <= r_cs[j];
            const bool silenced_t = !(serving_u < keep[j]);
            if (silenced_e) ++c.se[j];
            if (silenced_t) ++c.st[j];
            const double fe = silenced_e ? -1.0 : sinr(femto_signal, i_mf + i_fe[j], p.sigma2);
            const double ft = silenced_t ? -1.0 : sinr(femto_signal, i_mf + i_ft[j], p.sigma2);
            for (std::size_t g = 0; g < ngf; ++g) {
              if (fe > gammas_f[g]) ++c.fe[g * nj + j];
              if (ft > gammas_f[g]) ++c.ft[g * nj + j];
            }
          }
        }
      });

  std::int64_t n = 0;
  for (auto v : counted) n += v;
  auto reduce = [&](auto member, std::size_t size) {
    std::vector<EmpiricalEstimate> out;
    for (std::size_t i = 0; i < size; ++i) {
      std::int64_t k = 0;
      for (const auto& c : counts) k += (c.*member)[i];
      out.push_back(EmpiricalEstimate::from_counts(k, n));
    }
    return out;
  };
  HetNetSweepEstimate out;
  out.n_r_c = nj;
  out.macro_exact = reduce(&Counts::me, ngm * nj);
  out.macro_thinned = reduce(&Counts::mt, ngm * nj);
  out.femto_exact = reduce(&Counts::fe, ngf * nj);
  out.femto_thinned = reduce(&Counts::ft, ngf * nj);
  out.silenced_exact = reduce(&Counts::se, nj);
  out.silenced_thinned = reduce(&Counts::st, nj);
  return out;
}

std::vector<double> sample_serving_distance(const NetworkParams& p, const DropConfig& drop) {
  NetworkParams q = p;
  q.lambda_f = 0.0;
  const Setup s(q, drop, 0.0);
  check_drop(q, drop, s.window, q.lambda_m);
  std::vector<double> out(static_cast<std::size_t>(drop.n_drops), kInf);
  parallel_chunks(out.size(), drop.threads, [&](std::size_t begin, std::size_t end, unsigned) {
    std::vector<Mbs> mbs;
    for (std::size_t d = begin; d < end; ++d) {
      DropRng rng(drop.rng_seed, d);
      draw_mbs(rng, q.lambda_m, s.window, mbs, q.path_loss);
      for (const auto& b : mbs) out[d] = std::min(out[d], s.equivalent(b));
    }
  });
  return out;
}

}  // namespace mmwt
