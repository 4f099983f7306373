#include "edgecache/phy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace edgecache {

PhyParams PhyParams::from_db(double p_u_dbm, double p_b_dbm, double p_m_dbm, double beta,
                             double phi_db, double sigma2_dbm, double zeta,
                             double zeta_bar_override) {
  PhyParams p;
  p.p_u_dbm = p_u_dbm;
  p.p_b_dbm = p_b_dbm;
  p.p_m_dbm = p_m_dbm;
  p.p_u_w = dbm_to_watt(p_u_dbm);
  p.p_b_w = dbm_to_watt(p_b_dbm);
  p.p_m_w = dbm_to_watt(p_m_dbm);
  p.beta = beta;
  p.phi_db = phi_db;
  p.phi_lin = db_to_linear(phi_db);
  p.sigma2_dbm = sigma2_dbm;
  p.sigma2_w = dbm_to_watt(sigma2_dbm);
  p.zeta = zeta;
  p.zeta_bar = zeta_bar_override >= 0.0 ? zeta_bar_override : zeta * p.p_b_w;
  p.validate();
  return p;
}

void PhyParams::validate() const {
  if (!(beta > 2.0))
    throw std::invalid_argument("PhyParams: beta must be > 2 (interference integrals diverge)");
  if (!(p_u_w > 0.0) || !(p_b_w > 0.0) || !(p_m_w > 0.0))
    throw std::invalid_argument("PhyParams: transmit powers must be > 0");
  if (!(phi_lin > 0.0)) throw std::invalid_argument("PhyParams: SINR threshold must be > 0");
  if (!(sigma2_w >= 0.0)) throw std::invalid_argument("PhyParams: noise power must be >= 0");
  if (!(zeta >= 0.0 && zeta <= 1.0))
    throw std::invalid_argument("PhyParams: zeta must be in [0,1]");
  if (!(zeta_bar >= 0.0)) throw std::invalid_argument("PhyParams: zeta_bar must be >= 0");
}

void SuccessProbs::validate() const {
  const double vals[] = {p_s_d2d, p_s_tagged_sbs, p_s_neighbor_sbs, p_s_mbs_via_sbs,
                         p_s_mbs_direct};
  for (double v : vals)
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument("SuccessProbs: entries must be in [0,1]");
}

double sinc_norm(double x) {
  if (x == 0.0) return 1.0;
  const double px = M_PI * x;
  return std::sin(px) / px;
}

namespace {

// Adaptive Simpson on [a,b]. The integrands here are smooth, so plain
// recursion with a depth cap is enough.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::fabs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double v = adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
  if (!std::isfinite(v)) throw std::runtime_error("quadrature: integral did not converge");
  return v;
}

// Integral of f over [0, r_max] with a geometric subdivision toward 0, so
// integrands whose mass sits in a narrow spike near the origin (strong
// self-interference) are still resolved.
template <typename F>
double integrate_radial(const F& f, double r_max, const QuadratureOptions& quad) {
  int segments = std::max(2, quad.initial_segments);
  double total = 0.0;
  double hi = r_max;
  const double seg_tol = quad.abs_tol / segments;
  for (int s = 0; s < segments; ++s) {
    double lo = (s + 1 == segments) ? 0.0 : hi * 0.5;
    total += integrate(f, lo, hi, seg_tol);
    hi = lo;
  }
  return total;
}

}  // namespace

double interference_tail_integral(double lower, double beta) {
  if (!(beta > 2.0)) throw std::invalid_argument("interference_tail_integral: beta must be > 2");
  if (!(lower >= 0.0)) throw std::invalid_argument("interference_tail_integral: lower must be >= 0");
  const double q = 0.5 * beta;
  auto f = [q](double u) { return 1.0 / (1.0 + std::pow(u, q)); };

  // Split at M where u^-q <= 1e-4, then sum the alternating tail series
  // int_M^inf u^-kq du = M^(1-kq)/(kq-1).
  const double m_split = std::max({lower, std::pow(1e4, 1.0 / q), 2.0});
  double head = integrate(f, lower, m_split, 1e-13);
  double tail = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 64; ++k) {
    const double kq = k * q;
    const double term = std::pow(m_split, 1.0 - kq) / (kq - 1.0);
    tail += sign * term;
    sign = -sign;
    if (term < 1e-17) break;
  }
  return head + tail;
}

SuccessProbs closed_form_success(const PhyParams& phy, const NetworkParams& net,
                                 const QuadratureOptions& quad) {
  phy.validate();
  net.validate();

  const double beta = phy.beta;
  const double phi = phy.phi_lin;
  const double alpha = net.alpha;
  const double lu = net.lambda_u, lb = net.lambda_b, lm = net.lambda_m;
  const double sinc = sinc_norm(2.0 / beta);
  if (!(sinc > 0.0)) throw std::invalid_argument("closed_form_success: sinc(2/beta) must be > 0");
  const double phi_2b = std::pow(phi, 2.0 / beta);

  auto pw = [&](double ratio) { return std::pow(phi * ratio, 2.0 / beta); };

  // D2D constants: serving process is the (1-alpha) thinned user field.
  const double lam_srv_u = (1.0 - alpha) * lu;
  const double a_const =
      lam_srv_u / (1.0 - std::exp(-M_PI * lam_srv_u * net.r_u * net.r_u));
  const double b_const = lu * ((1.0 - alpha) + alpha * phi_2b / sinc) +
                         lb * pw(phy.p_b_w / phy.p_u_w) / sinc +
                         lm * pw(phy.p_m_w / phy.p_u_w) / sinc;

  // Tagged-sBS constants. The exponential in A1 (and A2 below) is taken with
  // the negative sign so that A1/B1 * [1 - exp(-pi R^2 B1)] is a probability.
  const double tail = interference_tail_integral(std::pow(phi, -2.0 / beta), beta);
  const double a1 = lb / (1.0 - std::exp(-M_PI * lb * net.r_b * net.r_b));
  const double b1 = lb * (1.0 + 2.0 * phi_2b * tail) +
                    alpha * lu * pw(phy.p_u_w / phy.p_b_w) / sinc +
                    lm * pw(phy.p_m_w / phy.p_b_w) / sinc;

  // Direct-MBS constants; no sBS interference term in this case.
  const double a2 = lm / (1.0 - std::exp(-M_PI * lm * net.r_m * net.r_m));
  const double b2 = lm * (1.0 + phi_2b / sinc) + alpha * lu * pw(phy.p_u_w / phy.p_m_w) / sinc;

  SuccessProbs out;
  out.p_s_d2d = (a_const / b_const) * (1.0 - std::exp(-M_PI * net.r_u * net.r_u * b_const));
  const double tagged_factor =
      (a1 / b1) * (1.0 - std::exp(-M_PI * net.r_b * net.r_b * b1));
  out.p_s_tagged_sbs = tagged_factor;
  out.p_s_mbs_direct = (a2 / b2) * (1.0 - std::exp(-M_PI * net.r_m * net.r_m * b2));

  // Relay links: radial integral over the serving distance (nearest-neighbor
  // contact distribution truncated to the coverage radius), then the
  // sBS-to-user hop factor.
  const double norm_b = 1.0 - std::exp(-M_PI * lb * net.r_b * net.r_b);
  const double c_b = M_PI * (lb + (alpha * lu * pw(phy.p_u_w / phy.p_b_w) + lb * phi_2b +
                                   lm * pw(phy.p_m_w / phy.p_b_w)) /
                                      sinc);
  auto integrand_b = [&](double r) {
    return 2.0 * M_PI * lb * r / norm_b *
           std::exp(-c_b * r * r - phi * std::pow(r, beta) * phy.zeta_bar);
  };
  out.p_s_neighbor_sbs = integrate_radial(integrand_b, net.r_b, quad) * tagged_factor;

  const double norm_m = 1.0 - std::exp(-M_PI * lm * net.r_m * net.r_m);
  const double c_m = M_PI * (lm + (alpha * lu * pw(phy.p_u_w / phy.p_m_w) +
                                   lb * pw(phy.p_b_w / phy.p_m_w) + lm * phi_2b) /
                                      sinc);
  auto integrand_m = [&](double r) {
    return 2.0 * M_PI * lm * r / norm_m *
           std::exp(-c_m * r * r - phi * std::pow(r, beta) * phy.zeta_bar);
  };
  out.p_s_mbs_via_sbs = integrate_radial(integrand_m, net.r_m, quad) * tagged_factor;

  double* fields[] = {&out.p_s_d2d, &out.p_s_tagged_sbs, &out.p_s_neighbor_sbs,
                      &out.p_s_mbs_via_sbs, &out.p_s_mbs_direct};
  for (double* f : fields) {
    if (!(*f >= -1e-9 && *f <= 1.0 + 1e-9))
      throw std::domain_error("closed_form_success: probability " + std::to_string(*f) +
                              " outside [0,1]; approximation invalid for these parameters");
    *f = std::clamp(*f, 0.0, 1.0);
  }
  return out;
}

namespace {

struct HopSpec {
  double serve_intensity;  // density of the serving process
  double serve_radius;     // association cutoff; no server in range rejects the trial
  double serve_power;
  bool serve_class_interferes;  // other points of the serving process transmit too
  double serve_class_power;
  bool serve_class_thinned;  // serving-class interferers subject to activity_prob
  // independent interferer fields (intensity, power, thinned-by-activity)
  struct Field {
    double intensity;
    double power;
    bool thinned;
  };
  std::vector<Field> fields;
  bool self_interference;  // FD receiver: residual zeta * p_b with its own fading
};

// One SINR trial: returns true on success, or nullopt when no serving node
// fell inside the association radius. The serving class is sampled inside the
// association disc first so empty trials reject before any interferer work.
std::optional<bool> sinr_trial(const HopSpec& hop, const PhyParams& phy,
                               const SinrOracleOptions& opts, Rng& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::exponential_distribution<double> fading(1.0);
  const double w = opts.window_radius;
  const double r = hop.serve_radius;

  std::poisson_distribution<int> in_disc_count(hop.serve_intensity * M_PI * r * r);
  const int n_in = in_disc_count(rng);
  if (n_in == 0) return std::nullopt;

  double best = std::numeric_limits<double>::infinity();
  double interference = 0.0;
  const bool thin_serve = hop.serve_class_thinned && opts.activity_prob < 1.0;

  // In-range points of the serving class: the nearest serves, the rest
  // interfere (when that class transmits concurrently).
  std::vector<double> in_disc(static_cast<std::size_t>(n_in));
  for (int i = 0; i < n_in; ++i) in_disc[i] = r * std::sqrt(uni(rng));
  int best_idx = 0;
  for (int i = 0; i < n_in; ++i)
    if (in_disc[i] < in_disc[best_idx]) best_idx = i;
  best = in_disc[best_idx];

  if (hop.serve_class_interferes) {
    for (int i = 0; i < n_in; ++i) {
      if (i == best_idx) continue;
      if (thin_serve && uni(rng) >= opts.activity_prob) continue;
      interference += hop.serve_class_power * fading(rng) * std::pow(in_disc[i], -phy.beta);
    }
    // Serving-class points in the annulus between r and the window edge.
    std::poisson_distribution<int> annulus_count(hop.serve_intensity * M_PI * (w * w - r * r));
    const int n_out = annulus_count(rng);
    for (int i = 0; i < n_out; ++i) {
      const double d = std::sqrt(r * r + (w * w - r * r) * uni(rng));
      if (thin_serve && uni(rng) >= opts.activity_prob) continue;
      interference += hop.serve_class_power * fading(rng) * std::pow(d, -phy.beta);
    }
  }

  for (const auto& field : hop.fields) {
    const bool thin = field.thinned && opts.activity_prob < 1.0;
    std::poisson_distribution<int> cnt(field.intensity * M_PI * w * w);
    const int n = cnt(rng);
    for (int i = 0; i < n; ++i) {
      const double d = w * std::sqrt(uni(rng));
      if (thin && uni(rng) >= opts.activity_prob) continue;
      interference += field.power * fading(rng) * std::pow(d, -phy.beta);
    }
  }

  if (hop.self_interference) interference += phy.zeta * phy.p_b_w * fading(rng);

  const double signal = hop.serve_power * fading(rng) * std::pow(best, -phy.beta);
  return signal >= phy.phi_lin * (phy.sigma2_w + interference);
}

double estimate_hop(const HopSpec& hop, const PhyParams& phy, long trials, Rng& rng,
                    const SinrOracleOptions& opts) {
  long successes = 0;
  long done = 0;
  long attempts = 0;
  const long max_attempts = trials * 10000L + 1000000L;
  while (done < trials) {
    if (++attempts > max_attempts)
      throw std::runtime_error("mc_success_oracle: serving node almost never in range");
    auto r = sinr_trial(hop, phy, opts, rng);
    if (!r) continue;
    ++done;
    if (*r) ++successes;
  }
  return static_cast<double>(successes) / static_cast<double>(trials);
}

HopSpec hop_d2d(const PhyParams& phy, const NetworkParams& net) {
  // Content holders are the idle (non-requesting) users; concurrent D2D
  // transmissions appear as an independent alpha-thinned user field.
  HopSpec h;
  h.serve_intensity = (1.0 - net.alpha) * net.lambda_u;
  h.serve_radius = net.r_u;
  h.serve_power = phy.p_u_w;
  h.serve_class_interferes = false;
  h.serve_class_power = 0.0;
  h.serve_class_thinned = false;
  h.fields = {{net.alpha * net.lambda_u, phy.p_u_w, false},
              {net.lambda_b, phy.p_b_w, true},
              {net.lambda_m, phy.p_m_w, true}};
  h.self_interference = false;
  return h;
}

HopSpec hop_tagged_sbs(const PhyParams& phy, const NetworkParams& net) {
  HopSpec h;
  h.serve_intensity = net.lambda_b;
  h.serve_radius = net.r_b;
  h.serve_power = phy.p_b_w;
  h.serve_class_interferes = true;
  h.serve_class_power = phy.p_b_w;
  h.serve_class_thinned = true;
  h.fields = {{net.alpha * net.lambda_u, phy.p_u_w, false},
              {net.lambda_m, phy.p_m_w, true}};
  h.self_interference = false;
  return h;
}

HopSpec hop_neighbor_sbs(const PhyParams& phy, const NetworkParams& net) {
  // Receiver is the tagged sBS, relaying in FD mode.
  HopSpec h;
  h.serve_intensity = net.lambda_b;
  h.serve_radius = net.r_b;
  h.serve_power = phy.p_b_w;
  h.serve_class_interferes = true;
  h.serve_class_power = phy.p_b_w;
  h.serve_class_thinned = true;
  h.fields = {{net.alpha * net.lambda_u, phy.p_u_w, false},
              {net.lambda_m, phy.p_m_w, true}};
  h.self_interference = true;
  return h;
}

HopSpec hop_mbs_to_sbs(const PhyParams& phy, const NetworkParams& net) {
  HopSpec h;
  h.serve_intensity = net.lambda_m;
  h.serve_radius = net.r_m;
  h.serve_power = phy.p_m_w;
  h.serve_class_interferes = true;
  h.serve_class_power = phy.p_m_w;
  h.serve_class_thinned = true;
  h.fields = {{net.alpha * net.lambda_u, phy.p_u_w, false},
              {net.lambda_b, phy.p_b_w, true}};
  h.self_interference = true;
  return h;
}

HopSpec hop_mbs_direct(const PhyParams& phy, const NetworkParams& net) {
  // The requester has no sBS in range; the interference model for this case
  // has user and MBS terms only.
  HopSpec h;
  h.serve_intensity = net.lambda_m;
  h.serve_radius = net.r_m;
  h.serve_power = phy.p_m_w;
  h.serve_class_interferes = true;
  h.serve_class_power = phy.p_m_w;
  h.serve_class_thinned = true;
  h.fields = {{net.alpha * net.lambda_u, phy.p_u_w, false}};
  h.self_interference = false;
  return h;
}

}  // namespace

double mc_success_oracle(LinkKind link, const PhyParams& phy, const NetworkParams& net,
                         long trials, Rng& rng, const SinrOracleOptions& opts) {
  phy.validate();
  net.validate();
  if (trials < 1) throw std::invalid_argument("mc_success_oracle: trials must be >= 1");
  if (!(opts.window_radius > 0.0))
    throw std::invalid_argument("mc_success_oracle: window_radius must be > 0");
  if (!(opts.activity_prob >= 0.0 && opts.activity_prob <= 1.0))
    throw std::invalid_argument("mc_success_oracle: activity_prob must be in [0,1]");

  switch (link) {
    case LinkKind::d2d:
      return estimate_hop(hop_d2d(phy, net), phy, trials, rng, opts);
    case LinkKind::tagged_sbs:
      return estimate_hop(hop_tagged_sbs(phy, net), phy, trials, rng, opts);
    case LinkKind::mbs_direct:
      return estimate_hop(hop_mbs_direct(phy, net), phy, trials, rng, opts);
    case LinkKind::neighbor_sbs: {
      // Two hops, simulated independently: neighbor sBS -> tagged sBS, then
      // tagged sBS -> requester.
      const double relay = estimate_hop(hop_neighbor_sbs(phy, net), phy, trials, rng, opts);
      const double downlink = estimate_hop(hop_tagged_sbs(phy, net), phy, trials, rng, opts);
      return relay * downlink;
    }
    case LinkKind::mbs_via_sbs: {
      const double backhaul = estimate_hop(hop_mbs_to_sbs(phy, net), phy, trials, rng, opts);
      const double downlink = estimate_hop(hop_tagged_sbs(phy, net), phy, trials, rng, opts);
      return backhaul * downlink;
    }
  }
  throw std::invalid_argument("mc_success_oracle: unknown link kind");
}

}  // namespace edgecache
