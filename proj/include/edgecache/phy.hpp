#pragma once

#include <cmath>

#include "edgecache/common.hpp"
#include "edgecache/topology.hpp"

namespace edgecache {

// Radio parameters. Powers and thresholds are stored in both dB(m) and linear
// form; the linear values are canonical and all computations use them.
struct PhyParams {
  double p_u_dbm = 23.0, p_b_dbm = 26.0, p_m_dbm = 43.0;
  double p_u_w = 0.0, p_b_w = 0.0, p_m_w = 0.0;  // linear watts
  double beta = 4.0;         // path-loss exponent, must be > 2
  double phi_db = 1e-8;      // SINR threshold (dB)
  double phi_lin = 1.0;
  double sigma2_dbm = -174.0;  // noise power (dBm)
  double sigma2_w = 0.0;
  double zeta = 0.01;      // residual self-interference factor of FD nodes
  double zeta_bar = 0.0;   // self-interference power term in the closed forms

  // Builds linear fields from the dB(m) ones; zeta_bar defaults to
  // zeta * p_b (linear) when not given explicitly.
  static PhyParams from_db(double p_u_dbm, double p_b_dbm, double p_m_dbm, double beta,
                           double phi_db, double sigma2_dbm, double zeta,
                           double zeta_bar_override = -1.0);

  void validate() const;
};

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// The five link success probabilities Pr[SINR >= threshold]; they do not
// depend on the content index.
struct SuccessProbs {
  double p_s_d2d = 1.0;           // D2D holder -> requester
  double p_s_tagged_sbs = 1.0;    // tagged sBS -> requester
  double p_s_neighbor_sbs = 1.0;  // neighbor sBS -> tagged sBS -> requester
  double p_s_mbs_via_sbs = 1.0;   // serving MBS -> tagged sBS -> requester
  double p_s_mbs_direct = 1.0;    // serving MBS -> requester (no sBS coverage)

  void validate() const;  // all entries in [0,1]
};

// sin(pi x) / (pi x), with the x -> 0 limit of 1.
double sinc_norm(double x);

// Integral over u in [lower, inf) of 1 / (1 + u^(beta/2)); converges for
// beta > 2. Used inside the tagged-sBS interference constant.
double interference_tail_integral(double lower, double beta);

struct QuadratureOptions {
  double abs_tol = 1e-9;
  int initial_segments = 24;  // geometric subdivision of [0, R] before refining
};

// Closed-form success probabilities for the five link kinds. Throws
// std::domain_error if any output leaves [0,1] by more than 1e-9 (parameter
// regime where the approximation breaks) and std::runtime_error on quadrature
// failure.
SuccessProbs closed_form_success(const PhyParams& phy, const NetworkParams& net,
                                 const QuadratureOptions& quad = {});

enum class LinkKind { d2d, tagged_sbs, neighbor_sbs, mbs_via_sbs, mbs_direct };

struct SinrOracleOptions {
  double activity_prob = 1.0;   // probability an interfering sBS/MBS transmits
  double window_radius = 3000.0;  // interferer sampling disk around the receiver
};

// Monte Carlo estimate of the link success probability: samples serving node
// and interferer point processes, Rayleigh (unit-mean exponential) fading,
// and full-duplex self-interference at sBS receivers, then counts
// SINR >= threshold. Composite links (neighbor_sbs, mbs_via_sbs) simulate
// both hops and require both to succeed.
double mc_success_oracle(LinkKind link, const PhyParams& phy, const NetworkParams& net,
                         long trials, Rng& rng, const SinrOracleOptions& opts = {});

}  // namespace edgecache
