#pragma once

#include "txpolicy/rng.hpp"

namespace txpolicy {

// Two-state channel over Rayleigh fading: the power gain h is exponential with
// mean 1/mu, and a slot is good when h >= rho_th. Success probability is
// alpha1 in the good state and alpha0 otherwise. Immutable and shareable.
class ChannelModel {
 public:
  ChannelModel(double alpha0, double alpha1, double mu, double rho_th);

  double alpha0() const { return alpha0_; }
  double alpha1() const { return alpha1_; }
  double mu() const { return mu_; }
  double rho_th() const { return rho_th_; }

  double sample_gain(RandomStream& rng) const;
  double success_prob_given_gain(double h) const;  // alpha1 iff h >= rho_th
  double good_state_prob() const;                  // P(h >= rho_th)
  double expected_success_prob() const;            // alpha0 + P(good) (alpha1 - alpha0)

 private:
  double alpha0_;
  double alpha1_;
  double mu_;
  double rho_th_;
};

}  // namespace txpolicy
