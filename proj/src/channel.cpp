#include "txpolicy/channel.hpp"

#include <cmath>

#include "txpolicy/errors.hpp"

namespace txpolicy {

ChannelModel::ChannelModel(double alpha0, double alpha1, double mu, double rho_th)
    : alpha0_(alpha0), alpha1_(alpha1), mu_(mu), rho_th_(rho_th) {
  if (!(alpha0 >= 0.0 && alpha0 <= 1.0) || !(alpha1 >= 0.0 && alpha1 <= 1.0))
    throw ValidationError("channel: alpha0 and alpha1 must lie in [0, 1]");
  if (!(alpha0 <= alpha1))
    throw ValidationError("channel: alpha0 must not exceed alpha1");
  if (!(mu > 0.0) || !std::isfinite(mu))
    throw ValidationError("channel: mu must be positive and finite");
  if (!(rho_th >= 0.0) || !std::isfinite(rho_th))
    throw ValidationError("channel: rho_th must be nonnegative and finite");
}

double ChannelModel::sample_gain(RandomStream& rng) const {
  return -std::log1p(-rng.next_double()) / mu_;
}

double ChannelModel::success_prob_given_gain(double h) const {
  return h >= rho_th_ ? alpha1_ : alpha0_;
}

double ChannelModel::good_state_prob() const { return std::exp(-mu_ * rho_th_); }

double ChannelModel::expected_success_prob() const {
  return alpha0_ + good_state_prob() * (alpha1_ - alpha0_);
}

}  // namespace txpolicy
