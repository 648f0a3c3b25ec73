#include <cmath>

#include <doctest.h>

#include "txpolicy/channel.hpp"
#include "txpolicy/errors.hpp"

using namespace txpolicy;

namespace {
const ChannelModel kRef(0.2, 0.8, 0.5, 0.5);
}

TEST_CASE("state classification is inclusive at the gain threshold") {
  CHECK(kRef.success_prob_given_gain(0.5) == 0.8);
  CHECK(kRef.success_prob_given_gain(0.49) == 0.2);
  CHECK(kRef.success_prob_given_gain(10.0) == 0.8);
  const ChannelModel flat(0.6, 0.6, 1.0, 1.0);
  CHECK(flat.success_prob_given_gain(0.0) == 0.6);
  CHECK(flat.success_prob_given_gain(5.0) == 0.6);
}

TEST_CASE("expected success probability closed form") {
  CHECK(std::abs(kRef.expected_success_prob() - (0.2 + 0.6 * std::exp(-0.25))) < 1e-15);
  CHECK(std::abs(kRef.expected_success_prob() - 0.667280469842843) < 1e-12);
  CHECK(std::abs(kRef.good_state_prob() - 0.7788007830714049) < 1e-12);

  const ChannelModel always_good(0.2, 0.8, 0.5, 0.0);
  CHECK(always_good.expected_success_prob() == doctest::Approx(0.8).epsilon(1e-15));
  const ChannelModel flat(0.6, 0.6, 2.0, 3.0);
  CHECK(flat.expected_success_prob() == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("expected success stays within the state probabilities and is monotone") {
  RandomStream rng(7);
  for (int i = 0; i < 200; ++i) {
    const double a0 = 0.9 * rng.next_double();
    const double a1 = a0 + (1.0 - a0) * rng.next_double();
    const double mu = 0.05 + 2.0 * rng.next_double();
    const double rho = 2.0 * rng.next_double();
    const ChannelModel ch(a0, a1, mu, rho);
    const double eps = ch.expected_success_prob();
    CHECK(eps >= a0 - 1e-15);
    CHECK(eps <= a1 + 1e-15);
    const ChannelModel harder_rho(a0, a1, mu, rho + 0.3);
    const ChannelModel harder_mu(a0, a1, mu + 0.3, rho);
    CHECK(harder_rho.expected_success_prob() <= eps + 1e-15);
    CHECK(harder_mu.expected_success_prob() <= eps + 1e-15);
  }
}

TEST_CASE("gain sampling matches the exponential law") {
  RandomStream rng(1234);
  const int n = 1000000;
  double acc = 0.0;
  int good = 0;
  for (int i = 0; i < n; ++i) {
    const double h = kRef.sample_gain(rng);
    CHECK(h >= 0.0);
    acc += h;
    if (h >= kRef.rho_th()) ++good;
  }
  CHECK(std::abs(acc / n - 2.0) < 0.02);
  CHECK(std::abs(static_cast<double>(good) / n - kRef.good_state_prob()) < 0.01);
}

TEST_CASE("Monte Carlo success estimate brackets the closed form") {
  RandomStream rng(99);
  const int n = 1000000;
  double acc = 0.0, acc2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double p = kRef.success_prob_given_gain(kRef.sample_gain(rng));
    acc += p;
    acc2 += p * p;
  }
  const double mean = acc / n;
  const double var = (acc2 / n - mean * mean) * n / (n - 1.0);
  const double se = std::sqrt(var / n);
  CHECK(std::abs(mean - kRef.expected_success_prob()) <= 3.0 * se);
}

TEST_CASE("construction rejects invalid channels") {
  CHECK_THROWS_AS(ChannelModel(0.8, 0.2, 0.5, 0.5), ValidationError);
  CHECK_THROWS_AS(ChannelModel(-0.1, 0.8, 0.5, 0.5), ValidationError);
  CHECK_THROWS_AS(ChannelModel(0.2, 1.2, 0.5, 0.5), ValidationError);
  CHECK_THROWS_AS(ChannelModel(0.2, 0.8, 0.0, 0.5), ValidationError);
  CHECK_THROWS_AS(ChannelModel(0.2, 0.8, -1.0, 0.5), ValidationError);
  CHECK_THROWS_AS(ChannelModel(0.2, 0.8, 0.5, -0.5), ValidationError);
}
