#pragma once

#include <functional>
#include <vector>

#include "txpolicy/rng.hpp"

namespace txpolicy {

// Monotone utility with an explicit functional inverse. Identity unless both
// maps are supplied; supplied maps are probed at construction and again over
// the support of any distribution they are attached to.
class UtilityMap {
 public:
  using Fn = std::function<double(double)>;

  UtilityMap() = default;
  UtilityMap(Fn forward, Fn inverse, double probe_lo, double probe_hi);

  double forward(double x) const { return identity_ ? x : fwd_(x); }
  double inverse(double u) const { return identity_ ? u : inv_(u); }
  bool is_identity() const { return identity_; }

  // strict monotonicity of forward and inverse(forward(x)) == x on 1000 points
  void verify_on(double lo, double hi) const;

 private:
  Fn fwd_;
  Fn inv_;
  bool identity_ = true;
};

enum class ValuationKind { kExponential, kUniform, kDiscrete };

// Probability law of the sensed-data valuation X paired with the utility map.
// Immutable after construction; safe to share across threads.
class ValuationModel {
 public:
  ValuationModel();  // exponential(1), identity utility

  static ValuationModel exponential(double rate, UtilityMap utility = {});
  static ValuationModel uniform(double lower, double upper, UtilityMap utility = {});
  static ValuationModel discrete(std::vector<double> support, std::vector<double> probs,
                                 UtilityMap utility = {});

  ValuationKind kind() const { return kind_; }
  const UtilityMap& utility() const { return utility_; }

  double pdf(double x) const;  // density; probability mass for the discrete kind
  double cdf(double x) const;
  double mean() const;          // E[X]
  double mean_utility() const;  // E[U(X)]
  double prob_ge(double a) const;  // P(X >= a); an atom exactly at a is included
  double tail_utility(double a) const;  // integral of U(x) dF(x) over x >= a
  double quantile(double q) const;      // smallest x with cdf(x) >= q
  double sample(RandomStream& rng) const;

  // parameter accessors; throw ValidationError when the kind does not match
  double rate() const;
  double lower() const;
  double upper() const;
  const std::vector<double>& support() const;
  const std::vector<double>& probabilities() const;

 private:
  ValuationModel(ValuationKind kind, UtilityMap utility);

  ValuationKind kind_;
  UtilityMap utility_;
  double rate_ = 0.0;
  double lower_ = 0.0;
  double upper_ = 0.0;
  std::vector<double> support_;
  std::vector<double> probs_;
};

// Adaptive Simpson integration of f over [a, b] to absolute tolerance tol.
// Throws NonConvergence when the refinement depth is exhausted.
double integrate(const std::function<double(double)>& f, double a, double b, double tol);

}  // namespace txpolicy
