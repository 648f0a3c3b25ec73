#include "txpolicy/valuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "txpolicy/errors.hpp"

namespace txpolicy {

namespace {

constexpr double kQuadTol = 1e-10;
constexpr int kMaxDepth = 48;
constexpr int kProbePoints = 1000;

double adaptive_step(const std::function<double(double)>& f, double a, double b, double fa,
                     double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0) throw NonConvergence("quadrature tolerance not reached");
  return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_step(f, a, b, fa, fm, fb, whole, tol, kMaxDepth);
}

UtilityMap::UtilityMap(Fn forward, Fn inverse, double probe_lo, double probe_hi)
    : fwd_(std::move(forward)), inv_(std::move(inverse)), identity_(false) {
  if (!fwd_ || !inv_) throw ValidationError("utility: both forward and inverse maps are required");
  verify_on(probe_lo, probe_hi);
}

void UtilityMap::verify_on(double lo, double hi) const {
  if (identity_) return;
  if (!(lo < hi)) throw ValidationError("utility: probe range is empty");
  double prev = fwd_(lo);
  for (int i = 0; i <= kProbePoints; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / kProbePoints;
    const double u = fwd_(x);
    if (i > 0 && !(u > prev)) throw ValidationError("utility: forward map is not strictly increasing");
    if (std::abs(inv_(u) - x) > 1e-9)
      throw ValidationError("utility: inverse does not invert forward within 1e-9");
    prev = u;
  }
}

ValuationModel::ValuationModel(ValuationKind kind, UtilityMap utility)
    : kind_(kind), utility_(std::move(utility)) {}

ValuationModel::ValuationModel() : ValuationModel(exponential(1.0)) {}

ValuationModel ValuationModel::exponential(double rate, UtilityMap utility) {
  if (!(rate > 0.0) || !std::isfinite(rate))
    throw ValidationError("valuation: exponential rate must be positive and finite");
  ValuationModel m(ValuationKind::kExponential, std::move(utility));
  m.rate_ = rate;
  m.utility_.verify_on(0.0, -std::log(1e-3) / rate);
  return m;
}

ValuationModel ValuationModel::uniform(double lower, double upper, UtilityMap utility) {
  if (!(lower >= 0.0) || !(upper > lower) || !std::isfinite(upper))
    throw ValidationError("valuation: uniform bounds need 0 <= lower < upper < inf");
  ValuationModel m(ValuationKind::kUniform, std::move(utility));
  m.lower_ = lower;
  m.upper_ = upper;
  m.utility_.verify_on(lower, upper);
  return m;
}

ValuationModel ValuationModel::discrete(std::vector<double> support, std::vector<double> probs,
                                        UtilityMap utility) {
  if (support.empty() || support.size() != probs.size())
    throw ValidationError("valuation: discrete support and probs must be nonempty and equal-sized");
  std::vector<std::pair<double, double>> atoms(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (!(support[i] >= 0.0) || !std::isfinite(support[i]))
      throw ValidationError("valuation: discrete support values must be finite and >= 0");
    if (!(probs[i] > 0.0) || !std::isfinite(probs[i]))
      throw ValidationError("valuation: discrete probabilities must be positive");
    atoms[i] = {support[i], probs[i]};
  }
  std::sort(atoms.begin(), atoms.end());
  double total = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i > 0 && atoms[i].first == atoms[i - 1].first)
      throw ValidationError("valuation: discrete support values must be distinct");
    total += atoms[i].second;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw ValidationError("valuation: discrete probabilities must sum to 1 within 1e-12");
  ValuationModel m(ValuationKind::kDiscrete, std::move(utility));
  m.support_.resize(atoms.size());
  m.probs_.resize(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    m.support_[i] = atoms[i].first;
    m.probs_[i] = atoms[i].second;
  }
  if (!m.utility_.is_identity() && m.support_.size() > 1)
    m.utility_.verify_on(m.support_.front(), m.support_.back());
  return m;
}

double ValuationModel::pdf(double x) const {
  switch (kind_) {
    case ValuationKind::kExponential:
      return x < 0.0 ? 0.0 : rate_ * std::exp(-rate_ * x);
    case ValuationKind::kUniform:
      return (x < lower_ || x > upper_) ? 0.0 : 1.0 / (upper_ - lower_);
    case ValuationKind::kDiscrete:
      for (std::size_t i = 0; i < support_.size(); ++i)
        if (support_[i] == x) return probs_[i];
      return 0.0;
  }
  return 0.0;
}

double ValuationModel::cdf(double x) const {
  switch (kind_) {
    case ValuationKind::kExponential:
      return x <= 0.0 ? 0.0 : -std::expm1(-rate_ * x);
    case ValuationKind::kUniform:
      if (x <= lower_) return 0.0;
      if (x >= upper_) return 1.0;
      return (x - lower_) / (upper_ - lower_);
    case ValuationKind::kDiscrete: {
      double acc = 0.0;
      for (std::size_t i = 0; i < support_.size() && support_[i] <= x; ++i) acc += probs_[i];
      return acc;
    }
  }
  return 0.0;
}

double ValuationModel::mean() const {
  switch (kind_) {
    case ValuationKind::kExponential:
      return 1.0 / rate_;
    case ValuationKind::kUniform:
      return 0.5 * (lower_ + upper_);
    case ValuationKind::kDiscrete:
      return std::inner_product(support_.begin(), support_.end(), probs_.begin(), 0.0);
  }
  return 0.0;
}

double ValuationModel::mean_utility() const {
  if (utility_.is_identity()) return mean();
  return tail_utility(0.0);
}

double ValuationModel::prob_ge(double a) const {
  switch (kind_) {
    case ValuationKind::kExponential:
      return a <= 0.0 ? 1.0 : std::exp(-rate_ * a);
    case ValuationKind::kUniform:
      if (a <= lower_) return 1.0;
      if (a >= upper_) return 0.0;
      return (upper_ - a) / (upper_ - lower_);
    case ValuationKind::kDiscrete: {
      double acc = 0.0;
      for (std::size_t i = 0; i < support_.size(); ++i)
        if (support_[i] >= a) acc += probs_[i];
      return acc;
    }
  }
  return 0.0;
}

double ValuationModel::tail_utility(double a) const {
  if (!(a >= 0.0)) throw ValidationError("tail_utility: cutoff must be >= 0");
  switch (kind_) {
    case ValuationKind::kExponential: {
      if (utility_.is_identity()) return std::exp(-rate_ * a) * (a + 1.0 / rate_);
      // truncate where the remaining mass is ~1e-16 of the peak
      const double hi = a + 40.0 / rate_;
      const auto f = [this](double x) { return utility_.forward(x) * pdf(x); };
      return integrate(f, a, hi, kQuadTol);
    }
    case ValuationKind::kUniform: {
      const double lo = std::max(a, lower_);
      if (lo >= upper_) return 0.0;
      if (utility_.is_identity()) return (upper_ * upper_ - lo * lo) / (2.0 * (upper_ - lower_));
      const auto f = [this](double x) { return utility_.forward(x) * pdf(x); };
      return integrate(f, lo, upper_, kQuadTol);
    }
    case ValuationKind::kDiscrete: {
      double acc = 0.0;
      for (std::size_t i = 0; i < support_.size(); ++i)
        if (support_[i] >= a) acc += probs_[i] * utility_.forward(support_[i]);
      return acc;
    }
  }
  return 0.0;
}

double ValuationModel::quantile(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) throw ValidationError("quantile: q must lie in [0, 1]");
  switch (kind_) {
    case ValuationKind::kExponential:
      return q >= 1.0 ? std::numeric_limits<double>::infinity() : -std::log1p(-q) / rate_;
    case ValuationKind::kUniform:
      return lower_ + q * (upper_ - lower_);
    case ValuationKind::kDiscrete: {
      double acc = 0.0;
      for (std::size_t i = 0; i < support_.size(); ++i) {
        acc += probs_[i];
        if (acc >= q) return support_[i];
      }
      return support_.back();
    }
  }
  return 0.0;
}

double ValuationModel::sample(RandomStream& rng) const {
  const double u = rng.next_double();
  switch (kind_) {
    case ValuationKind::kExponential:
      return -std::log1p(-u) / rate_;
    case ValuationKind::kUniform:
      return lower_ + u * (upper_ - lower_);
    case ValuationKind::kDiscrete: {
      double acc = 0.0;
      for (std::size_t i = 0; i < support_.size(); ++i) {
        acc += probs_[i];
        if (u < acc) return support_[i];
      }
      return support_.back();
    }
  }
  return 0.0;
}

double ValuationModel::rate() const {
  if (kind_ != ValuationKind::kExponential) throw ValidationError("valuation: not exponential");
  return rate_;
}

double ValuationModel::lower() const {
  if (kind_ != ValuationKind::kUniform) throw ValidationError("valuation: not uniform");
  return lower_;
}

double ValuationModel::upper() const {
  if (kind_ != ValuationKind::kUniform) throw ValidationError("valuation: not uniform");
  return upper_;
}

const std::vector<double>& ValuationModel::support() const {
  if (kind_ != ValuationKind::kDiscrete) throw ValidationError("valuation: not discrete");
  return support_;
}

const std::vector<double>& ValuationModel::probabilities() const {
  if (kind_ != ValuationKind::kDiscrete) throw ValidationError("valuation: not discrete");
  return probs_;
}

}  // namespace txpolicy
