#include "qwsearch/secular.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qwsearch/errors.hpp"
#include "qwsearch/numeric.hpp"

namespace qwsearch {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Evaluates F and F' at E = pole[origin] + delta. Differences to the other
// poles are formed as (pole[i] - pole[origin]) - delta, which keeps full
// relative precision for roots hugging a pole.
class SecularEvaluator {
 public:
  SecularEvaluator(const LevelSpectrum& ls, double gamma)
      : inv_n_(1.0 / static_cast<double>(ls.num_vertices())) {
    poles_.reserve(ls.levels().size());
    weights_.reserve(ls.levels().size());
    for (const Level& lv : ls.levels()) {
      poles_.push_back(gamma * lv.energy);
      weights_.push_back(static_cast<double>(lv.multiplicity));
    }
  }

  std::size_t size() const { return poles_.size(); }
  double pole(std::size_t i) const { return poles_[i]; }

  struct Value {
    double f;
    double df;
  };

  // Terms are accumulated in order of decreasing |distance|; since the
  // distances increase with the pole index, that order is a merge from both
  // ends of the pole list.
  Value eval(std::size_t origin, double delta) const {
    const double base = poles_[origin];
    numeric::CompensatedSum f, df;
    std::size_t lo = 0, hi = poles_.size();
    while (lo < hi) {
      const double dlo = (poles_[lo] - base) - delta;
      const double dhi = (poles_[hi - 1] - base) - delta;
      double dist;
      std::size_t i;
      if (std::abs(dlo) >= std::abs(dhi)) {
        dist = dlo;
        i = lo++;
      } else {
        dist = dhi;
        i = --hi;
      }
      if (dist == 0.0) {
        throw PoleError("secular function evaluated on a pole");
      }
      const double t = weights_[i] / dist;
      f.add(t);
      df.add(t / dist);
    }
    return {f.value() * inv_n_, df.value() * inv_n_};
  }

  SecularRoot make_root(std::size_t origin, double delta) const {
    const Value v = eval(origin, delta);
    const double energy = poles_[origin] + delta;
    SecularRoot r;
    r.energy = energy;
    r.fprime = v.df;
    r.w_overlap_sq = 1.0 / v.df;
    r.s_overlap_sq = inv_n_ / (energy * energy * v.df);
    return r;
  }

  // Root in interval `k`: k = 0 is (-inf, pole 0), k >= 1 is (pole k-1, pole k).
  SecularRoot solve_interval(std::size_t k) const {
    auto shifted = [this](std::size_t origin) {
      return [this, origin](double d) {
        const Value v = eval(origin, d);
        return std::pair<double, double>{v.f - 1.0, v.df};
      };
    };

    if (k == 0) {
      const double scale = poles_.size() > 1 ? poles_[1] - poles_[0] : 1.0;
      auto f = shifted(0);
      double lo = -(poles_.back() + 1.0);
      for (int i = 0; f(lo).first >= 0.0; ++i) {
        if (i > 200) throw BracketError("ground-state bracket: F never drops below 1");
        lo *= 2.0;
      }
      const double hi = inner_edge(f, scale, +1.0);
      numeric::RootOptions opts;
      opts.abs_width = 1e-13 * (hi - lo);
      return make_root(0, numeric::bracketed_root(f, lo, hi, opts));
    }

    const double a = poles_[k - 1];
    const double b = poles_[k];
    const double span = b - a;
    const double half = 0.5 * span;
    numeric::RootOptions opts;
    opts.abs_width = 1e-13 * span;

    const double at_mid = eval(k - 1, half).f - 1.0;
    if (at_mid == 0.0) return make_root(k - 1, half);
    if (at_mid > 0.0) {
      // Root in (a, a + span/2]; work relative to the left pole.
      auto f = shifted(k - 1);
      const double lo = inner_edge(f, span, -1.0);
      return make_root(k - 1, numeric::bracketed_root(f, lo, half, opts));
    }
    auto f = shifted(k);
    const double hi = inner_edge(f, span, +1.0);
    return make_root(k, numeric::bracketed_root(f, -half, hi, opts));
  }

 private:
  // Finds eps > 0 so that f(-side * eps) has the sign of `side`: start
  // 1e-12 * scale inside the pole and move geometrically toward it.
  template <class F>
  double inner_edge(const F& f, double scale, double side) const {
    double eps = 1e-12 * scale;
    while (true) {
      const double v = f(-side * eps).first;
      if (side > 0.0 ? v > 0.0 : v < 0.0) return -side * eps;
      eps *= 1.0 / 16.0;
      if (eps < std::numeric_limits<double>::min() * 1e10 ||
          eps <= kEps * kEps * scale) {
        throw BracketError("no sign change next to pole; level grouping too coarse?");
      }
    }
  }

  std::vector<double> poles_;
  std::vector<double> weights_;
  double inv_n_;
};

void require_positive_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw RangeError("gamma must be positive and finite, got " + std::to_string(gamma));
  }
}

void guard_pole(const LevelSpectrum& ls, double gamma, double energy) {
  for (const Level& lv : ls.levels()) {
    const double p = gamma * lv.energy;
    if (std::abs(energy - p) <=
        4.0 * kEps * std::max(std::abs(energy), std::abs(p))) {
      throw PoleError("energy " + std::to_string(energy) +
                      " coincides with scaled level " + std::to_string(p));
    }
  }
}

}  // namespace

double secular_value(const LevelSpectrum& ls, double gamma, double energy) {
  guard_pole(ls, gamma, energy);
  return SecularEvaluator(ls, gamma).eval(0, energy).f;
}

double secular_derivative(const LevelSpectrum& ls, double gamma, double energy) {
  guard_pole(ls, gamma, energy);
  return SecularEvaluator(ls, gamma).eval(0, energy).df;
}

std::vector<SecularRoot> lowest_roots(const LevelSpectrum& ls, double gamma,
                                      int count) {
  require_positive_gamma(gamma);
  const SecularEvaluator ev(ls, gamma);
  const std::size_t n = std::min<std::size_t>(ev.size(), static_cast<std::size_t>(
                                                             std::max(count, 0)));
  std::vector<SecularRoot> roots;
  roots.reserve(n);
  for (std::size_t k = 0; k < n; ++k) roots.push_back(ev.solve_interval(k));
  return roots;
}

SecularSpectrum solve_spectrum(const LevelSpectrum& ls, double gamma) {
  const int levels = static_cast<int>(ls.levels().size());
  SecularSpectrum out;
  out.gamma = gamma;
  out.roots = lowest_roots(ls, gamma, levels);
  out.num_vertices = ls.num_vertices();
  out.irrelevant_count = ls.num_vertices() - static_cast<std::int64_t>(out.roots.size());
  return out;
}

GroundAndGap ground_and_gap(const LevelSpectrum& ls, double gamma) {
  const auto r = lowest_roots(ls, gamma, 2);
  return {r[0].energy, r[1].energy, r[1].energy - r[0].energy};
}

}  // namespace qwsearch
