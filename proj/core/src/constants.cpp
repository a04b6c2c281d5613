#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "wavebreak/hypotheses.hpp"

namespace wavebreak {

namespace {

// log(cosh(y)) without overflow.
double log_cosh(double y) {
  const double a = std::abs(y);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

// Antiderivative of a tanh-smoothed indicator of [l, r], zero at -infinity.
double smoothed_ramp(double x, double l, double r, double sigma) {
  return 0.5 * sigma * (log_cosh((x - l) / sigma) - log_cosh((x - r) / sigma)) + 0.5 * (r - l);
}

double sup(const Field& f) { return norm(f, NormKind::Linf()); }

}  // namespace

FamilyMaxima scan_constant_families() {
  FamilyMaxima out;

  {
    const Grid g = Grid::make(4096, 40.0);
    auto ratio = [&](const std::function<double(double)>& fn) {
      const Field f = Field::sample(g, fn);
      ++out.members_sob;
      out.c_sob = std::max(out.c_sob, sup(f) / norm(f, NormKind::H(1)));
    };
    // e^{-sqrt(x^2+s^2)} approaches the extremal e^{-|x|} as s -> 0.
    for (int i = 0; i < 60; ++i) {
      const double s = 0.05 * std::pow(40.0, i / 59.0);
      ratio([s](double x) { return std::exp(-std::sqrt(x * x + s * s)); });
    }
    for (int i = 0; i < 50; ++i) {
      const double w = 0.3 * std::pow(15.0, i / 49.0);
      ratio([w](double x) { return std::exp(-x * x / (w * w)); });
    }
    for (int i = 0; i < 50; ++i) {
      const double w = 0.2 * std::pow(20.0, i / 49.0);
      ratio([w](double x) { return 1.0 / std::cosh(x / w); });
    }
    for (int i = 0; i < 50; ++i) {
      const double k = 0.1 * i;
      ratio([k](double x) { return std::exp(-x * x / 4.0) * std::cos(k * x); });
    }
  }

  {
    // Rise by 1 over width a, fall back over width w: the ratio tends to
    // 1/sqrt(1 + a/w), approaching the Cauchy-Schwarz bound.
    const Grid g = Grid::make(2048, 64.0);
    const double sigma = 0.15;
    for (double a : {1.0, 1.5, 2.0, 3.0}) {
      for (int i = 0; i < 50; ++i) {
        const double w = a * std::pow((110.0 - a) / a, i / 49.0);
        const double start = -0.5 * (a + w);
        const Field f = Field::sample(g, [=](double x) {
          return smoothed_ramp(x, start, start + a, sigma) / a -
                 smoothed_ramp(x, start + a, start + a + w, sigma) / w;
        });
        const double r = holder_half_bruteforce(f, 2) / norm(derivative(f, 1), NormKind::L2());
        ++out.members_mor;
        out.c_mor = std::max(out.c_mor, r);
      }
    }
  }

  {
    const Grid g = Grid::make(2048, 30.0);
    auto ratio = [&](const std::function<double(double)>& fn) {
      const Field f = Field::sample(g, fn);
      const double num = sup(derivative(f, 2));
      const double den = std::cbrt(sup(derivative(f, 1))) *
                         std::pow(norm(derivative(f, 3), NormKind::L2()), 2.0 / 3.0);
      ++out.members_gn;
      out.c_gn = std::max(out.c_gn, num / den);
    };
    for (int i = 0; i < 60; ++i) {
      const double k = 0.05 * i;
      ratio([k](double x) { return std::exp(-x * x) * std::cos(k * x); });
    }
    for (int i = 0; i < 40; ++i) {
      const double p = 0.5 + 0.1 * i;
      ratio([p](double x) { return std::pow(1.0 / std::cosh(x), p); });
    }
    for (int i = 0; i < 40; ++i) {
      const double p = 2.0 + 0.1 * i;
      ratio([p](double x) { return std::pow(1.0 + x * x, -p); });
    }
    for (int i = 0; i < 30; ++i) {
      const double w = 0.5 + 0.1 * i;
      ratio([w](double x) { return x * std::exp(-x * x / (w * w)); });
    }
    for (int i = 0; i < 40; ++i) {
      const double b = -1.0 + 0.05 * i;
      ratio([b](double x) { return std::exp(-x * x) + b * std::exp(-(x - 1.0) * (x - 1.0) / 0.25); });
    }
  }
  return out;
}

ConstantSet estimate_constants(ConstantMode mode) {
  ConstantSet c;
  c.c_sob = 1.0;
  c.c_mor = 1.0;
  c.c_gn = 3.0 * std::cbrt(1.0 / 24.0);
  c.provenance_sob = "f^2 <= 2||f|| ||f'|| <= ||f||_{H^1}^2";
  c.provenance_mor = "Cauchy-Schwarz on int_y^x f'";
  c.provenance_gn =
      "Taylor bound |g'| <= ||g||_inf/h + ||g''||_2 sqrt(h/6), optimized in h, with g = f'";
  if (mode == ConstantMode::numeric_refine) {
    const FamilyMaxima m = scan_constant_families();
    std::ostringstream os;
    if (m.c_sob > c.c_sob) os << "c_sob family max " << m.c_sob << " exceeds " << c.c_sob << "; ";
    if (m.c_mor > c.c_mor) os << "c_mor family max " << m.c_mor << " exceeds " << c.c_mor << "; ";
    if (m.c_gn > c.c_gn) os << "c_gn family max " << m.c_gn << " exceeds " << c.c_gn << "; ";
    if (!os.str().empty()) throw std::logic_error("admissible constant violated: " + os.str());
    c.family = m;
  }
  return c;
}

}  // namespace wavebreak
