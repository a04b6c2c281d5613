#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wavebreak/hypotheses.hpp"

namespace wavebreak {

namespace {

constexpr std::array<std::pair<Theorem, std::string_view>, 4> kTheorems = {{
    {Theorem::burgers_hilbert, "burgers_hilbert"},
    {Theorem::whitham, "whitham"},
    {Theorem::fkdv, "fkdv"},
    {Theorem::whitham_rescaled, "whitham_rescaled"},
}};

ConditionResult strict(std::string name, double lhs, double rhs) {
  return {std::move(name), lhs, rhs, true};
}

ConditionResult loose(std::string name, double lhs, double rhs) {
  return {std::move(name), lhs, rhs, false};
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::string_view to_string(Theorem th) {
  for (const auto& [t, name] : kTheorems) {
    if (t == th) return name;
  }
  return "unknown";
}

std::optional<Theorem> parse_theorem(std::string_view name) {
  for (const auto& [t, n] : kTheorems) {
    if (n == name) return t;
  }
  return std::nullopt;
}

std::pair<double, double> delta_range(Theorem th, double epsilon) {
  switch (th) {
    case Theorem::burgers_hilbert:
      return {0.0, 1.0 - std::sqrt(3.0) / 2.0};
    case Theorem::whitham:
      return {0.0, 1.0 - 2.0 * std::sqrt(2.0) / 3.0};
    case Theorem::whitham_rescaled:
      return {0.0, std::min(1.0 - 2.0 * std::sqrt(2.0) / 3.0, 0.5 * epsilon)};
    case Theorem::fkdv:
      return {0.0, 0.5};
  }
  return {0.0, 0.0};
}

HypothesisReport check_theorem(const TheoremInputs& in, const NormBundle& nb,
                               const ConstantSet& k, const std::optional<HurConstants>& hur) {
  const double d = in.delta;
  if (in.theorem == Theorem::whitham_rescaled) {
    if (!(in.epsilon > 0.0 && in.epsilon <= 1.0)) {
      throw std::invalid_argument("epsilon must lie in (0, 1], got " + fmt(in.epsilon));
    }
    if (!(d / in.epsilon < 0.5)) {
      throw std::invalid_argument("rescaled theorem needs delta/eps < 1/2, got " + fmt(d / in.epsilon));
    }
  }
  const auto [lo, hi] = delta_range(in.theorem, in.epsilon);
  if (!(d > lo && d <= hi)) {
    throw std::invalid_argument("delta = " + fmt(d) + " outside (" + fmt(lo) + ", " + fmt(hi) + "] for " +
                                std::string(to_string(in.theorem)));
  }
  const bool kernel = in.theorem == Theorem::whitham || in.theorem == Theorem::whitham_rescaled;
  if (kernel) {
    if (!hur) throw std::invalid_argument("the Whitham conditions need kernel constants L0, L_inf");
    const double eps = in.theorem == Theorem::whitham ? 1.0 : in.epsilon;
    if (std::abs(hur->epsilon - eps) > 1e-12 * eps) {
      throw std::invalid_argument("kernel constants were estimated for eps = " + fmt(hur->epsilon));
    }
  }
  if (in.theorem == Theorem::fkdv && !(in.alpha >= -1.0 && in.alpha < 0.0)) {
    throw std::invalid_argument("alpha must lie in [-1, 0), got " + fmt(in.alpha));
  }

  HypothesisReport rep;
  rep.inputs = in;
  rep.norms = nb;
  rep.constants = k;
  rep.hur = hur;
  rep.c0 = in.c0.value_or(2.0 * nb.linf);
  rep.c1 = in.c1.value_or(2.0 * nb.linf_d1);
  const double c0 = rep.c0;
  const double c1 = rep.c1;
  const double m0 = nb.inf_d1;
  const double h2 = nb.h2 * sobolev_penalty(2);
  const double h3 = nb.h3 * sobolev_penalty(3);
  const double d3 = nb.l2_d3;
  const double e = 1.0 - d;
  auto& cs = rep.conditions;

  switch (in.theorem) {
    case Theorem::burgers_hilbert:
      cs.push_back(strict("t1c1", d * d * m0 * m0, k.c_sob * h2 + 4.0 * nb.l2_d1 + 64.0 * k.c_mor * nb.l2_d2));
      cs.push_back(strict("t1c2", -e * e * m0, 6.0 * nb.l2 / c0 + 24.0 * k.c_mor * nb.l2_d1 / c0));
      cs.push_back(strict("t1c3", -e * e * e * m0, 8.0 * nb.l2_d1 / c1 + 128.0 * k.c_mor * nb.l2_d2 / c1));
      break;
    case Theorem::whitham:
    case Theorem::whitham_rescaled: {
      const bool rescaled = in.theorem == Theorem::whitham_rescaled;
      const double l0 = hur->l0;
      const double li = hur->l_inf;
      const double s = rescaled ? std::pow(in.epsilon, 0.25) : 1.0;
      const std::string tag = rescaled ? "rw" : "t2c";
      cs.push_back(strict(tag + "1", d * d * s * m0 * m0,
                          4.0 * l0 * k.c_sob * h3 + 2.0 * c1 * (3.0 * l0 + li) +
                              36.0 * l0 * k.c_gn * std::cbrt(c1) * std::pow(d3, 2.0 / 3.0)));
      cs.push_back(strict(tag + "2", -e * e * s * m0, 8.0 * (3.0 * l0 + li) + 16.0 * l0 * (c1 / c0)));
      cs.push_back(strict(tag + "3", -e * e * e * s * m0,
                          4.0 * (3.0 * l0 + li) + 36.0 * l0 * k.c_gn * std::pow(d3 / c1, 2.0 / 3.0)));
      break;
    }
    case Theorem::fkdv: {
      const double a = in.alpha;
      cs.push_back(strict("t3c1", d * d * m0 * m0,
                          k.c_sob * h2 + 4.0 * c1 / (1.0 + a) +
                              18.0 * k.c_gn / (-a) * std::cbrt(c1) * std::pow(d3, 2.0 / 3.0)));
      cs.push_back(strict("t3c2", -e * e * m0, 8.0 / (-a * (1.0 + a)) + 2.0 / (a * a) * (c1 / c0)));
      cs.push_back(strict("t3c3", -e * e * e * m0,
                          8.0 / (1.0 + a) + 36.0 * k.c_gn / (-a) * std::pow(d3 / c1, 2.0 / 3.0)));
      const double e2 = e * e;
      rep.guards.push_back(strict("alpha below (5(1-d)^2-7)/(7-2(1-d)^2)", (5.0 * e2 - 7.0) / (7.0 - 2.0 * e2), a));
      rep.guards.push_back(loose("(1-d)^(-7/(2(1-d)^2)) <= 16", 16.0, std::pow(e, -7.0 / (2.0 * e2))));
      rep.guards.push_back(
          loose("q exponent >= -2", -(1.0 / 3.0 + 7.0 / (3.0 * e2)) * (1.0 + a) + a, -2.0));
      break;
    }
  }
  const std::string c4 = in.theorem == Theorem::burgers_hilbert ? "t1c4"
                         : in.theorem == Theorem::fkdv          ? "t3c4"
                         : in.theorem == Theorem::whitham       ? "t2c4"
                                                                : "rw4";
  cs.push_back(loose(c4 + " (C0)", 0.5 * c0, nb.linf));
  cs.push_back(loose(c4 + " (C1)", 0.5 * c1, nb.linf_d1));

  rep.pass = true;
  for (const auto& c : cs) rep.pass = rep.pass && c.pass();
  for (const auto& g : rep.guards) rep.pass = rep.pass && g.pass();
  if (rep.pass) {
    if (in.theorem == Theorem::whitham_rescaled) {
      const double de = d / in.epsilon;
      rep.bracket = {-1.0 / (m0 * in.epsilon * (1.0 + de)), -1.0 / (m0 * in.epsilon * (1.0 - de) * (1.0 - de))};
    } else {
      rep.bracket = {-1.0 / (m0 * (1.0 + d)), -1.0 / (m0 * e * e)};
    }
  }
  return rep;
}

HypothesisReport check_theorem(const TheoremInputs& inputs, const Field& phi,
                               const ConstantSet& constants, const std::optional<HurConstants>& hur) {
  return check_theorem(inputs, compute_norms(phi), constants, hur);
}

LambdaSearch find_lambda(const Field& phi0, const TheoremInputs& inputs, const ConstantSet& constants,
                         const std::optional<HurConstants>& hur) {
  const NormBundle base = compute_norms(phi0);
  if (!(base.inf_d1 < 0.0)) {
    throw std::invalid_argument("find_lambda needs inf phi0' < 0, got " + fmt(base.inf_d1));
  }
  auto evaluate = [&](double lambda) {
    TheoremInputs in = inputs;
    if (in.c0) in.c0 = *in.c0 * lambda;
    if (in.c1) in.c1 = *in.c1 * lambda;
    return check_theorem(in, base.scaled(lambda), constants, hur);
  };
  LambdaSearch out;
  std::optional<int> first;
  for (int k = -20; k <= 40; ++k) {
    const double lambda = std::ldexp(1.0, k);
    const bool pass = evaluate(lambda).pass;
    out.scan.emplace_back(lambda, pass);
    if (pass && !first) first = k;
    if (!pass && first) out.monotone = false;
  }
  if (!first) throw std::runtime_error("no lambda <= 2^40 satisfies the conditions");
  double hi = std::ldexp(1.0, *first);
  if (out.monotone && *first > -20) {
    double lo = 0.5 * hi;
    while (hi / lo > 1.01) {
      const double mid = std::sqrt(lo * hi);
      (evaluate(mid).pass ? hi : lo) = mid;
    }
  }
  out.lambda = hi;
  out.report = evaluate(hi);
  return out;
}

}  // namespace wavebreak
