#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wavebreak/field.hpp"
#include "wavebreak/kernel.hpp"

namespace wavebreak {

/// Norms of an initial datum. h1..h3 are the spectral (1+xi^2)^s norms
/// without any equivalence penalty.
struct NormBundle {
  double l2 = 0.0, linf = 0.0;
  double h1 = 0.0, h2 = 0.0, h3 = 0.0;
  double l2_d1 = 0.0, l2_d2 = 0.0, l2_d3 = 0.0;
  double linf_d1 = 0.0, linf_d2 = 0.0, linf_d3 = 0.0;
  double inf_d1 = 0.0;
  double argmin_d1 = 0.0;
  double boundary_decay = 0.0;

  /// Every norm multiplied by s (inf_d1 too); the location is unchanged.
  NormBundle scaled(double s) const;
};

/// With decay_tolerance set, throws std::invalid_argument when phi or one of
/// its first three derivatives exceeds it at the domain boundary.
NormBundle compute_norms(const Field& phi, std::optional<double> decay_tolerance = std::nullopt);

/// Factor applied to spectral H^s norms before they enter a condition.
double sobolev_penalty(int s);

enum class ConstantMode { analytic_admissible, numeric_refine };

struct FamilyMaxima {
  double c_sob = 0.0;
  double c_mor = 0.0;
  double c_gn = 0.0;
  std::size_t members_sob = 0, members_mor = 0, members_gn = 0;
};

struct ConstantSet {
  double c_sob = 1.0;
  double c_mor = 1.0;
  double c_gn = 1.0;
  std::string provenance_sob, provenance_mor, provenance_gn;
  std::optional<FamilyMaxima> family;
};

/// numeric_refine additionally scans the test families and throws
/// std::logic_error if any ratio exceeds an analytic constant.
ConstantSet estimate_constants(ConstantMode mode = ConstantMode::analytic_admissible);

/// Largest ratios found over the stored test families (>= 200 members each).
FamilyMaxima scan_constant_families();

/// Sup of |f(x)-f(y)|/|x-y|^{1/2} over pairs of grid points (every `stride`-th).
double holder_half_bruteforce(const Field& f, std::size_t stride = 1);

enum class Theorem { burgers_hilbert, whitham, fkdv, whitham_rescaled };
std::string_view to_string(Theorem th);
std::optional<Theorem> parse_theorem(std::string_view name);

struct ConditionResult {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool strict = true;  // lhs > rhs when strict, lhs >= rhs otherwise
  double margin() const { return lhs - rhs; }
  bool pass() const { return strict ? lhs > rhs : lhs >= rhs; }
};

struct TheoremInputs {
  Theorem theorem = Theorem::burgers_hilbert;
  double delta = 0.1;
  double alpha = -0.5;    // fkdv
  double epsilon = 1.0;   // whitham_rescaled
  std::optional<double> c0;  // default 2||phi||_inf
  std::optional<double> c1;  // default 2||phi'||_inf
};

struct HypothesisReport {
  TheoremInputs inputs;
  double c0 = 0.0;
  double c1 = 0.0;
  NormBundle norms;
  ConstantSet constants;
  std::optional<HurConstants> hur;
  std::vector<ConditionResult> conditions;
  std::vector<ConditionResult> guards;  // proof-internal smallness requirements (fkdv)
  bool pass = false;
  std::optional<std::pair<double, double>> bracket;
};

/// Admissible delta interval (lo exclusive, hi inclusive) for the theorem.
std::pair<double, double> delta_range(Theorem th, double epsilon = 1.0);

/// Evaluates the sufficient conditions literally. Throws std::invalid_argument
/// for delta (or alpha, eps) out of range or a missing kernel constant set
/// when the theorem needs one.
HypothesisReport check_theorem(const TheoremInputs& inputs, const NormBundle& norms,
                               const ConstantSet& constants,
                               const std::optional<HurConstants>& hur = std::nullopt);
HypothesisReport check_theorem(const TheoremInputs& inputs, const Field& phi,
                               const ConstantSet& constants,
                               const std::optional<HurConstants>& hur = std::nullopt);

struct LambdaSearch {
  double lambda = 0.0;
  HypothesisReport report;
  bool monotone = true;  // no pass -> fail transition seen above the first pass on the scan
  std::vector<std::pair<double, bool>> scan;
};

/// Smallest lambda (to 1%) with lambda*phi0 passing. C0 and C1 scale with
/// lambda unless overridden. Throws std::invalid_argument if inf phi0' >= 0
/// and std::runtime_error when nothing passes up to 2^40.
LambdaSearch find_lambda(const Field& phi0, const TheoremInputs& inputs, const ConstantSet& constants,
                         const std::optional<HurConstants>& hur = std::nullopt);

struct B1Result {
  double f0 = 0.0;
  double rhs = 0.0;  // 4 ||phi||_2^{1/2}
  bool pass = false;
  double t_upper = 0.0;  // 4/F(0) when pass
};

/// F(0) = -int_0^40 (phi(x) - phi(0)) e^{-x} dx by composite Gauss-Legendre.
/// Requires L >= 40.
B1Result check_b1(const Field& phi);

}  // namespace wavebreak
