#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phibvp/norms.hpp"
#include "phibvp/phi_map.hpp"
#include "phibvp/problem.hpp"
#include "phibvp/rhs.hpp"
#include "phibvp/sampling.hpp"

namespace phibvp {

// Existence-certificate kinds, ordered from growth-only hypotheses to the
// inner-product (Hilbert) chain. `none` means no hypothesis set passed.
enum class TheoremId { thm4_1, thm4_2, thm5_2, thm5_3, cor5_4, none };

std::string to_string(TheoremId id);

// One verified (or failed) hypothesis: a measured quantity against its
// threshold. `threshold` is NaN for checks that are plain flags.
struct HypothesisCheck {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool satisfied = false;
  std::string detail;
};

// Sample achieving the extremal value of an estimated quantity. `t` is NaN
// for time-independent quantities. For pair-based suprema `a` and `b` hold
// the two sampled points; when the right-hand side depends on the derivative
// argument, each point is the concatenation (state, derivative).
struct ExtremalWitness {
  std::string quantity;
  double value = 0.0;
  double t = 0.0;
  std::vector<double> a;
  std::vector<double> b;
};

struct SamplingReport {
  double radius = 0.0;  // final ball radius after the bootstrap
  int samples = 0;
  int t_nodes = 0;
  int rounds = 0;  // bootstrap rounds taken
  std::vector<ExtremalWitness> witnesses;
};

struct Certificate {
  TheoremId theorem = TheoremId::none;
  std::string label;  // always "numerical evidence": constants are sampled, not proved
  std::optional<double> k;
  std::optional<double> c0;
  std::optional<double> c1;
  std::optional<double> k1;
  std::optional<double> beta;
  std::optional<double> R1;
  std::optional<double> L;
  std::optional<double> R;
  std::optional<double> condensing_factor;
  std::vector<HypothesisCheck> verdict;
  SamplingReport sampling_report;
};

struct GronwallBound {
  double beta;
  double R1;
};

// beta = k*c0*T*exp(k*c1*T), R1 = max{beta, beta*T}: the a-priori bound on
// the C1 norm of any fixed point under the growth envelope
// ||f(t,x,y)|| <= c0 + c1*||y||.
GronwallBound gronwall_bound(double k, double c0, double c1, double T);

enum class CondensingMode { banach, hilbert };

struct CondensingResult {
  double factor;
  bool pass;
};

// factor = 2*k*k1 (banach) or k*k1 (hilbert); pass iff strictly below 1.
CondensingResult condensing_check(double k, double k1, CondensingMode mode);

// Sampled lower bound on the Lipschitz constant of phi^{-1} over the ball of
// the plan's radius, inflated by 1.1 and used as the working estimate k.
// Half the pairs are independent draws, half are small perturbations so that
// local suprema of the difference quotient are seen.
double estimate_phi_inverse_lipschitz(const PhiMap& phi, int dim, const SamplingPlan& plan,
                                      VectorNormKind norm = VectorNormKind::euclidean,
                                      ExtremalWitness* witness = nullptr);

// Sampled Lipschitz estimate k1 of f at shared time, inflated by 1.1. When f
// depends on the derivative argument the metric is max{||dx||, ||dy||}.
double estimate_f_lipschitz(const RhsFunction& f, int dim, double T, const SamplingPlan& plan,
                            VectorNormKind norm = VectorNormKind::euclidean,
                            ExtremalWitness* witness = nullptr);

// Candidate c0 estimates above this cap are treated as unbounded-looking
// growth and discarded.
inline constexpr double kGrowthC0Cap = 1e4;

struct GrowthEstimate {
  double c0 = 0.0;
  double c1 = 0.0;
  // False when every candidate slope left a capped intercept: no usable
  // growth envelope on the sampled ball.
  bool ok = false;
  ExtremalWitness witness;
};

// Fits the envelope ||f(t,x,y)|| <= c0 + c1*||y|| on the sampled ball. For
// each slope c1 in {0, 0.25, ..., 4} the intercept is the raw sampled sup of
// ||f|| - c1*||y||; negative intercepts are discarded, surviving ones are
// inflated by 1.1, and the pair minimizing the resulting beta (at the given
// k) wins. Ties prefer the smaller slope.
GrowthEstimate estimate_growth_constants(const RhsFunction& f, int dim, double T, double k,
                                         const SamplingPlan& plan,
                                         VectorNormKind norm = VectorNormKind::euclidean);

struct HilbertConditionReport {
  // min over sampled distinct pairs of <phi(x)-phi(y), x-y>; must be > 0.
  double monotonicity_margin = 0.0;
  // min over sampled (t,x,y) of <f(t,x,y), x> + h(t) - ||f(t,x,y)||; must be >= 0.
  double growth_margin = 0.0;
  bool pass = false;
  ExtremalWitness monotonicity_witness;
  ExtremalWitness growth_witness;
};

// Samples the two standing inner-product hypotheses of the Hilbert chain.
// Requires the euclidean norm and an h function on the problem.
HilbertConditionReport check_hilbert_conditions(const Problem& p, const SamplingPlan& plan);

struct HilbertBound {
  double h_l1;
  double L;
  double R;
};

// ||h||_{L1} by trapezoid quadrature on a fixed fine grid; L = k*||h||_{L1}
// bounds ||u'||_inf since phi(u') stays in the ball of radius ||h||_{L1} and
// phi^{-1} is k-Lipschitz with phi^{-1}(0) = 0; R = max{L, L*T}.
HilbertBound hilbert_bound(const Problem& p, double k);

// Runs the estimators with sub-seeds derived from the plan's seed, bootstraps
// the sampling radius until it covers twice the a-priori bound (at most 5
// rounds), and selects the first certificate whose hypotheses all pass.
// Failures are recorded in the verdict list, never thrown.
Certificate build_certificate(const Problem& p, const SamplingPlan& plan);

// Fixed-key-order JSON rendering of a certificate; doubles with 17
// significant digits, absent constants as null.
std::string certificate_json(const Certificate& c);

}  // namespace phibvp
