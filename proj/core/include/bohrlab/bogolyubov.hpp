#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bohrlab/bohr.hpp"
#include "bohrlab/reps.hpp"
#include "bohrlab/subset.hpp"

namespace bohrlab {

// Fourier coefficients of an indicator over an abelian group, computed by a
// mixed-radix DFT along the cyclic decomposition. coeff[k] = the coefficient
// at the k-th character in characters_abelian order; Parseval is checked to
// 1e-10 at construction.
struct FourierSpectrum {
  GroupPtr group;
  CyclicDecomposition dec;
  double alpha = 0.0;            // density of the analyzed set
  std::vector<Complex> coeff;
  double parseval_error = 0.0;

  Complex character_value(int k, int g) const;
};

FourierSpectrum fourier(const Subset& a);

struct RuzsaResult {
  double alpha = 0.0;
  double rho = 0.0;              // sqrt(alpha / 2)
  std::vector<int> gamma;        // character indices with |coeff| >= rho*alpha
  int spectrum_size = 0;         // |Gamma|, at most 2/alpha^2
  bool trivial = false;          // Gamma empty: B is the whole group
  BohrSet bohr;                  // (sqrt(2), |Gamma|)-Bohr set, diagonal map
};

// Dense-set conclusion for abelian groups: the large spectrum yields a Bohr
// set contained in (A A^-1)^2, verified exhaustively.
RuzsaResult bogolyubov_abelian(const Subset& a);

// eps(first, n): either a constant, kappa * first^a * n^b, or an exact-match
// lookup table. The first slot carries delta in the criteria check and the
// subgroup index m in the bounded-exponent conclusions.
struct EpsFunction {
  enum class Kind { constant, power, table };

  struct Entry {
    double first = 0.0;
    int n = 0;
    double value = 0.0;
  };

  Kind kind = Kind::constant;
  double value = 0.0;                 // constant
  double kappa = 0.0, a = 0.0, b = 0.0;  // power
  std::vector<Entry> entries;         // table

  double operator()(double first, int n) const;

  static EpsFunction constant(double v);
  static EpsFunction power(double kappa, double a, double b);
};

struct CriteriaReport {
  double alpha = 0.0;            // required density
  double density_a = 0.0;
  bool b_in_quad = false;        // (i)   B inside (A A^-1)^2
  bool translate_in_triple = false;  // (ii) some gB inside A A A^-1
  int translate_witness = -1;
  bool small_residue = false;    // (iii) mu(B \ A A^-1) < eps * mu(B)
  double residue_ratio = 0.0;
  double eps_value = 0.0;
  bool all() const { return b_in_quad && translate_in_triple && small_residue; }
};

// Verifies the three desk-scale conclusions of a candidate Bohr set against a
// dense subset. Throws only when density(a) < alpha.
CriteriaReport criteria_check(const Subset& a, const BohrSet& b, double alpha,
                              const EpsFunction& eps);

struct CoveringUpgradeResult {
  double mu_u = 0.0, mu_defect = 0.0;  // mu(U), mu(V \ W)
  bool half_rule_applies = false;      // mu(V\W) < mu(U)/2
  bool u_in_ww_inv = false;
  int genericity_m = 0;
  bool generic_rule_applies = false;   // A given and mu(V\W) < mu(A)/m
  bool translate_found = false;
  int translate_witness = -1;
};

// Upgrades near-covering into exact covering: requires 1 in U, U = U^-1 and
// U^2 inside V. Applicable conclusions are verified exhaustively and a
// failure throws "bound violated".
CoveringUpgradeResult covering_upgrade(const Subset& u, const Subset& v,
                                       const Subset& w,
                                       const std::optional<Subset>& a = {});

struct EpsilonStarResult {
  double value = 0.0;
  long long terms = 0;   // size of the minimized range (1 for the direct form)
  long long argmin = 1;  // m attaining the minimum (bounded form)
};

// Direct form: min(eps(delta/2, n), alpha) * (delta / (2c))^(n^2).
EpsilonStarResult epsilon_star_direct(const EpsFunction& eps, double alpha,
                                      double c, double delta, int n);

// Bounded form: min over 1 <= m <= floor((c / min(delta, gamma_r))^(n^2))
// of eps(m, n) / m, where gamma_r = 2 sin(pi / r).
EpsilonStarResult epsilon_star_bounded(const EpsFunction& eps, double c,
                                       double delta, int r, int n);

struct ScanEntry {
  std::string rep;
  int dim = 0;
  double delta = 0.0;
  bool ruzsa = false;
  bool pass_i = false, pass_ii = false, pass_iii = false;
};

struct SearchOptions {
  std::vector<double> delta_grid{2.0, 1.5, 1.0, 0.75, 0.5};
  bool try_ruzsa = true;  // abelian groups get the spectral witness first
};

struct SearchResult {
  bool found = false;
  std::vector<ScanEntry> log;
  std::optional<BohrSet> bohr;
  std::optional<CriteriaReport> report;
  std::optional<RuzsaResult> ruzsa;  // set when the chosen witness is spectral
};

// Scans candidate (representation, delta) pairs in increasing (dim, 1/delta)
// order and returns the first passing all three criteria, with the full log.
SearchResult bogolyubov_search(const Subset& a, double alpha,
                               const EpsFunction& eps,
                               const SearchOptions& opts = {});

struct QuasirandomReport {
  int d = 0;                   // least nontrivial irreducible dimension
  double alpha = 0.0;
  double threshold = 0.0;      // d^(-1/3)
  bool triple_product_full = false;  // A A A^-1 = G
  double mu_aa_inv = 0.0;
  bool near_full = false;      // mu(A A^-1) > 1 - d^(-1/3)
  bool triple_checked = false; // B and C were given
  bool triple_full = false;    // A B C = G
};

// Quasirandomness conclusions for mu(A) > d^(-1/3); with optional B, C the
// product ABC is checked to be everything when |A||B||C| > |G|^3 / d.
QuasirandomReport quasirandom_check(const Subset& a,
                                    const std::optional<Subset>& b = {},
                                    const std::optional<Subset>& c = {},
                                    std::uint64_t seed = 0x5ca1ab1e);

struct PipelineResult {
  bool found = false;
  std::vector<ScanEntry> log;
  std::string rep;
  int dim = 0;
  double delta_star = 0.0;
  double eps_star = 0.0;
  int index = 0;               // [G : H]
  long long index_bound = 0;   // ceil((c/delta_star)^(n^2))
  bool normal = false;
  GroupPtr subgroup;
  std::vector<int> embedding;
  std::optional<CriteriaReport> conclusions;  // with eps(index, n)
};

// Bounded-exponent pipeline: searches with the bounded-form epsilon*, collapses
// the winning Bohr set at delta* = 2 sin(pi / exponent(G)) into a normal
// subgroup H and re-verifies the conclusions with eps([G:H], n).
PipelineResult bounded_exponent_pipeline(const Subset& a, double alpha,
                                         const EpsFunction& eps,
                                         double c = kDefaultCoveringConstant);

}  // namespace bohrlab
