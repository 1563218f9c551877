#pragma once

#include "supermap/superfun.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace supermap {

/// Morphism R^{p|q} -> R^{p2|q2} given by coordinate pullbacks.
struct SuperMorphism {
  int p = 0;
  int q = 0;
  int p2 = 0;
  int q2 = 0;
  std::vector<SuperFunction> even;  // Phi*(y^1..y^p2), purely even
  std::vector<SuperFunction> odd;   // Phi*(theta'^1..theta'^q2), purely odd

  static SuperMorphism identity(int p, int q);

  /// Throws DimensionError / ParityError when malformed.
  void validate() const;
  int degree() const;

  /// The pullbacks as one Lambda_q-point with polynomial coefficients.
  BasicSuperPoint<Polynomial> symbolic_point() const;
  /// The pullbacks evaluated at body point x, as a Lambda_q-point.
  SuperPoint point_at(std::span<const Rational> x) const;

  friend bool operator==(const SuperMorphism&, const SuperMorphism&) = default;
};

/// Psi o Phi: pullbacks Phi*(Psi*(coords)).
SuperMorphism morphism_compose(const SuperMorphism& psi, const SuperMorphism& phi,
                               int degree_bound = kDefaultDegreeBound);

/// nu^j = sf_eval(Phi*(y^j), mu).
template <class C>
BasicSuperPoint<C> pushforward(const SuperMorphism& phi, const BasicSuperPoint<C>& mu) {
  phi.validate();
  if (mu.p() != phi.p || mu.q() != phi.q) throw DimensionError("pushforward: point is not a point of the source");
  BasicSuperPoint<C> nu;
  nu.n = mu.n;
  for (const auto& f : phi.even) nu.even.push_back(sf_eval(f, mu));
  for (const auto& f : phi.odd) nu.odd.push_back(sf_eval(f, mu));
  return nu;
}

/// Same result as pushforward, computed through Taylor tables of the pullbacks
/// at the body of mu and the exp pairing.
SuperPoint pushforward_general(const SuperMorphism& phi, const SuperPoint& mu);

/// Splits a superfunction on R^{p|n+q} by its dependence on the first n odd
/// coordinates: f = sum_I eta^I f_I with f_I on R^{p|q}. No signs arise since
/// the eta's precede the remaining theta's.
std::map<Mask, SuperFunction> eta_split(const SuperFunction& f, int n);
SuperFunction eta_join(const std::map<Mask, SuperFunction>& parts, int n);

/// The operator g -> Phi_I(g) in Phi*(g) = sum_I eta^I Phi_I(g).
struct EtaCoefficient {
  Mask index = 0;
  int n = 0;
  std::shared_ptr<const SuperMorphism> morphism;
  /// (probe, Phi_I(probe)) for the probes supplied to eta_decompose.
  std::vector<std::pair<SuperFunction, SuperFunction>> table;

  int parity() const { return subset_size(index) % 2; }
  SuperFunction apply(const SuperFunction& g, int degree_bound = kDefaultDegreeBound) const;
  /// Phi_I(g) at body point x: its theta-components as an element of Lambda_{q-n}.
  Grassmann value_at(const SuperFunction& g, std::span<const Rational> x) const;
};

/// One coefficient per eta-subset I of {1..n}, each with its probe table.
std::vector<EtaCoefficient> eta_decompose(const SuperMorphism& phi, int n,
                                          const std::vector<SuperFunction>& probes,
                                          int degree_bound = kDefaultDegreeBound);

/// Which jets a differential operator of order k is blind to.
///  Even:  along the body map; kernel spanned by (y-y0)^A theta'^B, |A| >= k+1.
///  Super: along the super morphism; kernel spanned by (y-y0)^A theta'^B, |A|+|B| >= k+1.
enum class JetMode { Even, Super };

const char* jet_mode_name(JetMode m);

struct OrderCheckOptions {
  int probe_degree = -1;  // highest |A| in kernel probes; -1 means 2k+2
  int trials = 4;         // random (g, g') pairs per body point
  int points = 3;         // body points sampled from the lattice
  std::uint64_t seed = 0;
  std::vector<std::vector<Rational>> body_points;  // overrides sampling when non-empty
};

struct OrderWitness {
  SuperFunction g;
  SuperFunction g2;
  std::vector<Rational> x;
  Grassmann lhs;  // coef(g)(x)
  Grassmann rhs;  // coef(g2)(x)
};

struct OrderVerdict {
  bool pass = true;
  int k = 0;
  JetMode mode = JetMode::Even;
  Mask index = 0;
  std::size_t checks = 0;
  std::optional<OrderWitness> witness;
};

/// PASS iff coef(g)(x) == coef(g')(x) whenever g and g' share their order-k
/// jet at phi(x), over the kernel probe family, random pairs and sampled x.
OrderVerdict order_bound_check(const EtaCoefficient& coef, int k, JetMode mode,
                               const OrderCheckOptions& opts = {});

/// Smallest k <= max_k at which order_bound_check passes, or -1.
int certified_order(const EtaCoefficient& coef, JetMode mode, int max_k, const OrderCheckOptions& opts = {});

/// The lattice points used for body sampling, shuffled by seed.
std::vector<std::vector<Rational>> sample_body_points(int p, int count, std::uint64_t seed);

}  // namespace supermap
