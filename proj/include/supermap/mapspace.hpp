#pragma once

#include "supermap/geometry.hpp"
#include "supermap/grassmann.hpp"
#include "supermap/morphism.hpp"

#include <optional>
#include <span>
#include <vector>

namespace supermap {

/// A Lambda_n-point of the mapping supermanifold SC(X, Y) for X = R^{p|q}:
/// a morphism R^{p|n+q} -> Y whose first n odd source coordinates are the
/// generators eta_1..eta_n.
struct MappingPoint {
  int n = 0;
  SuperMorphism morphism;

  int p() const { return morphism.p; }
  int q() const { return morphism.q - n; }
  void validate() const;

  friend bool operator==(const MappingPoint&, const MappingPoint&) = default;
};

/// (phi, sigma~): phi the classical body map, sigma~ the nilpotent remainder
/// per coordinate direction of Y, all with polynomial coefficients in x.
struct PointPair {
  int n = 0;
  int p = 0;
  int q = 0;
  std::vector<Polynomial> body;             // phi^j(x)
  std::vector<SuperFunction> even_section;  // even, no theta^0 component
  std::vector<SuperFunction> odd_section;   // odd

  friend bool operator==(const PointPair&, const PointPair&) = default;
};

PointPair sc_point_to_pair(const MappingPoint& phi_n);
MappingPoint sc_pair_to_point(const PointPair& pair);

/// SC(rho): substitutes rho(eta_i) for every eta-generator.
MappingPoint sc_functor_action(const GrassmannHom& rho, const MappingPoint& phi_n);

/// Open box constraint on body coordinates, optionally after a polynomial
/// pre-map (used to express chart overlaps in model coordinates).
struct BodyDomain {
  std::vector<Polynomial> premap;  // empty: identity
  std::vector<std::optional<Rational>> lo;
  std::vector<std::optional<Rational>> hi;

  bool contains(std::span<const Rational> body) const;
  bool empty() const;
  static BodyDomain intersect(const BodyDomain& a, const BodyDomain& b);
};

/// One input Grassmann coefficient: coordinate `index` (even or odd) at eta^subset.
struct LambdaCoordinate {
  bool odd = false;
  int index = 0;
  Mask subset = 0;
};

/// Map between Lambda_n-point sets of R^{p|q} and R^{p2|q2}; every output
/// Grassmann coefficient is an exact polynomial in the input coefficients.
class LambdaPointMap {
 public:
  LambdaPointMap() = default;
  LambdaPointMap(int n, int p, int q, int p2, int q2);

  int n() const { return n_; }
  int p() const { return p_; }
  int q() const { return q_; }
  int p2() const { return p2_; }
  int q2() const { return q2_; }

  const std::vector<LambdaCoordinate>& inputs() const { return inputs_; }
  int input_index(bool odd, int index, Mask subset) const;

  /// Polynomial-valued outputs: p2 even coordinates followed by q2 odd ones.
  std::vector<BasicGrassmann<Polynomial>>& outputs() { return outputs_; }
  const std::vector<BasicGrassmann<Polynomial>>& outputs() const { return outputs_; }

  BodyDomain& domain() { return domain_; }
  const BodyDomain& domain() const { return domain_; }

  /// The generic input point: coordinate coefficients are the input variables.
  BasicSuperPoint<Polynomial> symbolic_input() const;

  std::vector<Rational> flatten(const SuperPoint& x) const;
  SuperPoint unflatten(std::span<const Rational> values) const;

  /// Throws DomainError when the body leaves the domain.
  SuperPoint apply(const SuperPoint& x) const;

  /// d outputs[j] / d input v, as jacobian()[v][j].
  std::vector<std::vector<BasicGrassmann<Polynomial>>> jacobian() const;

  /// dF|_kappa(tau), tau given as a point-shaped tangent vector.
  SuperPoint differential(const SuperPoint& kappa, const SuperPoint& tau) const;

 private:
  int n_ = 0, p_ = 0, q_ = 0, p2_ = 0, q2_ = 0;
  std::vector<LambdaCoordinate> inputs_;
  std::vector<BasicGrassmann<Polynomial>> outputs_;
  BodyDomain domain_;
};

/// The Lambda_n-point map of a morphism (symbolic pushforward).
LambdaPointMap lambda_map_from_morphism(const SuperMorphism& phi, int n);

/// Identity on R^{p|q} except that the coefficient of eta^subset in the first
/// even coordinate is squared. Not induced by any morphism.
LambdaPointMap engineered_square_map(int p, int q, int n, Mask subset);

struct SmoothnessWitness {
  SuperPoint kappa;
  SuperPoint tau;
  Grassmann lambda;
  SuperPoint lhs;  // dF(lambda tau)
  SuperPoint rhs;  // lambda dF(tau)
};

struct SmoothnessVerdict {
  bool pass = true;
  std::size_t checks = 0;
  std::optional<SmoothnessWitness> witness;
};

/// Checks dF|_kappa(lambda tau) == lambda dF|_kappa(tau) exactly for every
/// sampled kappa, tau and even lambda.
SmoothnessVerdict supersmooth_check(const LambdaPointMap& F, const std::vector<SuperPoint>& points,
                                    const std::vector<SuperPoint>& tangents, const std::vector<Grassmann>& scalars);

/// Unit tangent per input coefficient: spans every tangent space.
std::vector<SuperPoint> spanning_tangents(const LambdaPointMap& F);
/// Even basis monomials eta^T (T = empty included): spans Lambda_n^ev.
std::vector<Grassmann> spanning_scalars(int n);

struct CancellationReport {
  std::size_t products = 0;        // lambda * kappa_2^J formed, |J| = r, lambda with zero body
  std::size_t nonzero_powers = 0;  // kappa_2^J != 0 among them
  bool all_vanish = true;
};

/// The top-order terms lambda kappa_2^J (|J| = r = floor(n/2)) that drop out of
/// the differential of a degree-r truncation.
CancellationReport lambda_cancellation(const SuperPoint& kappa, const std::vector<Grassmann>& scalars, int r);

/// Chart of a bundle-modeled superdomain over an open box of Y-coordinates:
/// polynomial coordinate map with polynomial inverse, and a fibre frame
/// change with polynomial inverse.
struct SuperChart {
  std::vector<Polynomial> to_model;
  std::vector<Polynomial> from_model;
  std::vector<std::vector<Polynomial>> fibre;
  std::vector<std::vector<Polynomial>> fibre_inverse;
  BodyDomain domain;
};

/// phi_2 phi_1^{-1} on bodies plus the fibre matrix, on chart 1's model coordinates.
struct TransitionData {
  std::vector<Polynomial> body_map;
  std::vector<std::vector<Polynomial>> fibre;
  BodyDomain domain;

  int p() const { return static_cast<int>(body_map.size()); }
  int q() const { return static_cast<int>(fibre.size()); }
};

/// Throws PreconditionError when a supplied inverse is wrong, DomainError on
/// an empty overlap.
TransitionData transition_from_charts(const SuperChart& c1, const SuperChart& c2,
                                      int degree_bound = kDefaultDegreeBound);

/// The transition as a morphism R^{p|q} -> R^{p|q}.
SuperMorphism transition_morphism(const TransitionData& t);

/// phi(nu~) + S^r(body_map)(nu_2) + S^r(fibre)(nu_1) as a Lambda_n-point map,
/// assembled by exp_pair from symbolic Taylor data. r < 0 means floor(n/2).
LambdaPointMap chart_transition_map(const TransitionData& t, int n, int r = -1);

/// Flat Y: the chart at f shifts the body by -f and leaves the nilpotent part.
MappingPoint mapping_chart_flat(const std::vector<Polynomial>& f, const MappingPoint& phi_n);

/// Chart images at sample points (flat backend exact). DomainError names the
/// sample index.
std::vector<SuperPoint> mapping_chart_samples(const GeometryBackend& g, const std::vector<Polynomial>& f,
                                              const MappingPoint& phi_n,
                                              const std::vector<std::vector<Rational>>& x_samples);

ModelPoint to_model_point(const SuperPoint& x);

struct SphereTransitionSample {
  std::vector<Rational> x;
  ModelPoint numeric;       // chart at g of the inverse chart at f
  ModelPoint direct;        // transfer table f -> g
  TransitionData exact_model;
  SuperPoint exact_value;
  double deviation = 0;     // max |exact - numeric| over coefficients
  SmoothnessVerdict smooth;
};

/// Sphere Y: tau is a chart representative at f (target R^{2|2}). At each
/// sample, compares chart_g o chart_f^{-1} against the exact polynomial model
/// obtained by rounding its Taylor data, and checks the model's supersmoothness.
std::vector<SphereTransitionSample> sphere_chart_transitions(const GeometryBackend& g, const std::vector<Vec>& f,
                                                             const std::vector<Vec>& g_points,
                                                             const MappingPoint& tau,
                                                             const std::vector<std::vector<Rational>>& x_samples);

}  // namespace supermap
