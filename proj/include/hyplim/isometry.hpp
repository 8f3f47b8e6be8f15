#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hyplim/forms.hpp"

namespace hyplim {

struct IsometryClass {
  enum class Kind { Identity, Elliptic, Parabolic, Loxodromic };
  Kind kind = Kind::Identity;
  bool unipotent = false;   // parabolic only
  bool hyperbolic = false;  // loxodromic only

  std::string name() const;
  bool operator==(const IsometryClass& o) const {
    return kind == o.kind && unipotent == o.unipotent && hyperbolic == o.hyperbolic;
  }
};

template <typename Scalar>
struct FixedPointPair {
  BoundaryPoint<Scalar> attracting;
  BoundaryPoint<Scalar> repelling;
};

// Eigenvalues of g, sorted by decreasing modulus.
template <typename Scalar>
std::vector<Complex> spectrum(const GroupElement<Scalar>& g);

// Tolerance separating genuine eigenvalue moduli from the perturbation of a
// Jordan block of size three.
template <typename Scalar>
double spectral_tolerance(const GroupElement<Scalar>& g);

template <typename Scalar>
IsometryClass classify(const GroupElement<Scalar>& g);

template <typename Scalar>
FixedPointPair<Scalar> fixed_points(const GroupElement<Scalar>& g);

template <typename Scalar>
double translation_length(const GroupElement<Scalar>& g);

// g = h e with h hyperbolic, e elliptic, he = eh.
template <typename Scalar>
std::pair<GroupElement<Scalar>, GroupElement<Scalar>> jordan_decompose(const GroupElement<Scalar>& g);

}  // namespace hyplim
