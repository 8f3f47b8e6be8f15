#pragma once

#include <vector>

#include "hyplim/angle.hpp"
#include "hyplim/forms.hpp"

namespace hyplim {

// (x, y, theta_1..theta_l), l = floor(k/2).
struct GeomDataReal {
  Eigen::VectorXd x;
  double y = 0.0;
  std::vector<Angle> theta;

  int k() const { return static_cast<int>(x.size()); }
  void validate() const;
};

// (x, t, y, theta_1..theta_k) together with the phase phi, -2 phi = sum theta (mod 2 pi).
// The phase is carried along so that powers stay exact group homomorphisms; make()
// picks phi = -(theta_1 + ... + theta_k)/2 from the principal angles.
struct GeomDataComplex {
  Eigen::VectorXcd x;
  double t = 0.0;
  double y = 0.0;
  std::vector<Angle> theta;
  Angle phase;

  static GeomDataComplex make(Eigen::VectorXcd x, double t, double y, std::vector<Angle> theta);
  static Angle default_phase(const std::vector<Angle>& theta);

  int k() const { return static_cast<int>(x.size()); }
  void validate() const;
};

template <typename Scalar>
struct DataFor;
template <>
struct DataFor<double> {
  using type = GeomDataReal;
};
template <>
struct DataFor<Complex> {
  using type = GeomDataComplex;
};
template <typename Scalar>
using GeomData = typename DataFor<Scalar>::type;

template <typename Data>
using ScalarOf = std::conditional_t<std::is_same_v<Data, GeomDataReal>, double, Complex>;

Eigen::MatrixXd rotation_matrix_real(const std::vector<Angle>& theta, int k);
Eigen::VectorXcd phase_diagonal(const std::vector<Angle>& theta);

// Column k+1 (rows 1..k) of the matrix: the translation part v.
Eigen::VectorXd translation_vector(const GeomDataReal& d);
Eigen::VectorXcd translation_vector(const GeomDataComplex& d);

GroupElement<double> matrix_from_data(const GeomDataReal& d);
GroupElement<Complex> matrix_from_data(const GeomDataComplex& d);

// Data of g^m, m >= 1.
GeomDataReal power_data(const GeomDataReal& d, Exponent m);
GeomDataComplex power_data(const GeomDataComplex& d, Exponent m);

BoundaryPoint<double> repelling_point(const GeomDataReal& d);
BoundaryPoint<Complex> repelling_point(const GeomDataComplex& d);

// Closed-form boundary action of g^N for any integer N.
BoundaryPoint<double> power_action(const GeomDataReal& d, Exponent N, const BoundaryPoint<double>& p);
BoundaryPoint<Complex> power_action(const GeomDataComplex& d, Exponent N, const BoundaryPoint<Complex>& p);

template <typename Scalar>
struct WellPositioned {
  GroupElement<Scalar> conjugator;
  GeomData<Scalar> data;
};

WellPositioned<double> well_position(const GroupElement<double>& g);
WellPositioned<Complex> well_position(const GroupElement<Complex>& g);

// Direct read-out for matrices that are already well positioned.
GeomDataReal data_from_matrix(const GroupElement<double>& g);
GeomDataComplex data_from_matrix(const GroupElement<Complex>& g);

}  // namespace hyplim
