#pragma once

#include <vector>

#include "expsum/prony.hpp"

namespace expsum {

/// The published 15-term interpolant of the gdp_hu_eq1 series, with the
/// coefficients exactly as printed (conjugate partners differ in the last
/// few digits).
inline ExponentialModel published_gdp_model() {
  using C = Complex;
  return ExponentialModel({
      {C(0.0195413177087921, -0.0238509487595989), C(0.0890760204993891, 2.84113084888033)},
      {C(0.0195413177087987, 0.0238509487596027), C(0.0890760204993891, -2.84113084888033)},
      {C(0.00571184169812315, 0.00817725276894694), C(0.169771000605162, 2.34979036975419)},
      {C(0.00571184169812215, -0.00817725276894668), C(0.169771000605162, -2.34979036975419)},
      {C(0.0316107337540147, -0.05937760211869), C(0.0790763425127107, 1.99859448050242)},
      {C(0.0316107337540011, 0.0593776021186917), C(0.0790763425127107, -1.99859448050242)},
      {C(0.00956506041001466, -0.181512895422157), C(0.074610789188314, 1.62641831734931)},
      {C(0.00956506041001267, 0.181512895422141), C(0.074610789188314, -1.62641831734931)},
      {C(-0.420119359378276, -0.208128205453835), C(0.0752958024756055, 1.26430179150643)},
      {C(-0.420119359378279, 0.208128205453818), C(0.0752958024756055, -1.26430179150643)},
      {C(-4.89462606606935, -1.04056590652811), C(-0.0220362770633638, 0.587264406873871)},
      {C(-4.89462606606906, 1.04056590652809), C(-0.0220362770633638, -0.587264406873871)},
      {C(42.5506406866118, 1.77635683940025e-15), C(0.0541657791433195, 0.0)},
      {C(1.66084975441488, 7.54428165864417), C(0.0351795930091244, 0.299849579082453)},
      {C(1.6608497544149, -7.54428165864425), C(0.0351795930091244, -0.299849579082453)},
  });
}

}  // namespace expsum
