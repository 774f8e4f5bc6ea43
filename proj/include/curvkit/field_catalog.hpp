#pragma once

// Text specifications of fields, base metrics and ambients.
//
// Fields:
//   zero | const:c | plane:c1,...,cn | paraboloid | cup:w1,...,wn
//   sphere:rho[,offset] | hemisphere:rho | poly:coef@e1.e2...,coef@...
//   bump:c,a[,beta] | random:seed,n | radial:u:a | radial:v:a | rotation-f
//   grid:<path> | fd:<h|auto>:<spec> | scale:c:<spec>
// Bases:    flat | round | round-fd
// Ambients: flat | spherical | conformal:const:c | conformal:exp:k

#include "curvkit/ambient.hpp"
#include "curvkit/fields.hpp"

#include <string_view>
#include <vector>

namespace curvkit {

/// Throws Parse for malformed specs and the field's own errors for bad parameters.
FieldPtr parse_field(std::string_view spec);

MetricPtr parse_base(std::string_view spec);

AmbientSpec parse_ambient(std::string_view spec, MetricPtr base);

/// Comma-separated reals.
std::vector<double> parse_reals(std::string_view text);
double parse_real(std::string_view text);

}  // namespace curvkit
