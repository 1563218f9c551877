#pragma once

#include "supermap/verify.hpp"

namespace supermap::verify::detail {

void grassmann_case(CaseContext& c);
void superfun_case(CaseContext& c);
void morphism_case(CaseContext& c);
void jetcalc_case(CaseContext& c);
void geometry_case(CaseContext& c);
void mapspace_case(CaseContext& c);

/// Mixed-parity element: random even part (with body) plus random odd part.
Grassmann random_mixed(Rng& rng, int n, int max_terms = 3);

}  // namespace supermap::verify::detail
