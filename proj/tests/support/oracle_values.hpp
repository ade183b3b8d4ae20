#pragma once

// Reference values from tests/oracles/derive.py (50-digit mpmath). Frozen;
// regenerate with `python3 tests/oracles/derive.py` if a definition changes.

namespace oracle {

inline constexpr double star_inner_light_ring = 1.863389981249824747;  // m = 1, R_b = 2.5
inline constexpr double fluid_ric_r1 = 0.256;                         // m = 1, R_b = 2.5
inline constexpr double fluid_scalar_r1 = 0.768;
inline constexpr double fluid_density = 0.015278874536821952234;

inline constexpr double res_rH_at_2_9 = -0.091954022988505747126;     // m = 1
inline constexpr double res_rH_at_4 = 0.66666666666666666667;
inline constexpr double fermat_residual_r4 = 0.125;
inline constexpr double fermat_residual_r10 = 0.14;

// Compactified reflected end, R in units of 1/m.
inline constexpr double f_T_m1[3] = {0.063772256559021485706, 0.062625219125645650396, 0.062512502187875064464};
inline constexpr double f_R_m1[3] = {0.065073731182674985414, 0.062750720566779208814, 0.06252500718931292705};
inline constexpr double f_T_m2[3] = {1.0203561049443437713, 1.0020035060103304063, 1.0002000350060010314};
inline constexpr double f_R_m2[3] = {1.0411796989227997666, 1.004011529068467341, 1.0004001150290068328};

// Coordinate-sphere mass of u^4 g on the + end, m = 1, r = 50, 100, 200, 400.
inline constexpr double conformal_mass_integrand[4] = {0.010207270297464954371, 0.0050508915654621595259,
                                                       0.0025126104003871464075, 0.0012531387356551508584};

}  // namespace oracle
