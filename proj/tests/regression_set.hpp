#pragma once

// Fixed detector configurations (R = sqrt(pi/2)) covering excitation,
// Ω̃ = 0 and deexcitation, with one-, two- and three-interval supports.

namespace lvbec::regression {

struct Point {
  double omega_tilde;
  double beta;
  double A;
};

inline constexpr Point kPoints[20] = {
    {0.1, 0.6, 3.4},    {0.3, 1.0, 2.5},     {0.3, 0.8, 3.0},   {0.1, 0.4, 2.5},
    {0.01, 0.3, 2.5},   {0.01, 0.2, 3.0},    {0.1, 0.3, 3.4},   {0.01, 0.1, 3.4},
    {0.3, 2.0, 3.4},    {0.0, 0.5, 3.0},     {-0.2, 0.03, 3.4}, {-0.1, 0.03, 3.4},
    {-0.12, 0.05, 3.0}, {-0.15, 0.1, 3.0},   {-0.08, 0.02, 3.4}, {-0.5, 0.5, 2.5},
    {-1.0, 1.0, 3.0},   {-0.01, 0.05, 2.0},  {-0.3, 2.5, 3.4},  {0.05, 1.5, 3.0},
};

}  // namespace lvbec::regression
