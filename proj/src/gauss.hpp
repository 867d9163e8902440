#pragma once

// Gauss-Legendre tables on [-1, 1], stored as positive abscissae.

namespace friedrichs::quad {

inline constexpr double kGl8X[4] = {
    0.1834346424956498, 0.5255324099163290,
    0.7966664774136267, 0.9602898564975363,
};
inline constexpr double kGl8W[4] = {
    0.3626837833783620, 0.3137066458778873,
    0.2223810344533745, 0.1012285362903763,
};

inline constexpr double kGl16X[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499,
};
inline constexpr double kGl16W[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541,
};

/// 16-point Gauss-Legendre over [a, b].
template <typename F>
auto gl16(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  auto sum = decltype(f(mid)){};
  for (int i = 0; i < 8; ++i) {
    const double dx = half * kGl16X[i];
    sum += kGl16W[i] * (f(mid + dx) + f(mid - dx));
  }
  return half * sum;
}

/// 8-point Gauss-Legendre over [a, b].
template <typename F>
auto gl8(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  auto sum = decltype(f(mid)){};
  for (int i = 0; i < 4; ++i) {
    const double dx = half * kGl8X[i];
    sum += kGl8W[i] * (f(mid + dx) + f(mid - dx));
  }
  return half * sum;
}

}  // namespace friedrichs::quad
