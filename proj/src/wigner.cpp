#include "photontrain/wigner.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>

namespace photontrain::wigner {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

cpp_int factorial(int n) {
  if (n < 0) throw std::logic_error("factorial of negative argument");
  cpp_int r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// (-1)^k for a doubled-integer exponent that must be even.
int parity(int two_k) {
  if (two_k % 2 != 0) throw std::invalid_argument("non-integer phase exponent");
  return ((two_k / 2) % 2 == 0) ? 1 : -1;
}

// Triangle coefficient Delta(j1 j2 j3) as an exact rational.
cpp_rational triangle_coeff(int two_j1, int two_j2, int two_j3) {
  const int a = (two_j1 + two_j2 - two_j3) / 2;
  const int b = (two_j1 - two_j2 + two_j3) / 2;
  const int c = (-two_j1 + two_j2 + two_j3) / 2;
  const int d = (two_j1 + two_j2 + two_j3) / 2 + 1;
  return cpp_rational(factorial(a) * factorial(b) * factorial(c), factorial(d));
}

bool projection_ok(int two_j, int two_m) {
  return std::abs(two_m) <= two_j && (two_j - two_m) % 2 == 0;
}

}  // namespace

bool triangle_ok(int two_j1, int two_j2, int two_j3) {
  return two_j3 >= std::abs(two_j1 - two_j2) && two_j3 <= two_j1 + two_j2 &&
         (two_j1 + two_j2 + two_j3) % 2 == 0;
}

double three_j(int two_j1, int two_j2, int two_j3,
               int two_m1, int two_m2, int two_m3) {
  if (two_j1 < 0 || two_j2 < 0 || two_j3 < 0)
    throw std::invalid_argument("negative angular momentum");
  if (two_m1 + two_m2 + two_m3 != 0) return 0.0;
  if (!triangle_ok(two_j1, two_j2, two_j3)) return 0.0;
  if (!projection_ok(two_j1, two_m1) || !projection_ok(two_j2, two_m2) ||
      !projection_ok(two_j3, two_m3))
    return 0.0;

  // Racah sum over k with all factorial arguments nonnegative.
  const int kmin = std::max({0, (two_j2 - two_j3 - two_m1) / 2,
                             (two_j1 - two_j3 + two_m2) / 2});
  const int kmax = std::min({(two_j1 + two_j2 - two_j3) / 2,
                             (two_j1 - two_m1) / 2, (two_j2 + two_m2) / 2});
  cpp_rational sum = 0;
  for (int k = kmin; k <= kmax; ++k) {
    cpp_int denom = factorial(k) *
                    factorial((two_j1 + two_j2 - two_j3) / 2 - k) *
                    factorial((two_j1 - two_m1) / 2 - k) *
                    factorial((two_j2 + two_m2) / 2 - k) *
                    factorial((two_j3 - two_j2 + two_m1) / 2 + k) *
                    factorial((two_j3 - two_j1 - two_m2) / 2 + k);
    cpp_rational term(1, denom);
    if (k % 2 != 0) term = -term;
    sum += term;
  }
  if (sum == 0) return 0.0;

  cpp_rational radicand = triangle_coeff(two_j1, two_j2, two_j3);
  radicand *= factorial((two_j1 + two_m1) / 2) * factorial((two_j1 - two_m1) / 2);
  radicand *= factorial((two_j2 + two_m2) / 2) * factorial((two_j2 - two_m2) / 2);
  radicand *= factorial((two_j3 + two_m3) / 2) * factorial((two_j3 - two_m3) / 2);

  const int sign = parity(two_j1 - two_j2 - two_m3);
  return sign * static_cast<double>(sum) *
         std::sqrt(static_cast<double>(radicand));
}

double six_j(int two_j1, int two_j2, int two_j3,
             int two_j4, int two_j5, int two_j6) {
  if (two_j1 < 0 || two_j2 < 0 || two_j3 < 0 || two_j4 < 0 || two_j5 < 0 ||
      two_j6 < 0)
    throw std::invalid_argument("negative angular momentum");
  if (!triangle_ok(two_j1, two_j2, two_j3) ||
      !triangle_ok(two_j1, two_j5, two_j6) ||
      !triangle_ok(two_j4, two_j2, two_j6) ||
      !triangle_ok(two_j4, two_j5, two_j3))
    return 0.0;

  const int s123 = (two_j1 + two_j2 + two_j3) / 2;
  const int s156 = (two_j1 + two_j5 + two_j6) / 2;
  const int s426 = (two_j4 + two_j2 + two_j6) / 2;
  const int s453 = (two_j4 + two_j5 + two_j3) / 2;
  const int p1245 = (two_j1 + two_j2 + two_j4 + two_j5) / 2;
  const int p2356 = (two_j2 + two_j3 + two_j5 + two_j6) / 2;
  const int p3164 = (two_j3 + two_j1 + two_j6 + two_j4) / 2;

  const int tmin = std::max({s123, s156, s426, s453});
  const int tmax = std::min({p1245, p2356, p3164});
  cpp_rational sum = 0;
  for (int t = tmin; t <= tmax; ++t) {
    cpp_int denom = factorial(t - s123) * factorial(t - s156) *
                    factorial(t - s426) * factorial(t - s453) *
                    factorial(p1245 - t) * factorial(p2356 - t) *
                    factorial(p3164 - t);
    cpp_rational term(factorial(t + 1), denom);
    if (t % 2 != 0) term = -term;
    sum += term;
  }
  if (sum == 0) return 0.0;

  cpp_rational radicand = triangle_coeff(two_j1, two_j2, two_j3) *
                          triangle_coeff(two_j1, two_j5, two_j6) *
                          triangle_coeff(two_j4, two_j2, two_j6) *
                          triangle_coeff(two_j4, two_j5, two_j3);
  return static_cast<double>(sum) * std::sqrt(static_cast<double>(radicand));
}

double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2,
                      int two_J, int two_M) {
  if (two_m1 + two_m2 != two_M) return 0.0;
  if (!triangle_ok(two_j1, two_j2, two_J)) return 0.0;
  const double tj = three_j(two_j1, two_j2, two_J, two_m1, two_m2, -two_M);
  if (tj == 0.0) return 0.0;
  const int sign = parity(two_j1 - two_j2 + two_M);
  return sign * std::sqrt(two_J + 1.0) * tj;
}

}  // namespace photontrain::wigner
