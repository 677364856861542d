#include "smile/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "smile/errors.hpp"

namespace smile::special {

namespace {

// zeta(k) - 1 for k = 2..65. Drives the Taylor series of ln Gamma and digamma
// about 2:
//   ln Gamma(2 + z) = (1 - euler) z + sum_k (-1)^k (zeta(k) - 1) / k z^k
//   psi(2 + z)      = (1 - euler)   + sum_k (-1)^k (zeta(k) - 1) z^(k-1)
// Both converge for |z| < 2; we only use |z| <= 1.
constexpr std::array<double, 64> kZetaMinusOne = {
    6.44934066848226406e-01,  // k = 2
    2.02056903159594292e-01,  // k = 3
    8.23232337111381857e-02,  // k = 4
    3.69277551433699266e-02,  // k = 5
    1.73430619844491402e-02,  // k = 6
    8.34927738192282713e-03,  // k = 7
    4.07735619794433960e-03,  // k = 8
    2.00839282608221426e-03,  // k = 9
    9.94575127818085256e-04,  // k = 10
    4.94188604119464529e-04,  // k = 11
    2.46086553308048320e-04,  // k = 12
    1.22713347578489145e-04,  // k = 13
    6.12481350587048277e-05,  // k = 14
    3.05882363070204933e-05,  // k = 15
    1.52822594086518710e-05,  // k = 16
    7.63719763789976257e-06,  // k = 17
    3.81729326499984022e-06,  // k = 18
    1.90821271655393897e-06,  // k = 19
    9.53962033872796212e-07,  // k = 20
    4.76932986787806447e-07,  // k = 21
    2.38450502727733004e-07,  // k = 22
    1.19219925965311064e-07,  // k = 23
    5.96081890512594801e-08,  // k = 24
    2.98035035146522793e-08,  // k = 25
    1.49015548283650427e-08,  // k = 26
    7.45071178983543006e-09,  // k = 27
    3.72533402478845728e-09,  // k = 28
    1.86265972351304914e-09,  // k = 29
    9.31327432419668166e-10,  // k = 30
    4.65662906503378366e-10,  // k = 31
    2.32831183367650534e-10,  // k = 32
    1.16415501727005193e-10,  // k = 33
    5.82077208790270145e-11,  // k = 34
    2.91038504449710001e-11,  // k = 35
    1.45519218910419849e-11,  // k = 36
    7.27595983505748180e-12,  // k = 37
    3.63797954737865086e-12,  // k = 38
    1.81898965030706607e-12,  // k = 39
    9.09494784026388841e-13,  // k = 40
    4.54747378304215422e-13,  // k = 41
    2.27373684582465244e-13,  // k = 42
    1.13686840768022791e-13,  // k = 43
    5.68434198762758542e-14,  // k = 44
    2.84217097688930200e-14,  // k = 45
    1.42108548280316083e-14,  // k = 46
    7.10542739521085271e-15,  // k = 47
    3.55271369133711393e-15,  // k = 48
    1.77635684357912041e-15,  // k = 49
    8.88178421093081619e-16,  // k = 50
    4.44089210314381313e-16,  // k = 51
    2.22044605079804191e-16,  // k = 52
    1.11022302514106615e-16,  // k = 53
    5.55111512484548099e-17,  // k = 54
    2.77555756213612391e-17,  // k = 55
    1.38777878097252319e-17,  // k = 56
    6.93889390454415344e-18,  // k = 57
    3.46944695216592254e-18,  // k = 58
    1.73472347604757655e-18,  // k = 59
    8.67361738011993300e-19,  // k = 60
    4.33680869002065057e-19,  // k = 61
    2.16840434499721981e-19,  // k = 62
    1.08420217249424142e-19,  // k = 63
    5.42101086245664584e-20,  // k = 64
    2.71050543122346898e-20,  // k = 65
};

constexpr double kEuler = std::numbers::egamma;

// Positive root of digamma, split into a double-double pair.
constexpr double kDigammaRootHi = 1.4616321449683622;
constexpr double kDigammaRootLo = 9.549995429965697e-17;

// B_2k for k = 1..9.
constexpr std::array<double, 9> kBernoulli = {
    1.0 / 6.0,       -1.0 / 30.0,        1.0 / 42.0,
    -1.0 / 30.0,     5.0 / 66.0,         -691.0 / 2730.0,
    7.0 / 6.0,       -3617.0 / 510.0,    43867.0 / 798.0,
};

constexpr double kAsymptoticThreshold = 10.0;

// Terms needed for full double precision at |z| <= 0.5 and |z| <= 1.
constexpr std::size_t kShortSeries = 30;
constexpr std::size_t kLongSeries = kZetaMinusOne.size();

std::size_t series_length(double z) {
  return std::abs(z) <= 0.5 ? kShortSeries : kLongSeries;
}

double signed_zeta_term(std::size_t i) {
  // (-1)^k (zeta(k) - 1) with k = i + 2.
  return (i % 2 == 0) ? kZetaMinusOne[i] : -kZetaMinusOne[i];
}

// ln Gamma(2 + z), |z| <= 1.
double log_gamma_two_plus(double z) {
  double acc = 0.0;
  for (std::size_t i = series_length(z); i-- > 0;) {
    const double k = static_cast<double>(i + 2);
    acc = acc * z + signed_zeta_term(i) / k;
  }
  // acc holds sum_k a_k z^(k-2); two more powers of z plus the linear term.
  return z * ((1.0 - kEuler) + z * acc);
}

// psi(2 + z), |z| <= 1.
double digamma_two_plus(double z) {
  double acc = 0.0;
  for (std::size_t i = series_length(z); i-- > 0;) {
    acc = acc * z + signed_zeta_term(i);
  }
  return (1.0 - kEuler) + z * acc;
}

double log_gamma_stirling(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 0.0;
  double power = inv;
  for (std::size_t i = 0; i < kBernoulli.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    series += kBernoulli[i] / (2.0 * k * (2.0 * k - 1.0)) * power;
    power *= inv2;
  }
  return (x - 0.5) * std::log(x) - x +
         0.5 * std::log(2.0 * std::numbers::pi) + series;
}

double digamma_asymptotic(double x) {
  const double inv2 = 1.0 / (x * x);
  double series = 0.0;
  double power = inv2;
  for (std::size_t i = 0; i < kBernoulli.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    series += kBernoulli[i] / (2.0 * k) * power;
    power *= inv2;
  }
  return std::log(x) - 0.5 / x - series;
}

// Half-width of the window around the root of psi handled by the factored
// form below.
constexpr double kRootWindow = 0.1;
constexpr std::size_t kRootSeries = 40;

// psi near its positive root, written as (x - x0) * R(x) so that the relative
// error stays small next to x0.
double digamma_near_root(double x) {
  const double w = x - 1.0;
  const double w0 = kDigammaRootHi - 1.0;
  double sum = 0.0;
  double h = 1.0;  // complete homogeneous polynomial h_j(w, w0)
  double w0_power = 1.0;
  for (std::size_t i = 0; i < kRootSeries; ++i) {
    sum += signed_zeta_term(i) * h;
    w0_power *= w0;
    h = w * h + w0_power;
  }
  const double x0 = kDigammaRootHi + kDigammaRootLo;
  const double offset = (x - kDigammaRootHi) - kDigammaRootLo;
  return offset * (sum + 1.0 / (x * x0));
}

void require_positive(double x, const char* name) {
  if (!(x > 0.0)) {
    throw DomainError(std::string(name) + " requires a positive argument, got " +
                      std::to_string(x));
  }
}

}  // namespace

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  if (std::isinf(x)) return x;
  if (x < 0.5) return log_gamma_two_plus(x - 1.0) - std::log(x);
  if (x < 1.5) {
    const double z = x - 1.0;
    return log_gamma_two_plus(z) - std::log1p(z);
  }
  if (x < 2.5) return log_gamma_two_plus(x - 2.0);
  if (x < kAsymptoticThreshold) {
    // Shift down into [1.5, 2.5): Gamma(x) = Gamma(y) * y (y+1) ... (x-1).
    const double n = std::floor(x - 1.5);
    const double y = x - n;
    double product = 1.0;
    for (double j = 0.0; j < n; j += 1.0) product *= y + j;
    return log_gamma_two_plus(y - 2.0) + std::log(product);
  }
  return log_gamma_stirling(x);
}

double digamma(double x) {
  require_positive(x, "digamma");
  if (std::isinf(x)) return x;
  if (x <= 0.5) return digamma_two_plus(x) - 1.0 / (x + 1.0) - 1.0 / x;
  if (std::abs(x - kDigammaRootHi) < kRootWindow) return digamma_near_root(x);
  if (x < 1.5) return digamma_two_plus(x - 1.0) - 1.0 / x;
  if (x < kAsymptoticThreshold) {
    // Shift down into [1.5, 2.5): psi(x) = psi(y) + sum_{j<n} 1/(y + j).
    const double n = std::floor(x - 1.5);
    const double y = x - n;
    double tail = 0.0;
    for (double j = 0.0; j < n; j += 1.0) tail += 1.0 / (y + j);
    return digamma_two_plus(y - 2.0) + tail;
  }
  return digamma_asymptotic(x);
}

}  // namespace smile::special
