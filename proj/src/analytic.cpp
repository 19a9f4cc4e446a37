#include "locfree/analytic.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace locfree {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

void require_m(int m) {
  if (m < 4) throw std::invalid_argument("bounds hold for m >= 4");
}

// Conditioning expansion of the two-box backtracking probability over the
// four relevant columns, fully reduced by symmetry:
//   (291/320) rho = 1/8 + sum_i c_i P(config_i)
// with the two branched 3-blocker configurations and the five 4-piece
// chains on the right-hand side.
constexpr double kLhs = 291.0 / 320.0;
constexpr double kRhoConst = 1.0 / 8.0;
constexpr double kBranchCoef[] = {13.0 / 160.0, 3.0 / 20.0};
constexpr double kChainCoef[] = {1.0 / 20.0, 1.0 / 20.0, 1.0 / 64.0, 1.0 / 32.0, 1.0 / 40.0};

// Root in [0, 1) of x^2 - bx + 1 = 0 (the probabilistically meaningful
// fixed point; the other root exceeds 1).
double small_root(double b) { return (b - std::sqrt(b * b - 4.0)) / 2.0; }

// x = 1/8 + x^2/8 + (c/2) x, the chain equation with the 4-piece unknowns
// replaced by c times the chain value.
double chain_fixed_point(double c) { return small_root(8.0 - 4.0 * c); }

// r = (1/4) r + 1/8 + (1/8) r^2 + (1/4) q r for the 2-chain, given the
// 3-chain value q.
double two_chain_fixed_point(double q) { return small_root(6.0 - 2.0 * q); }

}  // namespace

RunConstants e_run_constants(int m) {
  require_m(m);
  const double md = static_cast<double>(m);
  RunConstants c{};
  c.e_s = (kSqrt2 - 1.0) * md;
  c.e_sstar = md / 3.0;
  c.e_stilde = (3.0 * kSqrt2 - 11.0 / 3.0) * md;
  c.e_l = md / 2.0;
  c.e_ones_cap = md / 2.0;
  return c;
}

double n_wedge_t(int terms) {
  if (terms < 1) throw std::invalid_argument("need at least one term");
  double sum = 1.0;
  double central = 1.0;  // C(2k,k) / 4^k
  double nine_pow = 1.0;
  for (int k = 1; k <= terms; ++k) {
    central *= (2.0 * k - 1.0) / (2.0 * k);
    nine_pow /= 9.0;
    sum += central * 4.0 * nine_pow;  // (1/3)^(2k-1) + (1/3)^(2k) = 4/9^k
  }
  return sum;
}

double reduced_hitting_tail(int k) {
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  double central = 1.0;
  for (int i = 1; i <= k; ++i) central *= (2.0 * i - 1.0) / (2.0 * i);
  return central;
}

Interval rho_bounds() {
  // Lower bound: drop every unknown configuration term.
  const double lo = kRhoConst / kLhs;
  // Upper bound: branched terms <= rho/5, 4-piece chains <= rho/25.
  double transfer = 0.0;
  for (double c : kBranchCoef) transfer += c / 5.0;
  for (double c : kChainCoef) transfer += c / 25.0;
  const double hi = kRhoConst / (kLhs - transfer);
  return {lo, hi};
}

Interval wp_bounds() {
  // Boundary of p < 1/6 + (5/6) p^2: p^2 - (6/5) p + 1/5 = 0, roots 1/5 and 1;
  // the admissible root is the one below 1.
  const double b = 6.0 / 5.0;
  const double hi = (b - std::sqrt(b * b - 4.0 / 5.0)) / 2.0;
  return {1.0 / 6.0, hi};
}

TildePSystem tilde_p_system(int m) {
  require_m(m);
  TildePSystem sys{};
  sys.chain3 = {chain_fixed_point(1.0 / 10.0), chain_fixed_point(1.0 / 5.0)};
  sys.chain2 = {two_chain_fixed_point(sys.chain3.lo), two_chain_fixed_point(sys.chain3.hi)};
  sys.chain4 = (m == 4) ? sys.chain2 : sys.chain3;
  return sys;
}

Interval tilde_e(Interval chain_p, int m) {
  require_m(m);
  if (!(chain_p.lo <= chain_p.hi) || chain_p.lo < 0.0 || chain_p.hi > 1.0)
    throw std::invalid_argument("chain probability interval must lie in [0, 1]");
  const double md = static_cast<double>(m);
  return {(1.0 - chain_p.hi) * md, (1.0 - chain_p.lo) * md};
}

EZeroLadder e_zero_ladder() {
  const TildePSystem sys = tilde_p_system(5);
  const double r = sys.chain2.hi;
  const double q = sys.chain3.hi;
  // The straight 4-chain wraps next to column 0 when m = 4, where its value
  // matches the 2-chain; the ladder keeps the worst case over m >= 4.
  const double s = std::max(q, r);
  EZeroLadder lad{};
  lad.tower3 = 1.0 - r * r * r;
  lad.branch_tower = 1.0 - r * r;
  lad.tower2_chain = 1.0 - q * r * r;
  lad.branch_chain = 1.0 - q * r;
  lad.zigzag = 1.0 - q * r * r;
  lad.chain4 = 1.0 - s * q * r;
  lad.chain3_tower = 1.0 - q * q * r;
  return lad;
}

Interval e_zero_bounds(int m) {
  require_m(m);
  const double md = static_cast<double>(m);
  // (291/320) E(two-box) = 61 m / 160 + sum_i c_i E(config_i).
  constexpr double kEConst = 61.0 / 160.0;
  const EZeroLadder lad = e_zero_ladder();
  const double lower_terms =
      kChainCoef[2] * lad.tower3 + kBranchCoef[0] * lad.branch_tower +
      kChainCoef[3] * lad.tower2_chain + kBranchCoef[1] * lad.branch_chain +
      kChainCoef[0] * lad.zigzag + kChainCoef[1] * lad.chain4 +
      kChainCoef[4] * lad.chain3_tower;
  double coef_sum = 0.0;
  for (double c : kBranchCoef) coef_sum += c;
  for (double c : kChainCoef) coef_sum += c;
  const double lower = (kEConst + lower_terms) / kLhs;
  const double upper = (kEConst + coef_sum) / kLhs;  // every unknown E <= m
  return {lower * md, upper * md};
}

XiDistribution xi_stationary(double rho) {
  if (rho < 0.0 || rho > 1.0) throw std::invalid_argument("rho must lie in [0, 1]");
  const double denom = 3.0 - 2.0 * rho;
  return {2.0 * (1.0 - rho) / denom, (1.0 - rho) / denom, rho / denom};
}

namespace {

double ones_weighted_sum(double rho) {
  const XiDistribution pi = xi_stationary(rho);
  const double e_sstar = 1.0 / 3.0;
  const double e_stilde = 3.0 * kSqrt2 - 11.0 / 3.0;
  const double e_l = 1.0 / 2.0;
  return pi.pi_sstar * e_sstar + pi.pi_stilde * e_stilde + pi.pi_ell * e_l;
}

}  // namespace

double ones_time_avg_bound(Interval rho, int m) {
  require_m(m);
  if (!(rho.lo <= rho.hi) || rho.lo < 0.0 || rho.hi > 1.0)
    throw std::invalid_argument("rho interval must lie in [0, 1]");
  // The weighted sum is not obviously monotone in rho, so take the larger
  // endpoint evaluation.
  return std::max(ones_weighted_sum(rho.lo), ones_weighted_sum(rho.hi));
}

double theorem_bound() {
  const double ones = ones_time_avg_bound(rho_bounds(), 4);
  const double zeros = e_zero_bounds(4).lo / 4.0;
  return ones / (ones + zeros);
}

std::vector<BoundsRow> bounds_report() {
  std::vector<BoundsRow> rows;
  const Interval rho = rho_bounds();
  const Interval wp = wp_bounds();
  const TildePSystem sys = tilde_p_system(5);
  const Interval te2 = tilde_e(sys.chain2, 4);
  const EZeroLadder lad = e_zero_ladder();
  const Interval e0 = e_zero_bounds(4);
  const double ones = ones_time_avg_bound(rho, 4);
  const double zeros = e0.lo / 4.0;
  rows.push_back({"rho_lower", 0.137457, rho.lo});
  rows.push_back({"rho_upper", 0.14599, rho.hi});
  rows.push_back({"wp_lower", 1.0 / 6.0, wp.lo});
  rows.push_back({"wp_upper", 0.2, wp.hi});
  rows.push_back({"ptilde_2chain_lower", 0.180115, sys.chain2.lo});
  rows.push_back({"ptilde_2chain_upper", 0.1806355, sys.chain2.hi});
  rows.push_back({"ptilde_3chain_lower", 0.133939, sys.chain3.lo});
  rows.push_back({"ptilde_3chain_upper", 0.141677, sys.chain3.hi});
  rows.push_back({"etilde_2chain_lower_per_m", 0.8193645, te2.lo / 4.0});
  rows.push_back({"etilde_2chain_upper_per_m", 0.819885, te2.hi / 4.0});
  rows.push_back({"ezero_ladder_tower3", 0.994106, lad.tower3});
  rows.push_back({"ezero_ladder_branch_tower", 0.96737, lad.branch_tower});
  rows.push_back({"ezero_ladder_tower2_chain", 0.995377, lad.tower2_chain});
  rows.push_back({"ezero_ladder_branch_chain", 0.974408, lad.branch_chain});
  rows.push_back({"ezero_ladder_zigzag", 0.995377, lad.zigzag});
  rows.push_back({"ezero_ladder_chain4", 0.995377, lad.chain4});
  rows.push_back({"ezero_ladder_chain3_tower", 0.996374, lad.chain3_tower});
  rows.push_back({"ezero_lower_per_m", 0.85453, e0.lo / 4.0});
  rows.push_back({"ezero_upper_per_m", 0.86255, e0.hi / 4.0});
  rows.push_back({"ones_time_avg_per_m", 0.41884, ones});
  rows.push_back({"theorem_bound", 0.32893, ones / (ones + zeros)});
  rows.push_back({"theorem_bound_published_denominator", 0.32893, ones / (ones + 0.85459)});
  rows.push_back({"n_wedge_t_limit", 3.0 * (kSqrt2 - 1.0), n_wedge_t(60)});
  rows.push_back({"e_s_per_m", kSqrt2 - 1.0, e_run_constants(4).e_s / 4.0});
  rows.push_back({"e_stilde_per_m", 3.0 * kSqrt2 - 11.0 / 3.0, e_run_constants(4).e_stilde / 4.0});
  return rows;
}

std::string bounds_report_text() {
  std::ostringstream os;
  os.precision(10);
  for (const BoundsRow& row : bounds_report()) {
    os << "name = " << row.name << "\n";
    os << "reference = " << row.reference << "\n";
    os << "computed = " << row.computed << "\n";
    os << "abs_diff = " << std::fabs(row.computed - row.reference) << "\n";
    os << "\n";
  }
  return os.str();
}

}  // namespace locfree
