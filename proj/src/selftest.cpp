#include "biquot/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <random>

#include "biquot/certify.hpp"
#include "biquot/search.hpp"

namespace biquot {

namespace {

constexpr double kPi = std::numbers::pi;

std::string printf_string(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

double uniform(std::mt19937_64& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

ImQuaternion im_bracket(const ImQuaternion& t, const ImQuaternion& s) {
  const Quaternion ts = Quaternion(t) * Quaternion(s);
  const Quaternion st = Quaternion(s) * Quaternion(t);
  return (ts - st).imag();
}

}  // namespace

bool SelftestReport::passed() const { return first_failure() == nullptr; }

const SuiteResult* SelftestReport::first_failure() const {
  for (const SuiteResult& s : suites)
    if (!s.passed) return &s;
  return nullptr;
}

SuiteResult representation_suite(Phi3Fn phi, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int n = 0; n < samples; ++n) {
    const ImQuaternion t = random_im_quaternion(rng);
    const ImQuaternion s = random_im_quaternion(rng);
    const Sp3Element lhs = bracket(h2_element(t, phi), h2_element(s, phi));
    const Sp3Element rhs = h2_element(im_bracket(t, s), phi);
    const double scale = std::max(1e-300, Quaternion(t).norm() * Quaternion(s).norm());
    worst = std::max(worst, max_abs_diff(lhs, rhs) / scale);
  }
  const bool ok = worst <= 1e-12 && real_rank(h1_basis()) == 3 && real_rank(h2_basis()) == 3;
  return {"representation", ok, printf_string("%d pairs, worst relative homomorphism defect %.3e", samples, worst)};
}

SuiteResult structural_suite(int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double inv = 0.0;
  double nat = 0.0;
  double sym = 0.0;
  for (int n = 0; n < samples; ++n) {
    const ThetaPoint pt = point_p(uniform(rng, 1e-3, kPi / 2 - 1e-3));
    const Sp3Element x = random_sp3(rng);
    const Sp3Element y = random_sp3(rng);
    const Sp3Element ax = adjoint(pt.matrix(), x);
    const Sp3Element ay = adjoint(pt.matrix(), y);
    inv = std::max(inv, std::abs(g0_inner(ax, ay) - g0_inner(x, y)));
    nat = std::max(nat, max_abs_diff(adjoint(pt.matrix(), bracket(x, y)), bracket(ax, ay)));
    const KPDecomposition xs = split_kp(x);
    const KPDecomposition ys = split_kp(y);
    sym = std::max(sym, max_abs_diff(split_kp(bracket(x, y)).k_part,
                                     bracket(xs.k_part, ys.k_part) + bracket(xs.p_part, ys.p_part)));
  }
  const bool ok = inv <= 1e-10 && nat <= 1e-10 && sym <= 1e-10;
  return {"structural", ok,
          printf_string("%d triples, Ad-invariance %.3e, naturality %.3e, symmetric pair %.3e", samples, inv, nat, sym)};
}

SuiteResult display_suite(std::uint64_t seed, std::optional<PConvention>& convention) {
  std::mt19937_64 rng(seed);
  const ImQuaternion units[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  double adp = 0.0;
  for (int n = 0; n < 20; ++n) {
    const double theta = uniform(rng, 1e-3, kPi / 2 - 1e-3);
    const BasisTriple basis = adp_h1_basis(point_p(theta));
    for (int l = 0; l < 3; ++l) adp = std::max(adp, max_abs_diff(basis[l], adp_h1_closed_form(theta, units[l])));
  }

  double plus = 0.0;
  double minus = 0.0;
  for (int n = 0; n < 20; ++n) {
    const ThetaPoint pt = point_p(uniform(rng, 1e-3, kPi / 4 - 1e-3));
    const ReducedPair rp = random_reduced_pair(rng);
    plus = std::max(plus, vw_identity_error(rp, pt, PConvention::kPlusSine));
    minus = std::max(minus, vw_identity_error(rp, pt, PConvention::kMinusSine));
  }
  convention.reset();
  if ((plus <= 1e-10) != (minus <= 1e-10)) convention = plus <= 1e-10 ? PConvention::kPlusSine : PConvention::kMinusSine;

  const bool ok = adp <= 1e-10 && convention.has_value();
  return {"display", ok,
          printf_string("Ad_p h1 closed form %.3e; v,w identity %.3e (plus-sine) %.3e (minus-sine); convention %s", adp,
                        plus, minus, convention ? std::string(to_string(*convention)).c_str() : "unresolved")};
}

SuiteResult equivalence_suite(int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double tol = kSolutionTolerance;
  int mismatches = 0;
  // Counts of (condition holds) per check, so both directions are exercised.
  int a_true = 0, b_true = 0, c_true = 0, all_true = 0;
  int a_false = 0, b_false = 0, c_false = 0, all_false = 0;
  for (double theta : {kPi / 24, kPi / 12, kPi / 8}) {
    const ThetaPoint pt = point_p(theta);
    for (int n = 0; n < samples; ++n) {
      ReducedPair rp = random_reduced_pair(rng);
      switch (n % 5) {
        case 0:
          break;
        case 1:
          rp = enforce_condition_a(rp, pt);
          break;
        case 2:
          rp = construct_ab_solution(pt, 1 + (n / 5) % 2, (n / 10) % 2)
                   .scaled(uniform(rng, 0.1, 10.0), uniform(rng, -10.0, 10.0));
          break;
        case 3:
          rp = enforce_vw_dependence(rp, pt, uniform(rng, -2.0, 2.0));
          break;
        default:
          rp.y1 = rp.y2 = Quaternion{};
          rp.y3 = ImQuaternion{};
          rp = enforce_condition_a(rp, pt);
          break;
      }
      const ConditionResiduals r = lemma_equations_residual(rp, pt);
      const bool a = r.a_res <= tol;
      const bool b = r.b_res <= tol;
      const bool eq_a = r.max_of({Eq::e5i, Eq::e5j, Eq::e5k, Eq::e6i, Eq::e6j, Eq::e6k, Eq::e7i, Eq::e7j, Eq::e7k}) <= tol;
      const bool eq_b = r.max_of({Eq::e1, Eq::e2, Eq::e3}) <= tol;
      const bool all = r.max_condition() <= tol;
      const bool eq_all = r.max_equation() <= tol;
      mismatches += (a != eq_a) + (b != eq_b) + (all != eq_all);
      (a ? a_true : a_false)++;
      (b ? b_true : b_false)++;
      (all ? all_true : all_false)++;
      if (b) {
        const bool c = r.c_res <= tol;
        mismatches += c != (r.max_of({Eq::e3, Eq::e4}) <= tol);
        (c ? c_true : c_false)++;
      }
    }
  }
  const bool covered = a_true && a_false && b_true && b_false && c_true && c_false && all_true && all_false;
  return {"equivalence", mismatches == 0 && covered,
          printf_string("%d mismatches; holds/fails A %d/%d, B %d/%d, C given B %d/%d, all %d/%d", mismatches, a_true,
                        a_false, b_true, b_false, c_true, c_false, all_true, all_false)};
}

SuiteResult kernel_suite(int grid) {
  int bad_dim = 0;
  double worst_match = 1.0;
  const double a = 0.01;
  const double b = kPi / 6 - 0.01;
  for (int n = 0; n < grid; ++n) {
    const double theta = a + (b - a) * n / (grid - 1);
    for (Axis axis : {Axis::j, Axis::k}) {
      const KernelSolution ks = kernel_solution(theta, axis);
      bad_dim += ks.dimension != 1;
      worst_match = std::min(worst_match, abs_cosine(ks.coords, kernel_reference(theta, ks.epsilon)));
    }
  }
  const bool ok = bad_dim == 0 && worst_match >= 1.0 - kMatchTolerance;
  return {"kernel", ok,
          printf_string("%d angles x 2 labels, %d with kernel dimension != 1, worst |cos| deficit %.3e", grid, bad_dim,
                        1.0 - worst_match)};
}

SuiteResult sign_suite(int grid) {
  double worst_sign = -std::numeric_limits<double>::infinity();
  double worst_diff = 0.0;
  const double a = 0.001;
  const double b = kPi / 6 - 0.001;
  for (int n = 0; n < grid; ++n) {
    const double theta = a + (b - a) * n / (grid - 1);
    for (double e : {1.0, -1.0}) {
      const Vec7 k = kernel_reference(theta, e);
      worst_sign = std::max(worst_sign, sign_product(k));
      worst_diff = std::max(worst_diff, std::abs((k[0] - k[3]) - (6.0 - (6.0 + 3.0 * e) * std::cos(theta))));
    }
  }
  const bool ok = worst_sign < 0.0 && worst_diff <= 1e-9;
  return {"sign", ok,
          printf_string("%d angles, max y1(x1-x4) %.3e, x1-x4 closed-form error %.3e", grid, worst_sign, worst_diff)};
}

SuiteResult identities_suite() {
  int failed = 0;
  std::string first;
  const std::vector<IdentityRecord> records = identity_suite();
  for (const IdentityRecord& r : records) {
    if (!r.passed && failed++ == 0) first = r.name;
  }
  return {"identities", failed == 0,
          failed == 0 ? printf_string("%zu identities hold", records.size())
                      : printf_string("%d of %zu fail, first: %s", failed, records.size(), first.c_str())};
}

SuiteResult positivity_suite(int samples, int refine, std::uint64_t seed) {
  const BracketFloor p = bracket_floor(p_basis(), samples, refine, seed);
  const BracketFloor berger = bracket_floor(berger_complement_basis(), samples, refine, seed + 1);
  const bool ok = p.refined_min >= 1e-6 && berger.refined_min >= 1e-6;
  return {"positivity", ok,
          printf_string("min |[X,Y]|^2 on p: sampled %.6e refined %.6e; on h2-complement: sampled %.6e refined %.6e",
                        p.sampled_min, p.refined_min, berger.sampled_min, berger.refined_min)};
}

SelftestReport run_selftest(const SelftestOptions& opts) {
  SelftestReport report;
  report.suites.push_back(representation_suite(opts.phi3, opts.samples, opts.seed));
  report.suites.push_back(structural_suite(opts.samples, opts.seed + 1));
  report.suites.push_back(display_suite(opts.seed + 2, report.convention));
  report.suites.push_back(equivalence_suite(opts.samples, opts.seed + 3));
  report.suites.push_back(kernel_suite(opts.samples));
  report.suites.push_back(sign_suite(10 * opts.samples));
  report.suites.push_back(identities_suite());
  report.suites.push_back(positivity_suite(opts.floor_samples, opts.floor_refine, opts.seed + 4));
  return report;
}

}  // namespace biquot
