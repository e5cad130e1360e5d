#include "hclab/verify.hpp"

#include <cmath>

#include "hclab/containers.hpp"
#include "hclab/errors.hpp"
#include "hclab/isoperimetry.hpp"
#include "hclab/profile.hpp"
#include "hclab/sampling.hpp"

namespace hclab {

bool SuiteReport::all_pass() const {
  for (const auto& c : checks)
    if (c.asserted && !c.pass) return false;
  return true;
}

void SuiteReport::add(std::string name, bool pass, std::string detail, bool asserted) {
  checks.push_back({std::move(name), pass, asserted, std::move(detail)});
}

SuiteReport run_iso_suite(const SuiteOptions& o) {
  const int d = o.d > 0 ? o.d : 4;
  const CubeGraph g(d);
  SuiteReport r{"iso", {}};
  if (d <= 5 && d >= 2) {
    const std::size_t top = std::size_t{1} << (d - 2);
    for (std::size_t s = 1; s <= top; ++s) {
      const auto res = iso_scan(g, Parity::Even, s);
      r.add("expansion d=" + std::to_string(d) + " |A|=" + std::to_string(s), res.lemma10_ok,
            "scanned=" + std::to_string(res.scanned) + " min|N(A)|=" + std::to_string(res.min_boundary) +
                " margin=" + std::to_string(res.lemma10_margin));
    }
  }
  IsoScanOptions sym;
  sym.mode = ScanMode::SymmetryReduced;
  for (std::size_t s = 1; s <= 2; ++s) {
    const auto res = iso_scan(g, Parity::Even, s, sym);
    const auto expected = static_cast<long>(d) * static_cast<long>(s) - 2 * static_cast<long>(s) * (static_cast<long>(s) - 1);
    const bool ok = static_cast<long>(res.min_boundary) >= expected;
    r.add("small-set boundary d=" + std::to_string(d) + " |A|=" + std::to_string(s), ok,
          "min|N(A)|=" + std::to_string(res.min_boundary) + " bound=" + std::to_string(expected));
  }
  return r;
}

SuiteReport run_container_suite(const SuiteOptions& o) {
  const int d = o.d > 0 ? o.d : 3;
  if (d < 2 || d > 5) throw DimensionTooLarge("the container suite covers 2 <= d <= 5");
  const auto sources = d <= 4 ? all_small_two_linked(d) : random_small_two_linked(d, 10'000, o.seed);
  HarnessOptions ho;
  ho.c = o.container_c;
  ho.seed = o.seed;
  const auto res = run_container_harness(d, sources, ho);
  SuiteReport r{"containers", {}};
  std::size_t passed = 0;
  for (const auto& row : res.rows) passed += row.pass;
  r.add("stage invariants d=" + std::to_string(d), res.all_pass(),
        std::to_string(passed) + "/" + std::to_string(res.rows.size()) + " rows pass over " +
            std::to_string(sources.size()) + " sources; retries=" + std::to_string(res.total_retries) +
            " repairs=" + std::to_string(res.total_repairs));
  r.add("F' rebuilt from transcript", res.rebuild_mismatches == 0,
        std::to_string(res.rebuild_mismatches) + " mismatches");
  for (std::size_t i = 0; i < std::min<std::size_t>(res.failures.size(), 20); ++i)
    r.add("failure", false, res.failures[i]);
  return r;
}

SuiteReport run_bounds_suite(const SuiteOptions& o) {
  SuiteReport r{"bounds", {}};

  std::size_t cases = 0, bad = 0;
  for (const char* lam : {"1/10", "3/10", "1", "3"}) {
    for (int k = 1; k <= 25; ++k) {
      const Rational delta(k, 50);
      for (unsigned m = 10; m <= 200; ++m) {
        ++cases;
        bad += !hoeffding_check(parse_rational(lam), delta, m).ok;
      }
    }
  }
  r.add("hoeffding grid", bad == 0, std::to_string(cases - bad) + "/" + std::to_string(cases));

  cases = bad = 0;
  for (int x = 1; x <= 50; ++x) {
    for (long D = 0; D <= 3L * x + 10; ++D) {
      const auto t = truncated_exp(D, x);
      ++cases;
      if (t.lower_bound_rhs && t.value.log() > t.lower_bound_rhs->log() + 1e-12) ++bad;
      if (t.upper_tail && t.upper_tail->log() > t.upper_bound_rhs->log() + 1e-12) ++bad;
    }
  }
  r.add("truncated exponential bounds", bad == 0, std::to_string(cases - bad) + "/" + std::to_string(cases));

  const double capture = exp_mass_capture(1e4, 3.0, 2.0);
  r.add("mass capture x=1e4 c1=3 c2=2", capture >= 0.9, "fraction=" + format_fixed(capture, 12));

  double worst = 0.0;
  for (int d = 3; d <= 60; ++d) {
    const double got = z_estimate(1.0, d, Regime::R2).log();
    const double want = std::log(2.0) + 0.5 + std::ldexp(1.0, d - 1) * std::log(2.0);
    worst = std::max(worst, std::abs(got - want) / want);
  }
  r.add("R2 estimate at lambda=1 vs 2 sqrt(e) 2^{2^{d-1}}", worst <= 1e-12, "max relative error=" + format_fixed(worst, 6));

  for (int d = 4; d <= 5; ++d) {
    const auto profile = bivariate_profile(d);
    for (const char* lam : {"1/2", "1", "2"}) {
      const Rational lambda = parse_rational(lam);
      const double l = to_double(lambda);
      const double log_z = log_of(evaluate_partition(profile, lambda));
      const auto [f, ell] = lower_bound_window(l, d, o.epsilon);
      const auto lb = partition_lower_bound(l, d, f, ell);
      const std::string tag = " d=" + std::to_string(d) + " lambda=" + lam;
      r.add("lower bound" + tag, lb.bound.log() <= log_z,
            "log lb=" + format_fixed(lb.bound.log(), 10) + " log Z=" + format_fixed(log_z, 10));
      const auto cls = classify_regime(l, d, o.params);
      if (l > cls.r4_low) {
        const auto ub = partition_upper_bound(l, d, o.params);
        r.add("upper bound" + tag, ub.log() >= log_z, "margin=" + format_fixed(ub.log() - log_z, 10));
      } else {
        r.add("upper bound" + tag, true, "lambda below c log d / d^{1/3}; not asserted", false);
      }
    }
  }
  return r;
}

SuiteReport run_sampler_suite(const SuiteOptions& o) {
  SuiteReport r{"sampler", {}};
  for (int d = 1; d <= 2; ++d) {
    for (double l : {0.5, 1.0, 2.0}) {
      const auto m = transition_model(d, l);
      const double res = detailed_balance_residual(m);
      r.add("detailed balance d=" + std::to_string(d) + " lambda=" + format_double(l), res <= 1e-12,
            "residual=" + format_fixed(res, 4));
    }
  }

  for (int d = 1; d <= 3; ++d) {
    const auto sets = exact_sample(d, 1.0, o.seed + static_cast<std::uint64_t>(d), 100'000);
    const auto profile = bivariate_profile(d);
    // Goodness of fit on |I|.
    const auto sizes = profile.size_counts();
    const double z = to_double(evaluate_partition(profile, Rational(1)));
    std::vector<double> observed(sizes.size(), 0.0), expected(sizes.size(), 0.0);
    for (const auto& s : sets) observed[s.size()] += 1.0;
    std::vector<double> obs, exp;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      const double e = to_double(Rational(sizes[k])) / z * static_cast<double>(sets.size());
      if (e > 0) {
        obs.push_back(observed[k]);
        exp.push_back(e);
      }
    }
    const double p = chi_square_pvalue(obs, exp);
    r.add("exact sampler chi-square d=" + std::to_string(d), p > 0.001, "p=" + format_fixed(p, 6));
  }

  // Exact occupancies on Q_1, Q_2 at lambda = 1: P(0 ∈ I) = 1/3, 2/7; P(I = ∅) = 1/3, 1/7.
  const double occ[] = {1.0 / 3.0, 2.0 / 7.0};
  const double empty[] = {1.0 / 3.0, 1.0 / 7.0};
  for (int d = 1; d <= 2; ++d) {
    GlauberOptions go;
    go.burn_in = 1000;
    go.thin = 1;
    go.samples = 1'000'000;
    const auto res = glauber_run(d, 1.0, o.seed, go);
    const auto idx = static_cast<std::size_t>(d - 1);
    const double z1 = std::abs(res.occupancy_vertex0.mean - occ[idx]) / res.occupancy_vertex0.standard_error;
    const double z2 = std::abs(res.empty_set.mean - empty[idx]) / res.empty_set.standard_error;
    r.add("glauber occupancy d=" + std::to_string(d), z1 <= 3.0,
          "mean=" + format_fixed(res.occupancy_vertex0.mean, 8) + " se=" + format_fixed(res.occupancy_vertex0.standard_error, 4));
    r.add("glauber P(empty) d=" + std::to_string(d), z2 <= 3.0,
          "mean=" + format_fixed(res.empty_set.mean, 8) + " se=" + format_fixed(res.empty_set.standard_error, 4));
  }
  return r;
}

SuiteReport run_suite(std::string_view name, const SuiteOptions& o) {
  if (name == "iso") return run_iso_suite(o);
  if (name == "containers") return run_container_suite(o);
  if (name == "bounds") return run_bounds_suite(o);
  if (name == "sampler") return run_sampler_suite(o);
  throw PreconditionError("unknown suite '" + std::string(name) + "'");
}

}  // namespace hclab
