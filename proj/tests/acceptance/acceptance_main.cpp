// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oqho/cli.hpp"
#include "oqho/errors.hpp"
#include "oqho/json_io.hpp"
#include "oqho/pr_core.hpp"
#include "oqho/reference_example.hpp"
#include "oqho/skew_factor.hpp"
#include "support/random_systems.hpp"

namespace {

using namespace oqho;
using testing::Rng;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (passed) detail = what;
      passed = false;
    }
  }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

class Scratch {
 public:
  Scratch() : dir_(std::filesystem::temp_directory_path() / "oqho_acceptance") {
    std::filesystem::create_directories(dir_);
  }
  ~Scratch() { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const io::Json& j) {
    const auto p = dir_ / name;
    std::ofstream(p) << io::dump(j);
    return p.string();
  }

 private:
  std::filesystem::path dir_;
};

int run_cli(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = cli::run_cli(args, o, e);
  if (out) *out = o.str();
  return code;
}

// 200 random physical systems, n and m cycling through {1, 2, 3}.
struct Corpus {
  std::vector<PmParams> params;
  std::vector<StateSpace> systems;
};

Corpus make_corpus() {
  Rng rng(2024);
  Corpus c;
  for (int i = 0; i < 200; ++i) {
    c.params.push_back(testing::random_pm_params(1 + i % 3, 1 + (i / 3) % 3, rng));
    c.systems.push_back(build_pm_realization(c.params.back()));
  }
  return c;
}

Outcome criterion_1(Scratch& scratch) {
  Outcome o;
  const auto start = Clock::now();
  const std::string in = scratch.write("sec.json", io::to_json(reference_example::transfer_entries()));
  std::string out;
  const int code = run_cli({"check", "--input", in, "--samples", "20"}, &out);
  const double elapsed = seconds_since(start);
  o.require(code == 0, "check exit code " + std::to_string(code));
  if (code == 0) {
    const io::CheckReport r = io::check_report_from_json(io::parse(out));
    o.require(r.frequency.sample_points.size() == 20, "sample count");
    o.require(r.frequency.jj_unitarity_max_residual < 1e-9,
              "(J,J) residual " + sci(r.frequency.jj_unitarity_max_residual));
    o.require(r.frequency.d_orthogonality_residual < 1e-12,
              "D orthogonality residual " + sci(r.frequency.d_orthogonality_residual));
    o.detail = o.passed ? "exit 0, (J,J) residual " + sci(r.frequency.jj_unitarity_max_residual) +
                              ", D residual " + sci(r.frequency.d_orthogonality_residual) +
                              ", " + sci(elapsed) + " s"
                        : o.detail;
  }
  o.require(elapsed < 1.0, "runtime " + sci(elapsed) + " s");
  return o;
}

Outcome criterion_2() {
  Outcome o;
  namespace ref = reference_example;
  const auto entries = ref::transfer_entries();
  const StateSpace ss = build_pm_realization(ref::pm_params());
  Rng rng(7);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const Complex s = testing::random_point(rng);
    const ComplexMatrix g = eval_tf(ss, s);
    for (Index i = 0; i < 4; ++i) {
      for (Index j = 0; j < 4; ++j) {
        const Complex expected =
            i == j ? testing::eval_rational(entries[static_cast<std::size_t>(i)], s) : Complex(0.0);
        worst = std::max(worst, std::abs(g(i, j) - expected) / std::max(1.0, std::abs(expected)));
      }
    }
  }
  o.require(worst < 1e-9, "transfer mismatch " + sci(worst));

  const AcParams ac = pm_to_ac(ref::pm_params());
  const double ds = max_abs(ac.S - ref::s_matrix());
  const double dh = max_abs(doubled_up(ac.H1, ac.H2) - ref::h_doubled());
  const double dn = max_abs(doubled_up(ac.N1, ac.N2) - ref::n_doubled());
  o.require(std::max({ds, dh, dn}) < 1e-12,
            "S/H/N deviation " + sci(ds) + "/" + sci(dh) + "/" + sci(dn));

  // The literal 1/4 at M(3,3) must not reproduce Gamma.
  const StateSpace literal = assemble_pm_realization(ref::literal_m22_params());
  const Complex s(0.7, 0.4);
  const double literal_gap = (eval_tf(literal, s) - eval_tf(ss, s)).norm();
  o.require(literal_gap > 1e-3, "M(3,3) = 1/4 unexpectedly matches");

  if (o.passed) {
    o.detail = "transfer mismatch " + sci(worst) + ", S/H/N deviation " +
               sci(std::max({ds, dh, dn})) + " (M(3,3) = 1/2; 1/4 misses by " + sci(literal_gap) +
               ")";
  }
  return o;
}

Outcome criterion_3() {
  Outcome o;
  const SpectrumReport r = spectrum_report(realize_diagonal(reference_example::transfer_entries()));
  const MultisetMatch p = match_multisets(r.poles, reference_example::poles(), 1e-9);
  const MultisetMatch z = match_multisets(r.zeros, reference_example::zeros(), 1e-9);
  o.require(p.matched, "pole deviation " + sci(p.max_distance));
  o.require(z.matched, "zero deviation " + sci(z.max_distance));
  o.require(r.mirror_symmetric, "mirror_symmetric false");
  o.require(!r.spectrally_generic, "spectrally_generic true");
  if (o.passed) {
    o.detail = "pole/zero deviation " + sci(std::max(p.max_distance, z.max_distance)) +
               ", mirror yes, generic no";
  }
  return o;
}

Outcome criterion_4(const Corpus& corpus) {
  Outcome o;
  const auto start = Clock::now();
  double worst = 0.0;
  int realizable = 0;
  for (const StateSpace& ss : corpus.systems) {
    const PrReport r = check_pr_frequency(ss);
    worst = std::max(worst, r.jj_unitarity_max_residual);
    if (r.verdict == Verdict::kRealizable) ++realizable;
  }
  const double elapsed = seconds_since(start);
  o.require(realizable == 200, std::to_string(realizable) + "/200 certified");
  o.require(worst < 1e-9, "max residual " + sci(worst));
  o.require(elapsed < 10.0, "runtime " + sci(elapsed) + " s");
  if (o.passed) {
    o.detail = "200/200 PR, max (J,J) residual " + sci(worst) + ", " + sci(elapsed) + " s";
  }
  return o;
}

Outcome criterion_5(const Corpus& corpus) {
  Outcome o;
  Rng rng(99);
  double rebuild = 0.0, f_asym = 0.0, r_asym = 0.0;
  int ok = 0;
  for (const StateSpace& ss : corpus.systems) {
    const RealMatrix target = testing::random_ccr(ss.states(), rng);
    try {
      const SynthesisResult r = synthesize(ss, target);
      // Independent re-check at 20 fresh samples.
      const StateSpace rebuilt = assemble_pm_realization(r.params);
      const StateSpace both[] = {ss, rebuilt};
      SampleOptions opts;
      opts.seed = 1000 + static_cast<std::uint64_t>(ok);
      const auto points = sample_points(both, opts);
      if (!points) {
        o.require(false, "could not place samples");
        continue;
      }
      rebuild = std::max({rebuild, r.rebuild_residual, transfer_mismatch(ss, rebuilt, *points)});
      f_asym = std::max(f_asym, r.f_raw_asymmetry);
      r_asym = std::max(r_asym, r.rhat_raw_asymmetry);
      ++ok;
    } catch (const Error& e) {
      o.require(false, std::string("synthesize threw: ") + e.what());
    }
  }
  o.require(ok == 200, std::to_string(ok) + "/200 synthesized");
  o.require(rebuild < 1e-7, "rebuild residual " + sci(rebuild));
  o.require(f_asym < 1e-8, "F raw asymmetry " + sci(f_asym));
  o.require(r_asym < 1e-9, "Rhat asymmetry " + sci(r_asym));
  if (o.passed) {
    o.detail = "200/200 synthesized, rebuild " + sci(rebuild) + ", F asym " + sci(f_asym) +
               ", Rhat asym " + sci(r_asym);
  }
  return o;
}

Outcome criterion_6(Scratch& scratch) {
  Outcome o;
  Rng rng(606);
  int rejected = 0, attributed = 0;
  for (int i = 0; i < 50; ++i) {
    const PmParams p = testing::random_pm_params(1 + i % 3, 1 + (i / 3) % 3, rng);
    const StateSpace good = build_pm_realization(p);
    StateSpace bad = good;
    std::string expected_frequency, expected_time;
    switch (i % 3) {
      case 0: {
        // Symplectic squeeze on D; C is rebuilt from it so only D is off.
        PmParams q = p;
        RealMatrix s = RealMatrix::Identity(p.D.rows(), p.D.rows());
        s(0, 0) = 1.5;
        s(p.channels(), p.channels()) = 1.0 / 1.5;
        q.D = p.D * s;
        bad = assemble_pm_realization(q);
        expected_frequency = "d_orthogonality";
        expected_time = "d_orthosymplectic";
        break;
      }
      case 1:
        bad.C = -good.C;
        expected_frequency = "jj_unitarity";
        expected_time = "output_coupling";
        break;
      default: {
        RealMatrix sym = testing::random_symmetric(good.states(), rng);
        sym /= sym.norm();
        bad.A += 0.5 * std::max(1.0, good.A.norm()) * sym;
        expected_frequency = "jj_unitarity";
        expected_time = "ccr_preservation";
        break;
      }
    }
    const std::string in = scratch.write("neg.json", io::to_json(bad));
    const std::string theta = scratch.write("theta.json", io::to_json(p.Theta));
    std::string out;
    const int code = run_cli({"check", "--input", in, "--theta", theta}, &out);
    if (code == 1) ++rejected;
    if (code == 1 || code == 0) {
      const io::CheckReport r = io::check_report_from_json(io::parse(out));
      const bool freq_ok = r.frequency.dominant_condition.rfind(expected_frequency, 0) == 0;
      const bool time_ok = r.time_domain && r.time_domain->dominant_condition == expected_time;
      if (freq_ok && time_ok) {
        ++attributed;
      } else {
        o.require(false, "case " + std::to_string(i) + ": frequency '" +
                             r.frequency.dominant_condition + "', time domain '" +
                             (r.time_domain ? r.time_domain->dominant_condition : "") +
                             "', expected " + expected_frequency + " / " + expected_time);
      }
    }
  }
  o.require(rejected == 50, std::to_string(rejected) + "/50 rejected with exit 1");
  o.require(attributed == 50, std::to_string(attributed) + "/50 attributed");
  if (o.passed) o.detail = "50/50 rejected with exit 1, 50/50 attributed";
  return o;
}

Outcome criterion_7() {
  Outcome o;
  Rng rng(707);
  double worst = 0.0, worst_gauge = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Index dim = 2 * (1 + i % 10);
    const RealMatrix theta = testing::random_skew(dim, rng);
    const SkewFactorization f = cholesky_like(theta);
    const RealMatrix j = j_matrix(dim);
    worst = std::max(worst, (f.Sigma * j * f.Sigma.transpose() - theta).norm() / theta.norm());
    const RealMatrix g = f.Sigma * testing::random_symplectic(dim, rng);
    worst_gauge = std::max(worst_gauge, (g * j * g.transpose() - theta).norm() / theta.norm());
  }
  o.require(worst < 1e-10, "reconstruction " + sci(worst));
  o.require(worst_gauge < 1e-10, "gauge reconstruction " + sci(worst_gauge));
  if (o.passed) {
    o.detail = "100 matrices, dims 2-20: reconstruction " + sci(worst) + ", with gauge " +
               sci(worst_gauge);
  }
  return o;
}

Outcome criterion_8() {
  Outcome o;
  Rng rng(808);
  double pm = 0.0, ac = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Index n = 1 + i % 3, m = 1 + (i / 3) % 3;
    const PmParams p = testing::random_pm_params(n, m, rng);
    const PmParams pb = ac_to_pm(pm_to_ac(p));
    pm = std::max({pm, max_abs(pb.D - p.D), max_abs(pb.M - p.M), max_abs(pb.R - p.R),
                   max_abs(pb.Theta - p.Theta)});
    const AcParams a = testing::random_ac_params(n, m, rng);
    const AcParams ab = pm_to_ac(ac_to_pm(a));
    ac = std::max({ac, max_abs(ab.S - a.S), max_abs(ab.N1 - a.N1), max_abs(ab.N2 - a.N2),
                   max_abs(ab.H1 - a.H1), max_abs(ab.H2 - a.H2),
                   max_abs(generalized_ccr(ab) - generalized_ccr(a))});
  }
  o.require(pm < 1e-10, "pm -> ac -> pm " + sci(pm));
  o.require(ac < 1e-10, "ac -> pm -> ac " + sci(ac));
  if (o.passed) o.detail = "100 sets: pm->ac->pm " + sci(pm) + ", ac->pm->ac " + sci(ac);
  return o;
}

Outcome criterion_9(const Corpus& corpus) {
  Outcome o;
  double worst = 0.0;
  int mirrored = 0;
  for (const StateSpace& ss : corpus.systems) {
    const SpectrumReport r = spectrum_report(ss, 1e-6);
    worst = std::max(worst, r.max_pairing_distance);
    if (r.mirror_symmetric) ++mirrored;
  }
  o.require(mirrored == 200, std::to_string(mirrored) + "/200 mirrored");
  if (o.passed) o.detail = "200/200 mirrored, max pairing distance " + sci(worst);
  return o;
}

}  // namespace

int main() {
  Scratch scratch;
  const Corpus corpus = make_corpus();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"reference example verdict", [&] { return criterion_1(scratch); }},
      {"reference example parameters", [] { return criterion_2(); }},
      {"reference example spectrum", [] { return criterion_3(); }},
      {"forward property suite", [&] { return criterion_4(corpus); }},
      {"converse property suite", [&] { return criterion_5(corpus); }},
      {"negative suite", [&] { return criterion_6(scratch); }},
      {"skew factorization suite", [] { return criterion_7(); }},
      {"parameterization bijection suite", [] { return criterion_8(); }},
      {"pole/zero mirror suite", [&] { return criterion_9(corpus); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("threw: ") + e.what();
    }
    if (!o.passed) ++failures;
    std::printf("[%s] %zu %s: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
