#include "oqho/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <Eigen/LU>
#include <Eigen/QR>

#include "oqho/errors.hpp"
#include "oqho/json_io.hpp"
#include "oqho/reference_example.hpp"
#include "oqho/sampling.hpp"
#include "oqho/skew_factor.hpp"

namespace oqho::cli {
namespace {

struct LoadedSystem {
  StateSpace ss;
  io::Schema schema;
};

LoadedSystem load_system(const std::string& path) {
  const io::Json j = io::read_file(path);
  const io::Schema schema = io::detect_schema(j);
  switch (schema) {
    case io::Schema::kStateSpace:
      return {io::state_space_from_json(j), schema};
    case io::Schema::kRational: {
      const auto entries = io::rational_from_json(j);
      try {
        return {realize_diagonal(entries), schema};
      } catch (const Error& e) {
        throw ParseError(std::string("field '$.entries': ") + e.what());
      }
    }
    default:
      throw ParseError("field '$': expected a state space or rational diagonal input, found " +
                       std::string(io::to_string(schema)));
  }
}

RealMatrix resolve_theta(const std::string& spec, Index states) {
  if (spec == "J") {
    if (states == 0) return RealMatrix(0, 0);
    if (states % 2 != 0) {
      throw DimensionError("--theta J needs an even number of states, the system has " +
                           std::to_string(states));
    }
    return j_matrix(states);
  }
  const io::Json j = io::read_file(spec);
  if (io::detect_schema(j) != io::Schema::kRealMatrix) {
    throw ParseError("field '$': --theta file must hold a real matrix");
  }
  return io::real_matrix_from_json(j);
}

void require_settings(const CliConfig& config, Index states) {
  if (!(config.tol > 0.0)) throw DimensionError("--tol must be positive");
  if (config.samples < states + 1) {
    throw DimensionError("--samples must be at least " + std::to_string(states + 1) +
                         " (one more than the number of states)");
  }
}

SampleOptions sample_options(const CliConfig& config) {
  SampleOptions opts;
  opts.count = config.samples;
  opts.seed = config.seed;
  return opts;
}

// Returns false if the output file could not be written.
bool emit(const CliConfig& config, const std::string& text, std::ostream& out,
          std::ostream& err) {
  if (!config.output_path) {
    out << text;
    return true;
  }
  std::ofstream file(*config.output_path, std::ios::binary);
  file << text;
  if (!file) {
    err << "error: cannot write '" << *config.output_path << "'\n";
    return false;
  }
  return true;
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::kNotRealizable || b == Verdict::kNotRealizable) return Verdict::kNotRealizable;
  if (a == Verdict::kInconclusive || b == Verdict::kInconclusive) return Verdict::kInconclusive;
  return Verdict::kRealizable;
}

std::string fmt(const char* pattern, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, value);
  return buf;
}

std::string format_value(Complex z) {
  auto clean = [](double x) {
    if (std::abs(x) < 1e-9) return 0.0;
    return x;
  };
  const double re = clean(z.real());
  const double im = clean(z.imag());
  if (im == 0.0) return fmt("%.6g", re);
  return fmt("%.6g", re) + (im < 0 ? "-" : "+") + fmt("%.6g", std::abs(im)) + "i";
}

std::string format_list(const std::vector<Complex>& values) {
  std::string s = "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) s += ", ";
    s += format_value(values[i]);
  }
  return s + ")";
}

// Computed values rearranged to follow `reference`, when the two multisets
// pair up; otherwise the computed order is kept.
std::vector<Complex> in_reference_order(const std::vector<Complex>& computed,
                                        const std::vector<Complex>& reference) {
  if (!match_multisets(computed, reference).matched) return computed;
  std::vector<Complex> pool = computed;
  std::vector<Complex> ordered;
  for (const Complex& target : reference) {
    auto best = std::min_element(pool.begin(), pool.end(), [&](Complex a, Complex b) {
      return std::abs(a - target) < std::abs(b - target);
    });
    ordered.push_back(*best);
    pool.erase(best);
  }
  return ordered;
}

Complex horner(const std::vector<double>& coeffs, Complex s) {
  Complex acc = 0.0;
  for (double c : coeffs) acc = acc * s + c;
  return acc;
}

double rational_mismatch(const StateSpace& ss, const std::vector<RationalEntry>& entries,
                         std::span<const Complex> points) {
  double worst = 0.0;
  for (const Complex& s : points) {
    const ComplexMatrix g = eval_tf(ss, s);
    ComplexMatrix target = ComplexMatrix::Zero(g.rows(), g.cols());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto k = static_cast<Index>(i);
      target(k, k) = horner(entries[i].num, s) / horner(entries[i].den, s);
    }
    worst = std::max(worst, (g - target).norm() / std::max(1.0, target.norm()));
  }
  return worst;
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

std::string verdict_line(const PrReport& report) {
  std::string line = std::string(to_string(report.verdict));
  if (!report.failure_reason.empty()) line += ": " + report.failure_reason;
  return line;
}

}  // namespace

int exit_code_for(Verdict v) {
  switch (v) {
    case Verdict::kRealizable:
      return kExitRealizable;
    case Verdict::kNotRealizable:
      return kExitNotRealizable;
    case Verdict::kInconclusive:
      return kExitInconclusive;
  }
  return kExitInconclusive;
}

int cmd_check(const CliConfig& config, std::ostream& out, std::ostream& err) {
  const LoadedSystem loaded = load_system(config.input_path);
  require_settings(config, loaded.ss.states());
  io::CheckReport report;
  report.frequency = check_pr_frequency(loaded.ss, config.tol, sample_options(config));
  report.overall = report.frequency.verdict;
  if (config.theta_spec) {
    const RealMatrix theta = resolve_theta(*config.theta_spec, loaded.ss.states());
    report.time_domain = check_pr_time_domain(loaded.ss, theta, config.tol);
    report.overall = combine(report.overall, report.time_domain->verdict);
  }
  if (!emit(config, io::dump(io::to_json(report)), out, err)) return kExitUsage;
  if (report.overall != Verdict::kRealizable) {
    err << "frequency domain: " << verdict_line(report.frequency) << "\n";
    if (report.time_domain) err << "time domain: " << verdict_line(*report.time_domain) << "\n";
  }
  return exit_code_for(report.overall);
}

int cmd_synthesize(const CliConfig& config, std::ostream& out, std::ostream& err) {
  const LoadedSystem loaded = load_system(config.input_path);
  require_settings(config, loaded.ss.states());
  const Index minimal_states =
      is_minimal(loaded.ss) ? loaded.ss.states() : minimal_realization(loaded.ss).states();
  const RealMatrix theta = resolve_theta(config.theta_spec.value_or("J"), minimal_states);
  SynthesisOptions options;
  options.check_tolerance = config.tol;
  options.samples = sample_options(config);
  const SynthesisResult result = synthesize(loaded.ss, theta, options);
  if (!emit(config, io::dump(io::to_json(result)), out, err)) return kExitUsage;
  return kExitRealizable;
}

int cmd_convert(const CliConfig& config, std::ostream& out, std::ostream& err) {
  const io::Json j = io::read_file(config.input_path);
  const io::Schema schema = io::detect_schema(j);
  std::string direction;
  if (schema == io::Schema::kPmParams) {
    direction = "pm2ac";
  } else if (schema == io::Schema::kAcParams) {
    direction = "ac2pm";
  } else {
    throw ParseError("field '$': convert expects parameter input, found " +
                     std::string(io::to_string(schema)));
  }
  if (config.direction && *config.direction != direction) {
    throw ParseError("field '$': --direction " + *config.direction + " does not match the " +
                     std::string(io::to_string(schema)) + " input");
  }
  const std::string text = direction == "pm2ac"
                               ? io::dump(io::to_json(pm_to_ac(io::pm_params_from_json(j))))
                               : io::dump(io::to_json(ac_to_pm(io::ac_params_from_json(j))));
  return emit(config, text, out, err) ? kExitRealizable : kExitUsage;
}

int cmd_spectrum(const CliConfig& config, std::ostream& out, std::ostream& err) {
  const LoadedSystem loaded = load_system(config.input_path);
  const SpectrumReport report = spectrum_report(loaded.ss);
  return emit(config, io::dump(io::to_json(report)), out, err) ? kExitRealizable : kExitUsage;
}

int cmd_factor(const CliConfig& config, std::ostream& out, std::ostream& err) {
  const io::Json j = io::read_file(config.input_path);
  if (io::detect_schema(j) != io::Schema::kRealMatrix) {
    throw ParseError("field '$': factor expects a real matrix");
  }
  const SkewFactorization f = cholesky_like(io::real_matrix_from_json(j));
  return emit(config, io::dump(io::to_json(f)), out, err) ? kExitRealizable : kExitUsage;
}

int cmd_example(const CliConfig& config, std::ostream& out, std::ostream& err) {
  namespace ref = reference_example;
  std::ostringstream report;
  const auto entries = ref::transfer_entries();
  const StateSpace ss = realize_diagonal(entries);
  const SampleOptions samples = sample_options(config);

  report << "Gamma(s) = diag((s+1)/s, (s-1)/(s+1), s/(s-1), (s-1)/(s+1))\n\n";

  const PrReport check = check_pr_frequency(ss, config.tol, samples);
  const SpectrumReport spectrum = spectrum_report(ss);
  report << "PR: " << (check.verdict == Verdict::kRealizable ? "yes" : "no")
         << "; poles " << format_list(in_reference_order(spectrum.poles, ref::poles()))
         << "; zeros " << format_list(in_reference_order(spectrum.zeros, ref::zeros()))
         << "; generic: " << (spectrum.spectrally_generic ? "yes" : "no") << "\n";
  report << "  verdict                    " << to_string(check.verdict) << "\n";
  report << "  (J,J)-unitarity residual   " << fmt("%.3e", check.jj_unitarity_max_residual)
         << " over " << check.sample_points.size() << " samples\n";
  report << "  D orthogonality residual   " << fmt("%.3e", check.d_orthogonality_residual)
         << "\n";
  report << "  zeros mirror poles         " << (spectrum.mirror_symmetric ? "yes" : "no")
         << " (max pairing distance " << fmt("%.3e", spectrum.max_pairing_distance) << ")\n\n";

  const PmParams reference = ref::pm_params();
  const StateSpace reference_ss = build_pm_realization(reference);
  const StateSpace systems[] = {ss, reference_ss};
  SampleOptions ten = samples;
  ten.count = 10;
  const auto points = sample_points(systems, ten);
  if (!points) throw Error("example: could not place sample points");
  report << "Reference parameters (Theta = J)\n";
  report << "  direct verification residual  "
         << fmt("%.3e", rational_mismatch(reference_ss, entries, *points)) << " (limit 1e-9)\n";
  report << "  with M(3,3) = 1/4 instead      "
         << fmt("%.3e", rational_mismatch(assemble_pm_realization(ref::literal_m22_params()),
                                          entries, *points))
         << " (that value does not reproduce Gamma)\n\n";

  SynthesisOptions options;
  options.check_tolerance = config.tol;
  options.samples = samples;
  const SynthesisResult synth = synthesize(ss, j_matrix(4), options);
  const StateSpace synth_ss = assemble_pm_realization(synth.params);
  report << "Synthesis with Theta = J\n";
  report << "  rebuilt transfer match residual  " << fmt("%.3e", synth.rebuild_residual)
         << " (limit 1e-7)\n";
  report << "  F raw asymmetry                  " << fmt("%.3e", synth.f_raw_asymmetry) << "\n";
  report << "  Rhat raw asymmetry               " << fmt("%.3e", synth.rhat_raw_asymmetry)
         << "\n";
  report << "  max |D - D_ref|                  "
         << fmt("%.3e", max_abs(synth.params.D - reference.D)) << "\n";
  report << "  max |R - R_ref|                  "
         << fmt("%.3e", max_abs(synth.params.R - reference.R)) << "\n";
  report << "  max |M - M_ref|                  "
         << fmt("%.3e", max_abs(synth.params.M - reference.M)) << "\n";

  // Both realizations are minimal for the same Gamma, so one state transform
  // x_ref = T x links them; it must preserve J.
  const RealMatrix k_ref = detail::krylov(reference_ss.A, reference_ss.B);
  const RealMatrix k_syn = detail::krylov(synth_ss.A, synth_ss.B);
  const RealMatrix t =
      k_syn.transpose().colPivHouseholderQr().solve(k_ref.transpose()).transpose();
  const RealMatrix t_inv = t.fullPivLu().inverse();
  report << "  state transform to reference:\n";
  report << "    symplectic residual            " << fmt("%.3e", symplectic_residual(t))
         << "\n";
  report << "    max |M T^-1 - M_ref|           "
         << fmt("%.3e", max_abs(synth.params.M * t_inv - reference.M)) << "\n";
  report << "    max |T^-T R T^-1 - R_ref|      "
         << fmt("%.3e", max_abs(t_inv.transpose() * synth.params.R * t_inv - reference.R))
         << "\n\n";

  const AcParams ac = pm_to_ac(reference);
  const PmParams back = ac_to_pm(ac);
  report << "Annihilation-creation form of the reference parameters\n";
  report << "  max |S - S_ref|                  " << fmt("%.3e", max_abs(ac.S - ref::s_matrix()))
         << "\n";
  report << "  max |H - H_ref|                  "
         << fmt("%.3e", max_abs(doubled_up(ac.H1, ac.H2) - ref::h_doubled())) << "\n";
  report << "  max |N - N_ref|                  "
         << fmt("%.3e", max_abs(doubled_up(ac.N1, ac.N2) - ref::n_doubled())) << "\n";
  report << "  pm -> ac -> pm residual          "
         << fmt("%.3e", std::max({max_abs(back.D - reference.D), max_abs(back.M - reference.M),
                                  max_abs(back.R - reference.R),
                                  max_abs(back.Theta - reference.Theta)}))
         << "\n";
  report << "  realization consistency          "
         << fmt("%.3e", pm_to_ac_realization_consistency(reference)) << "\n";

  return emit(config, report.str(), out, err) ? kExitRealizable : kExitUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Physical realizability of linear quantum systems", "oqho"};
  app.require_subcommand(1);
  CliConfig config;

  auto add_common = [&config](CLI::App* sub, bool needs_input) {
    auto* input = sub->add_option("--input", config.input_path, "input JSON file");
    if (needs_input) input->required();
    sub->add_option("--output", config.output_path, "write the report here instead of stdout");
    sub->add_option("--tol", config.tol, "check tolerance")->capture_default_str();
    sub->add_option("--samples", config.samples, "number of sample frequencies")
        ->capture_default_str();
    sub->add_option("--seed", config.seed, "seed for sample placement")->capture_default_str();
  };

  auto* check = app.add_subcommand("check", "decide physical realizability");
  add_common(check, true);
  check->add_option("--theta", config.theta_spec, "J or a CCR matrix file for the time-domain check");
  auto* synth = app.add_subcommand("synthesize", "construct (D, M, R) for a CCR matrix");
  add_common(synth, true);
  synth->add_option("--theta", config.theta_spec, "J (default) or a CCR matrix file");
  auto* convert = app.add_subcommand("convert", "convert between parameterizations");
  add_common(convert, true);
  convert->add_option("--direction", config.direction, "pm2ac or ac2pm")
      ->check(CLI::IsMember({"pm2ac", "ac2pm"}));
  auto* spectrum = app.add_subcommand("spectrum", "poles, zeros and mirror symmetry");
  add_common(spectrum, true);
  auto* factor = app.add_subcommand("factor", "factor a skew matrix as Sigma J Sigma^T");
  add_common(factor, true);
  auto* example = app.add_subcommand("example", "reproduce the two-mode reference example");
  add_common(example, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*check) return cmd_check(config, out, err);
    if (*synth) return cmd_synthesize(config, out, err);
    if (*convert) return cmd_convert(config, out, err);
    if (*spectrum) return cmd_spectrum(config, out, err);
    if (*factor) return cmd_factor(config, out, err);
    return cmd_example(config, out, err);
  } catch (const NotRealizableError& e) {
    err << "not-PR: " << e.what() << "\n";
    return kExitNotRealizable;
  } catch (const NearPoleError& e) {
    err << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const StructureError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SingularError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  }
}

}  // namespace oqho::cli
