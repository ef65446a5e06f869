// besse_lab: command-line front end of the besse library.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "besse/besse.hpp"

namespace {

using namespace besse;

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitNotBesse = 2;
constexpr int kExitNoClosure = 3;
constexpr int kExitCheckFailed = 4;

unsigned thread_budget() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BESSE_LAB_THREADS")) {
    try {
      long v = std::stol(env);
      if (v >= 1)
        n = std::min<unsigned>(n, static_cast<unsigned>(v));
    } catch (const std::exception&) {
      std::cerr << "ignoring malformed BESSE_LAB_THREADS='" << env << "'\n";
    }
  }
  return n;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw std::runtime_error("cannot write " + path.string());
  os << text;
}

int run_classify(const std::string& text, bool as_group) {
  try {
    Classification c;
    if (as_group) {
      c = classify_from_group(group_from_label(SchoenfliesLabel::parse(text)));
    } else {
      c = classify(OrbifoldSignature::parse(text));
    }
    std::cout << classification_json(text, c).dump(2) << "\n";
    return kExitOk;
  } catch (const Error& e) {
    if (e.code() == Errc::NotBesse) {
      std::cerr << text << ": orbifold Euler characteristic not positive\n";
      return kExitNotBesse;
    }
    std::cerr << e.what() << "\n";
    return kExitParse;
  }
}

struct SimulateArgs {
  int p = 1;
  int q = 1;
  std::vector<double> h_extra;
  double scale = 1.0;
  int samples = 20;
  std::uint64_t seed = 1;
  double tol = kFlowTolerance;
  std::string out;
};

int run_simulate(const SimulateArgs& a) {
  SpindleMetric m = make_metric(a.p, a.q, a.h_extra, a.scale);
  ReportOptions opt;
  opt.n_samples = a.samples;
  opt.seed = a.seed;
  opt.tol = a.tol;
  opt.threads = thread_budget();
  PeriodReport rep = period_ratio_report(m, opt);

  for (const auto& s : rep.samples)
    if (!s.error.empty())
      std::cerr << "sample at theta0=" << s.initial.theta << ": " << s.error << "\n";

  if (!a.out.empty()) {
    std::filesystem::path dir(a.out);
    std::filesystem::create_directories(dir);
    write_file(dir / "report.json", to_json(rep).dump(2) + "\n");
    for (std::size_t i = 0; i < rep.samples.size(); ++i) {
      const auto& s = rep.samples[i];
      double len = s.period ? *s.period : rep.t_reg;
      if (!(len > 0))
        continue;
      Trajectory tr = integrate(m, s.initial, len, a.tol);
      std::string name = s.equator ? "trajectory_equator.csv"
                                   : "trajectory_" + std::to_string(i) + ".csv";
      write_file(dir / name, trajectory_csv(m, tr));
    }
  }

  Failures f;
  check_period_report(f, rep, "(" + std::to_string(a.p) + "," + std::to_string(a.q) + ")");
  std::cout.precision(12);
  std::cout << "T_reg = " << rep.t_reg << " (" << rep.t_reg / kPi << " pi)\n";
  std::cout << "equator ratio = " << rep.equator().ratio << "\n";
  std::cout << "ratios =";
  for (long long r : rep.ratios())
    std::cout << " " << r;
  std::cout << "\nspectrum = " << classify(OrbifoldSignature::sphere({a.p, a.q})).spectrum.str()
            << "\n";
  std::cout << "area = " << rep.area << "\n";
  std::cout << "max energy drift = " << rep.max_energy_drift()
            << ", max Clairaut drift = " << rep.max_clairaut_drift() << "\n";
  for (const auto& msg : f)
    std::cout << "  " << msg << "\n";
  std::cout << (f.empty() ? "PASS" : "FAIL") << "\n";
  if (!rep.all_closed())
    return kExitNoClosure;
  return f.empty() ? kExitOk : kExitCheckFailed;
}

int run_verify(const std::string& suite) {
  Failures f = run_verify_suite(suite, thread_budget());
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["suite"] = suite;
  j["passed"] = f.empty();
  j["failures"] = f;
  std::cout << j.dump(2) << "\n";
  return f.empty() ? kExitOk : kExitCheckFailed;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orbifolds of geodesics and period spectra of Besse 2-orbifolds"};
  app.require_subcommand(1);

  std::string sig_text;
  bool as_group = false;
  auto* classify_cmd = app.add_subcommand("classify", "O_g, O_g/i and the period spectrum");
  classify_cmd->add_option("signature", sig_text, "e.g. S2(2,3,5), D2(3;2), RP2(4)")->required();
  classify_cmd->add_flag("--group", as_group, "read the argument as a Schoenflies label");

  int max_n = 12, max_pq = 0;
  bool csv = false;
  auto* table_cmd = app.add_subcommand("table", "regenerate the classification table");
  table_cmd->add_option("max_n", max_n, "largest family parameter")->check(CLI::PositiveNumber);
  table_cmd->add_option("--max-n", max_n, "largest family parameter")->check(CLI::PositiveNumber);
  table_cmd->add_option("--max-pq", max_pq, "largest spindle order (default 2 max_n + 1)")
      ->check(CLI::PositiveNumber);
  table_cmd->add_flag("--csv", csv, "CSV instead of the text layout");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "integrate geodesics of a Zoll spindle metric");
  sim_cmd->add_option("--p", sim.p, "cone order p")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--q", sim.q, "cone order q")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--h-extra", sim.h_extra,
                      "coefficients of u^(2k+1)(1-u^2) added to the profile");
  sim_cmd->add_option("--scale", sim.scale, "overall length scale")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--samples", sim.samples, "generic initial conditions")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim.seed, "sampling seed");
  sim_cmd->add_option("--tol", sim.tol, "integrator tolerance")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--out", sim.out, "directory for report.json and trajectory CSVs");

  std::string suite;
  auto* verify_cmd = app.add_subcommand("verify", "run an invariant suite");
  verify_cmd->add_option("suite", suite)
      ->required()
      ->check(CLI::IsMember(verify_suite_names()));

  long long lens_p = 1, lens_q = 1;
  std::string lens_text;
  auto* lens_cmd = app.add_subcommand("lens", "unit tangent bundle of a spindle");
  lens_cmd->add_option("--p", lens_p, "spindle cone order p")->check(CLI::PositiveNumber);
  lens_cmd->add_option("--q", lens_q, "spindle cone order q")->check(CLI::PositiveNumber);
  lens_cmd->add_option("--normalize", lens_text, "normalize a lens space such as L(7,3)");

  long long seif_r = 2, seif_k = 1;
  auto* seif_cmd = app.add_subcommand("seifert", "circle fiberings of L(r,1) over S2(k,k)");
  seif_cmd->add_option("--r", seif_r, "lens order")->required();
  seif_cmd->add_option("--k", seif_k, "cone order of the base")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*classify_cmd)
      return run_classify(sig_text, as_group);

    if (*table_cmd) {
      auto rows = table_entries(max_n, max_pq > 0 ? max_pq : 2 * max_n + 1);
      std::cout << render_table(rows, csv);
      return kExitOk;
    }

    if (*sim_cmd)
      return run_simulate(sim);

    if (*verify_cmd)
      return run_verify(suite);

    if (*lens_cmd) {
      nlohmann::ordered_json j;
      j["schema"] = 1;
      if (!lens_text.empty()) {
        LensSpace l = LensSpace::parse(lens_text);
        j["input"] = lens_text;
        j["normal_form"] = lens_normalize(l.p, l.q).str();
      } else {
        HomologyClass c = spindle_meridian_image(lens_p, lens_q);
        j["p"] = lens_p;
        j["q"] = lens_q;
        j["meridian_image"] = {{"s", c.s}, {"r", c.r}};
        j["unit_tangent_bundle"] = unit_tangent_bundle_spindle(lens_p, lens_q).str();
      }
      std::cout << j.dump(2) << "\n";
      return kExitOk;
    }

    if (*seif_cmd) {
      FiberingCase c = solve_gluing_constraints(seif_r, seif_k);
      nlohmann::ordered_json j;
      j["schema"] = 1;
      j["r"] = seif_r;
      j["k"] = seif_k;
      j["case"] = std::string(fibering_name(c.tag));
      j["epsilon"] = c.epsilon;
      j["b"] = c.b;
      j["invariants"] = seifert_invariants_of_case(c).str();
      std::cout << j.dump(2) << "\n";
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == Errc::ParseError ? kExitParse : kExitNotBesse;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}
