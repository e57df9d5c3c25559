#include <fstream>
#include <iostream>
#include <numbers>
#include <string>

#include <CLI11.hpp>

#include "respond/commands.hpp"
#include "respond/error.hpp"
#include "respond/model_io.hpp"
#include "respond/presets.hpp"

namespace {

using namespace respond;

// Runs `write` against the named file, or standard output for "-".
template <class Write>
void with_output(const std::string& path, Write write) {
  if (path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::SchemaError, "cannot open " + path + " for writing");
  write(out);
  if (!out) throw Error(ErrorCode::SchemaError, "failed writing " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Response functions of harmonic vibronic models via squeezed coherent state propagation"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: RESPOND_THREADS or all cores)");

  std::string model_path;
  std::string out_path = "-";

  cli::LinearRequest linear;
  auto* linear_cmd = app.add_subcommand("linear", "first-order response R(t) with wave-packet diagnostics");
  linear_cmd->add_option("--model,-m", model_path, "model JSON file")->required();
  linear_cmd->add_option("--tmax", linear.tmax, "last time point")->capture_default_str();
  linear_cmd->add_option("--steps", linear.steps, "number of time points")->capture_default_str();
  linear_cmd->add_option("--state", linear.state, "excited electronic state")->capture_default_str();
  linear_cmd->add_flag("--total", linear.total, "include the electronic factor");
  linear_cmd->add_option("--out,-o", out_path, "CSV output ('-' for stdout)")->capture_default_str();

  cli::ThirdRequest third;
  std::string pathway = "1,0,1";
  std::string sides = "LLL";
  std::string grid = "100x100";
  auto* third_cmd = app.add_subcommand("third", "third-order response R(t1, t2, t3) on a (t1, t3) grid");
  third_cmd->add_option("--model,-m", model_path, "model JSON file")->required();
  third_cmd->add_option("--t2", third.t2, "waiting time t2")->required();
  third_cmd->add_option("--pathway", pathway, "electronic states lambda_1,lambda_2,lambda_3")->capture_default_str();
  third_cmd->add_option("--sides", sides, "interaction sides: LLL or LRL")->capture_default_str();
  third_cmd->add_flag("--raw-times", third.raw_times, "use (t1, t2, t3) as signed interval lengths");
  third_cmd->add_option("--grid", grid, "points along t1 and t3, e.g. 200x200")->capture_default_str();
  third_cmd->add_option("--t1max", third.t1max, "t1 range (default: one period of lambda_1)");
  third_cmd->add_option("--t3max", third.t3max, "t3 range (default: one period of lambda_3)");
  third_cmd->add_flag("--periodic", third.periodic, "exclude the upper end of both axes");
  third_cmd->add_flag("--total", third.total, "include the electronic factor");
  third_cmd->add_option("--out,-o", out_path, "CSV output ('-' for stdout)")->capture_default_str();

  cli::OracleCheckRequest check;
  auto* check_cmd = app.add_subcommand("oracle-check", "randomized comparison with the truncated-Fock oracle");
  check_cmd->add_option("--model,-m", model_path, "model JSON file (one or two modes)")->required();
  check_cmd->add_option("--trials", check.trials, "number of random pathways")->capture_default_str();
  check_cmd->add_option("--seed", check.seed, "random seed")->capture_default_str();
  check_cmd->add_option("--tol", check.tol, "largest accepted |R_method - R_oracle|")->capture_default_str();
  check_cmd->add_option("--n-max", check.fock.n_max, "initial Fock truncation per mode (default: by mode count)");
  check_cmd->add_option("--max-n-max", check.fock.max_n_max, "truncation cap per mode");

  std::string preset;
  std::string out_dir;
  auto* figure_cmd = app.add_subcommand("figure", "write the CSV datasets of a figure preset");
  figure_cmd->add_option("name", preset, "fig1, figS1, fig2, fig3, fig4 or fig5")->required();
  figure_cmd->add_option("--out,-o", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kUsage;
  }

  try {
    if (linear_cmd->parsed()) {
      linear.threads = threads;
      const VibronicModel model = load_model(model_path);
      with_output(out_path, [&](std::ostream& out) { cli::run_linear(model, linear, out); });
    } else if (third_cmd->parsed()) {
      third.threads = threads;
      third.lambdas = cli::parse_pathway(pathway);
      third.sides = parse_sides(sides);
      std::tie(third.n1, third.n3) = cli::parse_grid(grid);
      const VibronicModel model = load_model(model_path);
      with_output(out_path, [&](std::ostream& out) { cli::run_third(model, third, out); });
    } else if (check_cmd->parsed()) {
      const VibronicModel model = load_model(model_path);
      const cli::OracleCheckReport report = cli::run_oracle_check(model, check);
      std::cout << report.json;
      if (!report.pass) {
        std::cerr << "tolerance breach: max |dR| = " << report.max_abs_diff << " > " << check.tol << "\n"
                  << "worst trial: " << report.worst << "\n";
        return cli::kToleranceBreach;
      }
    } else if (figure_cmd->parsed()) {
      for (const auto& path : write_figure(figure_preset(preset), out_dir, threads)) std::cerr << path.string() << "\n";
    }
  } catch (const Error& e) {
    std::cerr << "respond: " << e.what() << "\n";
    return cli::exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "respond: " << e.what() << "\n";
    return cli::kNumerical;
  }
  return cli::kOk;
}
