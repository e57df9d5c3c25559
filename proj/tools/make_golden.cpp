// Regenerates tests/golden: truncated-Fock reference values of the figure
// presets on a subsample of each dataset's grid.
//
//   make_golden <out_dir> [preset ...]     (default: fig1 fig2 fig4)

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "respond/commands.hpp"
#include "respond/csv.hpp"
#include "respond/fock_oracle.hpp"
#include "respond/presets.hpp"

namespace {

using namespace respond;

struct Sample {
  std::size_t row;             // data row in the preset CSV
  std::vector<double> columns; // t, or t1 and t3
  std::vector<int> lambdas;
  std::vector<double> times;
};

std::vector<Sample> linear_samples(const PresetDataset& d, std::size_t stride) {
  const std::vector<double> t = cli::time_axis(d.linear.tmax, d.linear.steps, false);
  std::vector<Sample> out;
  for (std::size_t i = 0; i < t.size(); i += stride) out.push_back({i, {t[i]}, {d.linear.state}, {t[i]}});
  return out;
}

std::vector<Sample> third_samples(const PresetDataset& d, std::vector<int> picks) {
  const std::vector<double> t1 = cli::time_axis(d.scan.t1max, d.scan.n1, d.scan.periodic);
  const std::vector<double> t3 = cli::time_axis(d.scan.t3max, d.scan.n3, d.scan.periodic);
  std::vector<Sample> out;
  for (int i : picks) {
    for (int k : picks) {
      const auto a = static_cast<std::size_t>(i);
      const auto b = static_cast<std::size_t>(k);
      out.push_back({a * t3.size() + b, {t1[a], t3[b]}, d.scan.lambdas, {t1[a], d.scan.t2, t3[b]}});
    }
  }
  return out;
}

void write_golden(const PresetDataset& d, std::vector<Sample> samples, const std::vector<int>& ladder,
                  double target, const std::filesystem::path& path) {
  std::vector<Complex> previous(samples.size());
  std::vector<Complex> current(samples.size());
  std::vector<double> estimate(samples.size(), INFINITY);
  int used = 0;
  for (std::size_t level = 0; level < ladder.size(); ++level) {
    const oracle::OracleEngine engine(d.model, ladder[level]);
    for (std::size_t i = 0; i < samples.size(); ++i) current[i] = engine.response(samples[i].lambdas, samples[i].times);
    used = ladder[level];
    double worst = 0.0;
    if (level > 0) {
      for (std::size_t i = 0; i < samples.size(); ++i) {
        estimate[i] = std::abs(current[i] - previous[i]);
        worst = std::max(worst, estimate[i]);
      }
      std::fprintf(stderr, "  %s n_max=%d max step %.2e\n", d.file.c_str(), used, worst);
      if (worst < target) break;
    }
    previous = current;
  }

  std::ofstream out(path, std::ios::binary);
  std::vector<std::string> header{"row"};
  if (samples[0].columns.size() == 1) {
    header.push_back("t");
  } else {
    header.insert(header.end(), {"t1", "t3"});
  }
  header.insert(header.end(), {"Re_R", "Im_R", "n_max", "err_est"});
  CsvWriter csv(out, header);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    std::vector<double> row{static_cast<double>(samples[i].row)};
    row.insert(row.end(), samples[i].columns.begin(), samples[i].columns.end());
    row.insert(row.end(), {current[i].real(), current[i].imag(), static_cast<double>(used), estimate[i]});
    csv.row(row);
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: make_golden <out_dir> [preset ...]\n");
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  std::vector<std::string> names(argv + 2, argv + argc);
  if (names.empty()) names = {"fig1", "fig2", "fig4"};

  const std::vector<int> single{64, 128, 256, 512, 1024, 2048, 4096};
  const std::vector<int> two{32, 48, 64};
  for (const std::string& name : names) {
    const FigurePreset preset = figure_preset(name);
    for (const PresetDataset& d : preset.datasets) {
      std::fprintf(stderr, "%s\n", d.file.c_str());
      const std::filesystem::path path = dir / d.file;
      if (!d.third) {
        write_golden(d, linear_samples(d, 40), single, 1e-9, path);
      } else if (d.model.modes() == 1) {
        write_golden(d, third_samples(d, {0, 10, 20, 30, 40, 50, 60, 70, 80, 90}), single, 1e-9, path);
      } else {
        write_golden(d, third_samples(d, {0, 25, 50, 75, 99}), two, 1e-9, path);
      }
    }
  }
  return 0;
}
