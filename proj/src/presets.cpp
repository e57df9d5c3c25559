#include "respond/presets.hpp"

#include <fstream>
#include <numbers>

#include <json.hpp>

#include "respond/error.hpp"
#include "respond/model_io.hpp"

namespace respond {

namespace {

constexpr double kPi = std::numbers::pi;

VibronicModel single_mode(double ratio, double delta) {
  RVector w0(1), w1(1), d(1);
  w0 << 1.0;
  w1 << ratio;
  d << delta;
  return two_level_model(w0, w1, d, RMatrix::Identity(1, 1));
}

// Only frequency ratios are given for the two-mode figures. Equal ground
// frequencies would make every vacuum pathway independent of the Duschinsky
// angle (the ground Hamiltonian would be rotation invariant), so the ground
// modes are split 3:1 around a unit mean; this also reproduces the 11:9
// commensurability of the excited frequencies in the linear-response scan.
constexpr double kGround[2] = {1.5, 0.5};

VibronicModel two_mode(double ratio1, double ratio2, double delta1, double delta2, double angle) {
  RVector w0(2), w1(2), d(2);
  w0 << kGround[0], kGround[1];
  w1 << ratio1 * kGround[0], ratio2 * kGround[1];
  d << delta1, delta2;
  return two_level_model(w0, w1, d, duschinsky_2d(angle));
}

double mean_excited(double ratio1, double ratio2) { return 0.5 * (ratio1 * kGround[0] + ratio2 * kGround[1]); }

FigurePreset fig1() {
  FigurePreset p{"fig1", "single mode, delta=1: trajectories of alpha and z and |R^(v,1)|(t) for omega1/omega0 in {10,5,2,1}",
                 {}};
  const char* panels[] = {"red", "blue", "green", "orange"};
  const double ratios[] = {10.0, 5.0, 2.0, 1.0};
  for (int i = 0; i < 4; ++i) {
    PresetDataset d{"fig1_ratio" + std::to_string(static_cast<int>(ratios[i])) + ".csv", panels[i],
                    single_mode(ratios[i], 1.0), false, {}, {}, {{"ratio", ratios[i]}, {"delta", 1.0}}};
    d.linear.tmax = 2.0 * kPi;
    d.linear.steps = 2001;
    p.datasets.push_back(std::move(d));
  }
  return p;
}

// Figs. S1 (|alpha|) and 2 (|R|) share the same scans.
FigurePreset third_single(const std::string& name, const std::string& description) {
  FigurePreset p{name, description, {}};
  const char* panels[] = {"a", "b", "c", "d", "e", "f"};
  const double ratios[] = {1.0, 1.125, 5.0 / 3.0, 2.0, 2.5, 5.0};
  for (int i = 0; i < 6; ++i) {
    PresetDataset d{name + "_" + panels[i] + ".csv", panels[i], single_mode(ratios[i], 1.0), true, {}, {},
                    {{"ratio", ratios[i]}, {"delta", 1.0}, {"t2", 1.5}}};
    d.scan.t2 = 1.5;
    d.scan.n1 = 100;
    d.scan.n3 = 100;
    d.scan.t1max = 2.0 * kPi / ratios[i];
    d.scan.t3max = 2.0 * kPi / ratios[i];
    d.scan.periodic = true;
    p.datasets.push_back(std::move(d));
  }
  return p;
}

FigurePreset fig3() {
  FigurePreset p{"fig3",
                 "two modes, delta=(0.5,1.5), omega1/omega0=(0.73,1.8): alpha_1, alpha_2 and |R^(v,1)| for "
                 "phi1/pi in {0,0.2,0.4}",
                 {}};
  const char* panels[] = {"brown", "blue", "orange"};
  const double angles[] = {0.0, 0.2, 0.4};
  const double omega_bar = mean_excited(0.73, 1.8);
  for (int i = 0; i < 3; ++i) {
    PresetDataset d{"fig3_phi" + std::to_string(i) + ".csv", panels[i], two_mode(0.73, 1.8, 0.5, 1.5, angles[i] * kPi),
                    false, {}, {}, {{"phi_over_pi", angles[i]}, {"omega_bar_1", omega_bar}}};
    d.linear.tmax = 20.0 * kPi / omega_bar;
    d.linear.steps = 4001;
    p.datasets.push_back(std::move(d));
  }
  return p;
}

// Figs. 4 (|R|) and 5 (|A|^2) share the same scans.
FigurePreset third_two_mode(const std::string& name, const std::string& description) {
  FigurePreset p{name, description, {}};
  const char* panels[] = {"a", "b", "c", "d", "e", "f"};
  const double omega_bar = mean_excited(0.67, 2.0);
  for (int i = 0; i < 6; ++i) {
    const double angle = 0.1 * i;
    PresetDataset d{name + "_" + panels[i] + ".csv", panels[i], two_mode(0.67, 2.0, 0.5, 1.5, angle * kPi), true, {},
                    {}, {{"phi_over_pi", angle}, {"t2", 1.5 * kPi}, {"omega_bar_1", omega_bar}}};
    d.scan.t2 = 1.5 * kPi;
    d.scan.n1 = 100;
    d.scan.n3 = 100;
    d.scan.t1max = 2.0 * kPi / omega_bar;
    d.scan.t3max = 2.0 * kPi / omega_bar;
    p.datasets.push_back(std::move(d));
  }
  return p;
}

}  // namespace

std::vector<std::string> preset_names() { return {"fig1", "figS1", "fig2", "fig3", "fig4", "fig5"}; }

FigurePreset figure_preset(std::string_view name) {
  if (name == "fig1") return fig1();
  if (name == "figS1") {
    return third_single("figS1", "single mode, delta=1, t2=1.5: |alpha|(t1,t3) for six frequency ratios");
  }
  if (name == "fig2") return third_single("fig2", "single mode, delta=1, t2=1.5: |R^(v,3)|(t1,t3) for six frequency ratios");
  if (name == "fig3") return fig3();
  if (name == "fig4") return third_two_mode("fig4", "two modes, t2=1.5 pi: |R^(v,3)|(t1,t3) for six Duschinsky angles");
  if (name == "fig5") return third_two_mode("fig5", "two modes, t2=1.5 pi: |A|^2(t1,t3) for six Duschinsky angles");
  throw Error(ErrorCode::SchemaError, "unknown figure preset '" + std::string(name) + "'");
}

std::vector<std::filesystem::path> write_figure(const FigurePreset& preset, const std::filesystem::path& dir,
                                                int threads) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  nlohmann::ordered_json sidecar{{"preset", preset.name}, {"description", preset.description}};
  sidecar["datasets"] = nlohmann::ordered_json::array();
  for (const PresetDataset& d : preset.datasets) {
    const std::filesystem::path path = dir / d.file;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::SchemaError, "cannot write " + path.string());
    nlohmann::ordered_json entry{{"file", d.file}, {"panel", d.panel}, {"kind", d.third ? "third" : "linear"}};
    nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
    for (const auto& [key, value] : d.parameters) parameters[key] = value;
    entry["parameters"] = parameters;
    if (d.third) {
      cli::ThirdRequest request = d.scan;
      request.threads = threads;
      run_third(d.model, request, out);
      entry["scan"] = {{"t2", d.scan.t2},           {"lambdas", d.scan.lambdas}, {"grid", {d.scan.n1, d.scan.n3}},
                       {"t1max", d.scan.t1max},     {"t3max", d.scan.t3max},     {"periodic", d.scan.periodic}};
    } else {
      cli::LinearRequest request = d.linear;
      request.threads = threads;
      run_linear(d.model, request, out);
      entry["scan"] = {{"tmax", d.linear.tmax}, {"steps", d.linear.steps}, {"state", d.linear.state}};
    }
    entry["model"] = nlohmann::ordered_json::parse(serialize_model(d.model));
    sidecar["datasets"].push_back(std::move(entry));
    written.push_back(path);
  }
  const std::filesystem::path side = dir / (preset.name + ".json");
  std::ofstream out(side, std::ios::binary);
  if (!out) throw Error(ErrorCode::SchemaError, "cannot write " + side.string());
  out << sidecar.dump(2) << '\n';
  written.push_back(side);
  return written;
}

}  // namespace respond
